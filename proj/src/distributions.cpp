#include "hsgen/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "hsgen/error.hpp"

namespace hsgen {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double normal_upper(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

// P{lo < x <= hi} for each continuous family, written to keep precision in
// whichever tail the interval sits.
double interval_mass(const DegreeModel& m, double lo, double hi) {
  switch (m.kind) {
    case DegreeKind::kUniform: {
      const double l = std::clamp(lo, m.a, m.b);
      const double h = std::clamp(hi, m.a, m.b);
      return (h - l) / (m.b - m.a);
    }
    case DegreeKind::kNormal: {
      const double zl = (lo - m.a) / m.b;
      const double zh = (hi - m.a) / m.b;
      if (zl >= 0.0) return normal_upper(zl) - normal_upper(zh);
      return normal_upper(-zh) - normal_upper(-zl);
    }
    case DegreeKind::kExponential: {
      if (hi <= 0.0) return 0.0;
      const double l = std::max(lo, 0.0);
      return std::exp(-m.a * l) * -std::expm1(-m.a * (hi - l));
    }
    case DegreeKind::kGamma: {
      if (hi <= 0.0) return 0.0;
      const double l = std::max(lo, 0.0);
      const double p_lo = l > 0.0 ? boost::math::gamma_p(m.a, m.b * l) : 0.0;
      if (p_lo > 0.5) {
        return boost::math::gamma_q(m.a, m.b * l) - boost::math::gamma_q(m.a, m.b * hi);
      }
      return boost::math::gamma_p(m.a, m.b * hi) - p_lo;
    }
    case DegreeKind::kPareto: {
      if (hi <= m.b) return 0.0;
      const double l = std::max(lo, m.b);
      // (x_min / l)^k - (x_min / hi)^k
      return std::pow(m.b / l, m.a) - std::pow(m.b / hi, m.a);
    }
    case DegreeKind::kPoisson:
      break;
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(DegreeKind kind) {
  switch (kind) {
    case DegreeKind::kPoisson: return "poisson";
    case DegreeKind::kUniform: return "uniform";
    case DegreeKind::kNormal: return "normal";
    case DegreeKind::kExponential: return "exponential";
    case DegreeKind::kGamma: return "gamma";
    case DegreeKind::kPareto: return "pareto";
  }
  return "unknown";
}

DegreeKind parse_degree_kind(std::string_view name) {
  for (DegreeKind k : {DegreeKind::kPoisson, DegreeKind::kUniform, DegreeKind::kNormal,
                       DegreeKind::kExponential, DegreeKind::kGamma, DegreeKind::kPareto}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidParameter("unknown degree model '" + std::string(name) + "'");
}

DegreeModel DegreeModel::poisson(double lambda) { return {DegreeKind::kPoisson, lambda, 0.0}; }
DegreeModel DegreeModel::uniform(double lo, double hi) { return {DegreeKind::kUniform, lo, hi}; }
DegreeModel DegreeModel::normal(double mu, double sigma) { return {DegreeKind::kNormal, mu, sigma}; }
DegreeModel DegreeModel::exponential(double rate) { return {DegreeKind::kExponential, rate, 0.0}; }
DegreeModel DegreeModel::gamma(double shape, double rate) { return {DegreeKind::kGamma, shape, rate}; }
DegreeModel DegreeModel::pareto(double tail_index, double x_min) {
  return {DegreeKind::kPareto, tail_index, x_min};
}

DegreeModel DegreeModel::defaults(DegreeKind kind, double avg_degree, double edge_probability,
                                  std::size_t d_max) {
  switch (kind) {
    case DegreeKind::kPoisson: return poisson(avg_degree);
    case DegreeKind::kUniform: return uniform(0.0, static_cast<double>(std::max<std::size_t>(d_max, 1)));
    case DegreeKind::kNormal: return normal(avg_degree, 1.0);
    case DegreeKind::kExponential: return exponential(avg_degree);
    case DegreeKind::kGamma: return gamma(avg_degree, edge_probability);
    case DegreeKind::kPareto: return pareto(avg_degree, 1.0);
  }
  return poisson(avg_degree);
}

void DegreeModel::validate() const {
  auto positive = [&](double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw InvalidParameter(std::string(to_string(kind)) + ": " + what + " must be positive");
    }
  };
  switch (kind) {
    case DegreeKind::kPoisson: positive(a, "lambda"); break;
    case DegreeKind::kUniform:
      if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidParameter("uniform: requires a < b");
      }
      break;
    case DegreeKind::kNormal: positive(b, "sigma"); break;
    case DegreeKind::kExponential: positive(a, "rate"); break;
    case DegreeKind::kGamma:
      positive(a, "shape");
      positive(b, "rate");
      break;
    case DegreeKind::kPareto:
      positive(a, "tail index");
      positive(b, "x_min");
      break;
  }
}

double DegreeModel::pmf(std::size_t d) const {
  if (kind == DegreeKind::kPoisson) return poisson_pmf(d, a);
  const double hi = static_cast<double>(d);
  return std::max(0.0, interval_mass(*this, hi - 1.0, hi));
}

double DegreeModel::log_pmf(std::size_t d) const {
  if (kind == DegreeKind::kPoisson) return poisson_log_pmf(d, a);
  const double p = pmf(d);
  return p > 0.0 ? std::log(p) : kNegInf;
}

std::optional<std::size_t> DegreeModel::truncation(std::size_t search_limit) const {
  const double at_zero = log_pmf(0);
  if (at_zero == kNegInf) return std::nullopt;
  for (std::size_t k = 1; k <= search_limit; ++k) {
    if (log_pmf(k) < at_zero) return k;
  }
  return std::nullopt;
}

double poisson_log_pmf(std::size_t d, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidParameter("poisson: lambda must be positive, got " + std::to_string(lambda));
  }
  const double dd = static_cast<double>(d);
  return -lambda + dd * std::log(lambda) - std::lgamma(dd + 1.0);
}

double poisson_pmf(std::size_t d, double lambda) { return std::exp(poisson_log_pmf(d, lambda)); }

std::size_t truncation_k(double lambda) {
  const double at_zero = poisson_log_pmf(0, lambda);
  // The pmf decays to zero, so the loop terminates: for k > e^2 lambda the
  // mass is below e^-lambda.
  for (std::size_t k = 1;; ++k) {
    if (poisson_log_pmf(k, lambda) < at_zero) return k;
  }
}

DegreeSampler::DegreeSampler(const DegreeModel& model, std::size_t support_cap) {
  model.validate();
  cdf_.resize(support_cap + 1);
  double total = 0.0;
  for (std::size_t d = 0; d <= support_cap; ++d) {
    total += model.pmf(d);
    cdf_[d] = total;
  }
  if (!(total > 0.0)) {
    throw DegenerateSupport(std::string(to_string(model.kind)) + " model has no mass on [0, " +
                            std::to_string(support_cap) + "]");
  }
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

std::size_t DegreeSampler::operator()(Rng& rng) const {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(), cdf_.size() - 1));
}

double DegreeSampler::probability(std::size_t d) const {
  if (d >= cdf_.size()) return 0.0;
  return d == 0 ? cdf_[0] : cdf_[d] - cdf_[d - 1];
}

double DegreeSampler::mean() const {
  double m = 0.0;
  for (std::size_t d = 1; d < cdf_.size(); ++d) m += static_cast<double>(d) * probability(d);
  return m;
}

std::size_t sample_degree(const DegreeModel& model, Rng& rng, std::size_t support_cap) {
  if (support_cap < 1) throw InvalidParameter("support_cap must be >= 1");
  return DegreeSampler(model, support_cap)(rng);
}

std::size_t connectivity_edge_count(std::size_t n, double epsilon) {
  const double nn = static_cast<double>(n);
  const double value = 0.5 * nn * std::log(nn) + epsilon * nn;
  return value <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(value));
}

EdgeProbabilityThresholds edge_probability_thresholds(std::size_t n, double avg_degree) {
  const double denom = static_cast<double>(n) - 1.0;
  const double ln_n = std::log(static_cast<double>(n));
  return {avg_degree / denom, ln_n / denom, 2.0 * ln_n / denom};
}

double expected_node_probability(std::size_t n, double avg_degree) {
  if (!(avg_degree > 0.0)) throw InvalidParameter("average degree must be positive");
  if (n == 0) throw InvalidParameter("n must be >= 1");
  const double d = avg_degree;
  const double log_value = -d + std::log(d + 1.0) + d * std::log(d) - std::lgamma(d + 1.0);
  return std::exp(log_value) / static_cast<double>(n);
}

}  // namespace hsgen
