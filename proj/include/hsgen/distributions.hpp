#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsgen/rng.hpp"

namespace hsgen {

enum class DegreeKind { kPoisson, kUniform, kNormal, kExponential, kGamma, kPareto };

std::string_view to_string(DegreeKind kind);
// Accepts the lowercase names printed by to_string. Throws InvalidParameter.
DegreeKind parse_degree_kind(std::string_view name);

// A degree distribution over the non-negative integers. Continuous models are
// discretised by CDF differences, P{x = d} = P{d - 1 < x <= d}.
//
// Parameter meaning per kind:
//   Poisson      a = lambda
//   Uniform      a = lower bound, b = upper bound (a < b)
//   Normal       a = mu, b = sigma
//   Exponential  a = rate
//   Gamma        a = shape alpha, b = rate beta
//   Pareto       a = tail index k, b = x_min
struct DegreeModel {
  DegreeKind kind = DegreeKind::kPoisson;
  double a = 1.0;
  double b = 0.0;

  static DegreeModel poisson(double lambda);
  static DegreeModel uniform(double lo, double hi);
  static DegreeModel normal(double mu, double sigma);
  static DegreeModel exponential(double rate);
  static DegreeModel gamma(double shape, double rate);
  static DegreeModel pareto(double tail_index, double x_min);

  // Default parameterisation for a graph with average degree `avg_degree`,
  // edge probability `edge_probability` and maximum degree `d_max`:
  // Poisson(D), Uniform(0, d_max), Normal(D, 1), Exponential(D),
  // Gamma(D, P_E), Pareto(D, 1).
  static DegreeModel defaults(DegreeKind kind, double avg_degree, double edge_probability,
                              std::size_t d_max);

  // Throws InvalidParameter unless every scale/rate is positive and a < b
  // for Uniform.
  void validate() const;

  // Probability mass at integer degree d (CDF difference for continuous
  // kinds). Not renormalised.
  double pmf(std::size_t d) const;
  // log of pmf(d); -inf where the mass is zero.
  double log_pmf(std::size_t d) const;

  // Smallest k >= 1 with pmf(k) < pmf(0), searched up to `search_limit`.
  // nullopt when no such k exists (e.g. zero mass at 0).
  std::optional<std::size_t> truncation(std::size_t search_limit = 100000) const;

  friend bool operator==(const DegreeModel&, const DegreeModel&) = default;
};

// e^-lambda lambda^d / d!, evaluated in log space. Throws InvalidParameter
// for lambda <= 0.
double poisson_pmf(std::size_t d, double lambda);
double poisson_log_pmf(std::size_t d, double lambda);

// Smallest integer k >= 1 with poisson_pmf(k, lambda) < poisson_pmf(0, lambda).
std::size_t truncation_k(double lambda);

// Sampler over {0..support_cap} with probabilities proportional to the
// model's pmf; equivalent to rejecting draws above the cap.
class DegreeSampler {
 public:
  // Throws DegenerateSupport if the capped support carries no mass.
  DegreeSampler(const DegreeModel& model, std::size_t support_cap);

  std::size_t operator()(Rng& rng) const;

  std::size_t support_cap() const noexcept { return cdf_.size() - 1; }
  // Renormalised probability of d on the capped support.
  double probability(std::size_t d) const;
  double mean() const;

 private:
  std::vector<double> cdf_;
};

// One draw; for repeated sampling construct a DegreeSampler once.
// Requires support_cap >= 1.
std::size_t sample_degree(const DegreeModel& model, Rng& rng, std::size_t support_cap);

// [0.5 n ln n + epsilon n], the edge count at which G(n, M) becomes connected.
std::size_t connectivity_edge_count(std::size_t n, double epsilon);

struct EdgeProbabilityThresholds {
  double p2;  // avg_degree / (n - 1)
  double p3;  // ln n / (n - 1)
  double p4;  // 2 ln n / (n - 1)
};

EdgeProbabilityThresholds edge_probability_thresholds(std::size_t n, double avg_degree);

// Expected node selection probability
//   e^-D (D + 1) D^D / (n Gamma(D + 1)),
// evaluated with lgamma so non-integer D is allowed.
double expected_node_probability(std::size_t n, double avg_degree);

}  // namespace hsgen
