#include "hsgen/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

#include "json.hpp"

#include "hsgen/error.hpp"
#include "hsgen/orbits.hpp"

namespace hsgen {
namespace {

double descriptor_bin_width(DescriptorKind kind) {
  return kind == DescriptorKind::kClustering ? 1.0 / static_cast<double>(kClusteringBins) : 1.0;
}

void check_corpora(std::span<const GraphDescriptor> a, std::span<const GraphDescriptor> b,
                   double sigma) {
  if (a.empty() || b.empty()) throw InvalidInput("mmd: both corpora must be non-empty");
  if (!(sigma > 0.0)) throw InvalidInput("mmd: sigma must be positive");
  const DescriptorKind kind = a.front().kind;
  auto same = [kind](const GraphDescriptor& d) { return d.kind == kind; };
  if (!std::all_of(a.begin(), a.end(), same) || !std::all_of(b.begin(), b.end(), same)) {
    throw InvalidInput("mmd: descriptors of different kinds");
  }
}

// Mean of the kernel over x × y; the matrix is row-major so the reduction
// order is fixed.
double mean_kernel(std::span<const GraphDescriptor> x, std::span<const GraphDescriptor> y,
                   KernelKind kernel, double sigma, bool parallel) {
  const std::size_t rows = x.size();
  const std::size_t cols = y.size();
  std::vector<double> values(rows * cols);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rows); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      values[i * cols + j] = kernel_value(x[i], y[j], kernel, sigma);
    }
  }
  return pairwise_sum(values) / static_cast<double>(values.size());
}

double mmd_impl(std::span<const GraphDescriptor> a, std::span<const GraphDescriptor> b,
                KernelKind kernel, double sigma, bool parallel) {
  check_corpora(a, b, sigma);
  const double kaa = mean_kernel(a, a, kernel, sigma, parallel);
  const double kbb = mean_kernel(b, b, kernel, sigma, parallel);
  const double kab = mean_kernel(a, b, kernel, sigma, parallel);
  return std::sqrt(std::max(0.0, kaa + kbb - 2.0 * kab));
}

// Shortest text that parses back to the same double.
std::string shortest(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view to_string(DescriptorKind kind) {
  switch (kind) {
    case DescriptorKind::kDegree: return "degree";
    case DescriptorKind::kClustering: return "clustering";
    case DescriptorKind::kOrbit: return "orbit";
  }
  return "unknown";
}

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::kGaussianEmd: return "gaussian_emd";
    case KernelKind::kGaussianTv: return "gaussian_tv";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "gaussian_emd") return KernelKind::kGaussianEmd;
  if (name == "gaussian_tv") return KernelKind::kGaussianTv;
  throw InvalidConfig("unknown kernel '" + std::string(name) + "'");
}

GraphDescriptor describe(const Graph& g, DescriptorKind kind) {
  GraphDescriptor d{kind, {}};
  const std::size_t n = g.num_nodes();
  if (n == 0) throw InvalidInput("describe: empty graph");
  const double inv_n = 1.0 / static_cast<double>(n);
  switch (kind) {
    case DescriptorKind::kDegree: {
      d.values.assign(g.max_degree() + 1, 0.0);
      for (std::size_t v = 0; v < n; ++v) d.values[g.degree(static_cast<Node>(v))] += inv_n;
      break;
    }
    case DescriptorKind::kClustering: {
      d.values.assign(kClusteringBins, 0.0);
      for (double c : clustering_coefficients(g)) {
        const auto bin = static_cast<std::size_t>(c * static_cast<double>(kClusteringBins));
        d.values[std::min(bin, kClusteringBins - 1)] += inv_n;
      }
      break;
    }
    case DescriptorKind::kOrbit: {
      d.values.assign(kNumOrbits, 0.0);
      for (const OrbitVector& row : orbit_counts_serial(g)) {
        for (int k = 0; k < kNumOrbits; ++k) d.values[k] += static_cast<double>(row[k]);
      }
      for (double& x : d.values) x *= inv_n;
      break;
    }
  }
  return d;
}

std::vector<GraphDescriptor> describe_all(std::span<const Graph> graphs, DescriptorKind kind) {
  std::vector<GraphDescriptor> out(graphs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(graphs.size()); ++i) {
    out[i] = describe(graphs[i], kind);
  }
  return out;
}

double emd_1d(std::span<const double> a, std::span<const double> b, double bin_width) {
  const std::size_t len = std::max(a.size(), b.size());
  double cdf_a = 0.0;
  double cdf_b = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < len; ++i) {
    cdf_a += i < a.size() ? a[i] : 0.0;
    cdf_b += i < b.size() ? b[i] : 0.0;
    total += std::abs(cdf_a - cdf_b);
  }
  return total * bin_width;
}

double tv_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t len = std::max(a.size(), b.size());
  double total = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    total += std::abs((i < a.size() ? a[i] : 0.0) - (i < b.size() ? b[i] : 0.0));
  }
  return 0.5 * total;
}

double kernel_value(const GraphDescriptor& x, const GraphDescriptor& y, KernelKind kernel,
                    double sigma) {
  const double d = kernel == KernelKind::kGaussianEmd
                       ? emd_1d(x.values, y.values, descriptor_bin_width(x.kind))
                       : tv_distance(x.values, y.values);
  return std::exp(-d * d / (2.0 * sigma * sigma));
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double mmd(std::span<const GraphDescriptor> a, std::span<const GraphDescriptor> b,
           KernelKind kernel, double sigma) {
  return mmd_impl(a, b, kernel, sigma, true);
}

double mmd_serial(std::span<const GraphDescriptor> a, std::span<const GraphDescriptor> b,
                  KernelKind kernel, double sigma) {
  return mmd_impl(a, b, kernel, sigma, false);
}

MmdReport compare_corpora(std::span<const Graph> reference, std::span<const Graph> generated,
                          const MmdConfig& config) {
  if (reference.empty() || generated.empty()) {
    throw InvalidInput("compare_corpora: both corpora must be non-empty");
  }
  MmdReport r;
  r.reference_size = reference.size();
  r.generated_size = generated.size();
  r.config = config;
  auto score = [&](DescriptorKind kind, const MetricSetting& s) {
    const auto a = describe_all(reference, kind);
    const auto b = describe_all(generated, kind);
    return mmd(a, b, s.kernel, s.sigma);
  };
  r.deg = score(DescriptorKind::kDegree, config.degree);
  r.clus = score(DescriptorKind::kClustering, config.clustering);
  if (config.compute_orbit) r.orbit = score(DescriptorKind::kOrbit, config.orbit);
  return r;
}

std::string report_to_json(const MmdReport& report) {
  using nlohmann::json;
  const auto& c = report.config;
  json j;
  j["deg"] = report.deg;
  j["clus"] = report.clus;
  j["orbit"] = report.orbit;
  j["kernel"] = {{"deg", to_string(c.degree.kernel)},
                 {"clus", to_string(c.clustering.kernel)},
                 {"orbit", to_string(c.orbit.kernel)}};
  j["sigma"] = {{"deg", c.degree.sigma}, {"clus", c.clustering.sigma}, {"orbit", c.orbit.sigma}};
  j["sizes"] = {{"reference", report.reference_size}, {"generated", report.generated_size}};
  j["estimator"] = "biased";
  j["orbit_computed"] = c.compute_orbit;
  return j.dump(2);
}

std::string report_csv_header() {
  return "deg,clus,orbit,kernel_deg,kernel_clus,kernel_orbit,sigma_deg,sigma_clus,sigma_orbit,"
         "reference_size,generated_size";
}

std::string report_to_csv_row(const MmdReport& report) {
  const auto& c = report.config;
  std::ostringstream os;
  os << shortest(report.deg) << ',' << shortest(report.clus) << ',' << shortest(report.orbit) << ','
     << to_string(c.degree.kernel) << ',' << to_string(c.clustering.kernel) << ','
     << to_string(c.orbit.kernel) << ',' << shortest(c.degree.sigma) << ','
     << shortest(c.clustering.sigma) << ',' << shortest(c.orbit.sigma) << ','
     << report.reference_size << ',' << report.generated_size;
  return os.str();
}

}  // namespace hsgen
