#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsgen/graph.hpp"

namespace hsgen {

enum class DescriptorKind { kDegree, kClustering, kOrbit };
enum class KernelKind { kGaussianEmd, kGaussianTv };

std::string_view to_string(DescriptorKind kind);
std::string_view to_string(KernelKind kind);
KernelKind parse_kernel_kind(std::string_view name);

inline constexpr std::size_t kClusteringBins = 100;

struct GraphDescriptor {
  DescriptorKind kind = DescriptorKind::kDegree;
  // degree: normalised histogram, one bin per degree 0..max_degree.
  // clustering: normalised histogram over kClusteringBins bins of [0, 1],
  //   the last bin closed.
  // orbit: mean per-node count of each of the 15 orbits.
  std::vector<double> values;
};

GraphDescriptor describe(const Graph& g, DescriptorKind kind);
std::vector<GraphDescriptor> describe_all(std::span<const Graph> graphs, DescriptorKind kind);

// First Wasserstein distance between two histograms on a common grid with
// spacing bin_width. The shorter one is zero-padded. Both are taken as given,
// so they should carry equal mass.
double emd_1d(std::span<const double> a, std::span<const double> b, double bin_width);

// Half the L1 distance, zero-padding the shorter vector.
double tv_distance(std::span<const double> a, std::span<const double> b);

// exp(-d^2 / (2 sigma^2)) with d from the chosen distance. For gaussian_emd
// the bin width is 1 for degree and 1 / kClusteringBins for clustering.
double kernel_value(const GraphDescriptor& x, const GraphDescriptor& y, KernelKind kernel,
                    double sigma);

// Biased (plug-in) estimator, diagonal terms included:
//   MMD^2 = mean k(a, a') + mean k(b, b') - 2 mean k(a, b)
// Returns sqrt(max(MMD^2, 0)). Throws InvalidInput on empty corpora, mixed
// kinds, or sigma <= 0. The kernel matrices are filled in parallel and
// reduced in a fixed pairwise order, so the value does not depend on the
// thread count.
double mmd(std::span<const GraphDescriptor> a, std::span<const GraphDescriptor> b,
           KernelKind kernel, double sigma);
// Single-threaded reference with the same reduction order.
double mmd_serial(std::span<const GraphDescriptor> a, std::span<const GraphDescriptor> b,
                  KernelKind kernel, double sigma);

// Fixed-order pairwise summation.
double pairwise_sum(std::span<const double> values);

struct MetricSetting {
  KernelKind kernel = KernelKind::kGaussianEmd;
  double sigma = 1.0;
};

struct MmdConfig {
  MetricSetting degree{KernelKind::kGaussianEmd, 1.0};
  MetricSetting clustering{KernelKind::kGaussianEmd, 0.1};
  MetricSetting orbit{KernelKind::kGaussianTv, 30.0};
  // Orbit counting dominates evaluation cost; skip it when only degree and
  // clustering are needed. The report then carries orbit = 0.
  bool compute_orbit = true;
};

struct MmdReport {
  double deg = 0.0;
  double clus = 0.0;
  double orbit = 0.0;
  std::size_t reference_size = 0;
  std::size_t generated_size = 0;
  MmdConfig config;
};

MmdReport compare_corpora(std::span<const Graph> reference, std::span<const Graph> generated,
                          const MmdConfig& config = {});

// JSON object with keys deg, clus, orbit, kernel, sigma, sizes, estimator.
std::string report_to_json(const MmdReport& report);
std::string report_csv_header();
std::string report_to_csv_row(const MmdReport& report);

}  // namespace hsgen
