#include <cmath>

#include "doctest.h"
#include "hsgen/cli.hpp"
#include "hsgen/error.hpp"
#include "hsgen/metrics.hpp"
#include "hsgen/synth.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace hsgen;

namespace {

std::vector<double> random_histogram(Rng& rng, std::size_t bins) {
  std::vector<double> h(bins);
  double total = 0.0;
  for (double& x : h) total += (x = uniform01(rng));
  for (double& x : h) x /= total;
  return h;
}

std::vector<GraphDescriptor> random_corpus(Rng& rng, std::size_t size, std::size_t bins) {
  std::vector<GraphDescriptor> out;
  for (std::size_t i = 0; i < size; ++i) out.push_back({DescriptorKind::kDegree, random_histogram(rng, bins)});
  return out;
}

std::vector<Graph> trees(std::size_t count, std::uint64_t seed) {
  CorpusSpec s;
  s.kind = CorpusKind::kTree;
  s.count = count;
  s.seed = seed;
  return synthesize(s);
}

}  // namespace

TEST_CASE("describe") {
  const Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  const auto deg = describe(k3, DescriptorKind::kDegree);
  REQUIRE(deg.values.size() == 3);
  CHECK(deg.values[2] == 1.0);
  const auto clus = describe(k3, DescriptorKind::kClustering);
  REQUIRE(clus.values.size() == kClusteringBins);
  CHECK(clus.values.back() == doctest::Approx(1.0));
  const Graph p4(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(describe(p4, DescriptorKind::kOrbit).values[0] == 1.5);
  CHECK_THROWS_AS(describe(Graph(), DescriptorKind::kDegree), InvalidInput);
}

TEST_CASE("descriptor histograms sum to one") {
  for (const Graph& g : trees(5, 3)) {
    for (DescriptorKind k : {DescriptorKind::kDegree, DescriptorKind::kClustering}) {
      double total = 0.0;
      for (double x : describe(g, k).values) total += x;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("EMD agrees with the transport oracle") {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t la = 1 + uniform_below(rng, 8);
    const std::size_t lb = 1 + uniform_below(rng, 8);
    const auto a = random_histogram(rng, la);
    const auto b = random_histogram(rng, lb);
    const double width = trial % 2 == 0 ? 1.0 : 0.01;
    CHECK(emd_1d(a, b, width) == doctest::Approx(oracle::transport_emd(a, b, width)).epsilon(1e-9));
  }
  const std::vector<double> x{1.0}, y{0.0, 0.0, 1.0};
  CHECK(emd_1d(x, y, 1.0) == 2.0);
}

TEST_CASE("total variation") {
  const std::vector<double> a{0.5, 0.5}, b{0.0, 0.5, 0.5};
  CHECK(tv_distance(a, b) == doctest::Approx(0.5));
  CHECK(tv_distance(a, a) == 0.0);
}

TEST_CASE("mmd identities") {
  Rng rng(10);
  const auto s = random_corpus(rng, 20, 6);
  const auto t = random_corpus(rng, 15, 9);
  CHECK(mmd(s, s, KernelKind::kGaussianEmd, 1.0) <= 1e-12);
  CHECK(mmd(s, t, KernelKind::kGaussianEmd, 1.0) == mmd(t, s, KernelKind::kGaussianEmd, 1.0));
  CHECK(mmd(s, t, KernelKind::kGaussianTv, 0.5) >= 0.0);
  CHECK(mmd(s, t, KernelKind::kGaussianEmd, 1.0) == mmd_serial(s, t, KernelKind::kGaussianEmd, 1.0));
}

TEST_CASE("mmd of two singletons has a closed form") {
  const GraphDescriptor x{DescriptorKind::kDegree, {0.2, 0.5, 0.3}};
  const GraphDescriptor y{DescriptorKind::kDegree, {0.0, 0.1, 0.4, 0.5}};
  const std::vector<GraphDescriptor> a{x}, b{y};
  const double k = kernel_value(x, y, KernelKind::kGaussianEmd, 1.0);
  CHECK(mmd(a, b, KernelKind::kGaussianEmd, 1.0) == doctest::Approx(std::sqrt(2.0 - 2.0 * k)).epsilon(1e-12));
}

TEST_CASE("mmd input checks") {
  const std::vector<GraphDescriptor> deg{{DescriptorKind::kDegree, {1.0}}};
  const std::vector<GraphDescriptor> orb{{DescriptorKind::kOrbit, {1.0}}};
  const std::vector<GraphDescriptor> none;
  CHECK_THROWS_AS(mmd(deg, orb, KernelKind::kGaussianTv, 1.0), InvalidInput);
  CHECK_THROWS_AS(mmd(deg, none, KernelKind::kGaussianTv, 1.0), InvalidInput);
  CHECK_THROWS_AS(mmd(deg, deg, KernelKind::kGaussianTv, 0.0), InvalidInput);
}

TEST_CASE("pairwise summation") {
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("compare_corpora") {
  const auto a = trees(30, 1);
  const MmdReport same = compare_corpora(a, a);
  CHECK(same.deg <= 1e-12);
  CHECK(same.clus <= 1e-12);
  CHECK(same.orbit <= 1e-12);
  const auto b = trees(30, 2);
  const MmdReport noise = compare_corpora(a, b);
  CHECK(noise.deg < 0.05);
  CHECK(noise.clus < 0.05);
  CHECK(noise.orbit < 0.05);
  CHECK(noise.reference_size == 30);
}

TEST_CASE("hsg mirrors a tree corpus better than G(n, m) on degree") {
  const auto reference = trees(40, 5);
  const auto targets = targets_from(reference);
  GenerateOptions opts;
  opts.seed = 6;
  opts.method = Method::kHsg;
  const auto hsg = generate_for_targets(opts, targets).graphs;
  opts.method = Method::kEr;
  const auto er = generate_for_targets(opts, targets).graphs;
  MmdConfig cfg;
  cfg.compute_orbit = false;
  CHECK(compare_corpora(reference, hsg, cfg).deg < compare_corpora(reference, er, cfg).deg);
}

TEST_CASE("report serialisation") {
  MmdReport r;
  r.deg = 0.25;
  r.reference_size = 3;
  r.generated_size = 4;
  const auto j = nlohmann::json::parse(report_to_json(r));
  for (const char* key : {"deg", "clus", "orbit", "kernel", "sigma", "sizes"}) CHECK(j.contains(key));
  CHECK(j["deg"] == 0.25);
  CHECK(j["sigma"]["orbit"] == 30.0);
  CHECK(j["kernel"]["orbit"] == "gaussian_tv");
  CHECK(j["sizes"]["generated"] == 4);
  const std::string row = report_to_csv_row(r);
  const std::string header = report_csv_header();
  CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
  CHECK(row.rfind("0.25,0,0,gaussian_emd", 0) == 0);
}
