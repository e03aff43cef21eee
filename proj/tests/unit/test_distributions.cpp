#include <cmath>
#include <vector>

#include "doctest.h"
#include "hsgen/distributions.hpp"
#include "hsgen/error.hpp"
#include "oracles.hpp"

using namespace hsgen;

namespace {

// Empirical frequencies of `draws` samples on {0..cap}.
std::vector<double> frequencies(const DegreeSampler& s, std::size_t draws, Rng& rng) {
  std::vector<double> f(s.support_cap() + 1, 0.0);
  for (std::size_t i = 0; i < draws; ++i) f[s(rng)] += 1.0;
  for (double& x : f) x /= static_cast<double>(draws);
  return f;
}

void check_within_3_sigma(const std::vector<double>& freq, const DegreeSampler& s,
                          std::size_t draws) {
  for (std::size_t d = 0; d < freq.size(); ++d) {
    const double p = s.probability(d);
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(draws));
    CHECK(std::abs(freq[d] - p) <= 3.0 * sigma + 1e-12);
  }
}

}  // namespace

TEST_CASE("poisson pmf") {
  CHECK(poisson_pmf(0, 2.0) == doctest::Approx(0.135335).epsilon(1e-5));
  CHECK(poisson_pmf(2, 2.0) == doctest::Approx(0.270671).epsilon(1e-5));
  const double tail = poisson_pmf(150, 2.0);
  CHECK(tail > 0.0);
  CHECK(tail < 1e-200);
  CHECK(tail == doctest::Approx(static_cast<double>(oracle::poisson_pmf_direct(150, 2.0L))).epsilon(1e-9));
  CHECK_THROWS_AS(poisson_pmf(1, 0.0), InvalidParameter);
  CHECK_THROWS_AS(poisson_pmf(1, -1.0), InvalidParameter);
}

TEST_CASE("poisson pmf sums to one") {
  for (double lambda = 0.5; lambda <= 20.0; lambda += 0.5) {
    double total = 0.0;
    for (std::size_t d = 0; d <= 200; ++d) total += poisson_pmf(d, lambda);
    CHECK(total >= 1.0 - 1e-9);
    CHECK(total <= 1.0 + 1e-12);
  }
}

TEST_CASE("truncation k") {
  CHECK(truncation_k(1.0) == 2);
  CHECK(truncation_k(2.0) == 4);
  CHECK(truncation_k(0.5) == 1);
  CHECK_THROWS_AS(truncation_k(0.0), InvalidParameter);
  std::size_t previous = 0;
  for (int i = 1; i <= 200; ++i) {
    const double lambda = 0.1 * i;
    const std::size_t k = truncation_k(lambda);
    CHECK(k >= previous);
    CHECK(k == oracle::truncation_by_enumeration(lambda));
    previous = k;
  }
  CHECK(DegreeModel::poisson(2.0).truncation() == std::optional<std::size_t>(4));
}

TEST_CASE("capped poisson sampling matches the renormalised pmf") {
  Rng rng(1);
  const DegreeSampler s(DegreeModel::poisson(2.0), 3);
  double norm = 0.0;
  for (std::size_t d = 0; d <= 3; ++d) norm += poisson_pmf(d, 2.0);
  for (std::size_t d = 0; d <= 3; ++d) CHECK(s.probability(d) == doctest::Approx(poisson_pmf(d, 2.0) / norm));
  check_within_3_sigma(frequencies(s, 100000, rng), s, 100000);
}

TEST_CASE("uniform model is flat on its support") {
  Rng rng(2);
  const std::size_t cap = 8;
  const DegreeSampler s(DegreeModel::uniform(0.0, static_cast<double>(cap)), cap);
  // CDF differences put no mass at 0 and equal mass on 1..cap.
  CHECK(s.probability(0) == 0.0);
  for (std::size_t d = 1; d <= cap; ++d) CHECK(s.probability(d) == doctest::Approx(1.0 / cap));
  check_within_3_sigma(frequencies(s, 100000, rng), s, 100000);
}

TEST_CASE("pareto draws respect the cap") {
  Rng rng(3);
  const DegreeModel pareto = DegreeModel::pareto(2.5, 1.0);
  for (int i = 0; i < 10000; ++i) CHECK(sample_degree(pareto, rng, 6) <= 6);
}

TEST_CASE("poisson sample mean") {
  Rng rng(4);
  const double lambda = 4.0;
  const DegreeSampler s(DegreeModel::poisson(lambda), 40);
  double total = 0.0;
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) total += static_cast<double>(s(rng));
  CHECK(std::abs(total / draws - lambda) < 0.01 * lambda);
}

TEST_CASE("degenerate and invalid models") {
  CHECK_THROWS_AS(DegreeSampler(DegreeModel::uniform(5.0, 10.0), 3), DegenerateSupport);
  CHECK_THROWS_AS(DegreeModel::uniform(3.0, 3.0).validate(), InvalidParameter);
  CHECK_THROWS_AS(DegreeModel::normal(1.0, 0.0).validate(), InvalidParameter);
  CHECK_THROWS_AS(DegreeModel::gamma(-1.0, 1.0).validate(), InvalidParameter);
  Rng rng(0);
  CHECK_THROWS_AS(sample_degree(DegreeModel::poisson(1.0), rng, 0), InvalidParameter);
  CHECK_THROWS_AS(parse_degree_kind("cauchy"), InvalidParameter);
  CHECK(parse_degree_kind("gamma") == DegreeKind::kGamma);
}

TEST_CASE("continuous models discretise by CDF difference") {
  // Exponential(rate 1): P{d-1 < x <= d} = e^{-(d-1)} - e^{-d} for d >= 1.
  const DegreeModel e = DegreeModel::exponential(1.0);
  CHECK(e.pmf(0) == 0.0);
  CHECK(e.pmf(1) == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(e.pmf(3) == doctest::Approx(std::exp(-2.0) - std::exp(-3.0)));
  // Normal(mu, 1) puts the most mass on the bin (mu - 1, mu].
  const DegreeModel nm = DegreeModel::normal(4.0, 1.0);
  CHECK(nm.pmf(4) == doctest::Approx(0.5 - 0.158655253931457).epsilon(1e-9));
  CHECK(nm.pmf(5) == doctest::Approx(nm.pmf(4)).epsilon(1e-9));
  // Zero mass at 0 means no truncation threshold exists.
  CHECK_FALSE(DegreeModel::pareto(2.0, 1.0).truncation().has_value());
}

TEST_CASE("connectivity edge count") {
  CHECK(connectivity_edge_count(100, 0.0) == 230);
  CHECK(connectivity_edge_count(2, 0.0) == 0);
  CHECK(connectivity_edge_count(1000, 0.5) == 3953);
}

TEST_CASE("edge probability thresholds") {
  const auto t = edge_probability_thresholds(101, 5.0);
  CHECK(t.p2 == doctest::Approx(0.05));
  CHECK(t.p3 == doctest::Approx(std::log(101.0) / 100.0));
  CHECK(t.p3 == doctest::Approx(0.04615).epsilon(1e-4));
  CHECK(t.p4 == doctest::Approx(2.0 * t.p3));
}

TEST_CASE("expected node probability") {
  CHECK(expected_node_probability(20, 2.0) == doctest::Approx(0.3 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(expected_node_probability(20, 2.0) == doctest::Approx(0.040601).epsilon(1e-5));
  // Integer D: the gamma function reduces to the factorial.
  for (int d = 1; d <= 10; ++d) {
    double fact = 1.0;
    for (int i = 2; i <= d; ++i) fact *= i;
    const double expected = std::exp(-d) * (d + 1) * std::pow(d, d) / (50.0 * fact);
    CHECK(expected_node_probability(50, d) == doctest::Approx(expected).epsilon(1e-12));
  }
  const double d20 = 0.2358 * 19.0;
  CHECK(expected_node_probability(20, d20) > 1.0 / 20.0);
  const double d142 = 2.0 * std::log(142.0);
  CHECK(expected_node_probability(142, d142) >= 1.0 / 142.0);
  CHECK(expected_node_probability(142, d142) ==
        doctest::Approx(static_cast<double>(oracle::node_probability_direct(142, d142))).epsilon(1e-9));
}
