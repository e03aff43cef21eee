// Serial reference vs OpenMP kernels: orbit counting and the MMD kernel
// matrices. Usage: bench_kernels [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "hsgen/baselines.hpp"
#include "hsgen/metrics.hpp"
#include "hsgen/orbits.hpp"
#include "hsgen/synth.hpp"

using namespace hsgen;

namespace {

double best_ms(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s %12.2f %12.2f %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial ms", "parallel ms", "speedup");

  Rng rng(1);
  const Graph dense = erdos_renyi_gnm(200, 2000, rng);
  const Graph hubby = barabasi_albert(1000, 3, rng);
  for (const auto& [name, g] : {std::pair<const char*, const Graph&>{"orbits G(200, 2000)", dense},
                                std::pair<const char*, const Graph&>{"orbits BA(1000, 3)", hubby}}) {
    std::size_t sink = 0;
    const double s = best_ms(repeats, [&] { sink += orbit_counts_serial(g).size(); });
    const double p = best_ms(repeats, [&] { sink += orbit_counts(g).size(); });
    if (sink == 0) return 1;
    row(name, s, p);
  }

  CorpusSpec spec;
  spec.kind = CorpusKind::kTree;
  spec.count = 400;
  spec.seed = 2;
  const auto a = describe_all(synthesize(spec), DescriptorKind::kDegree);
  spec.seed = 3;
  const auto b = describe_all(synthesize(spec), DescriptorKind::kDegree);
  double sink = 0.0;
  const double s = best_ms(repeats, [&] { sink += mmd_serial(a, b, KernelKind::kGaussianEmd, 1.0); });
  const double p = best_ms(repeats, [&] { sink += mmd(a, b, KernelKind::kGaussianEmd, 1.0); });
  row("mmd degree 400 x 400", s, p);
  return sink >= 0.0 ? 0 : 1;
}
