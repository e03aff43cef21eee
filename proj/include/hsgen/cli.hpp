#pragma once

// Command implementations behind the hsgen executable. Each command takes a
// plain options struct, so the executable only parses flags and maps
// exceptions to exit codes.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "hsgen/graph.hpp"
#include "hsgen/hsg.hpp"
#include "hsgen/io.hpp"
#include "hsgen/metrics.hpp"
#include "hsgen/synth.hpp"

namespace hsgen {

enum class Method { kHsg, kEr, kBa, kWs };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

// The three numbers a generator is allowed to see of a reference graph.
struct GraphTarget {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d_max = 0;

  friend bool operator==(const GraphTarget&, const GraphTarget&) = default;
};

std::vector<GraphTarget> targets_from(std::span<const Graph> graphs);

struct GenerateOptions {
  Method method = Method::kHsg;
  // Explicit target, used `count` times when no mirror corpus is given.
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<std::size_t> d_max;  // unset: n - 1
  std::size_t count = 1;
  std::optional<std::filesystem::path> mirror;
  std::uint64_t seed = 0;
  std::filesystem::path out;

  // hsg
  std::optional<DegreeKind> model;
  std::optional<double> model_a;
  std::optional<double> model_b;
  bool use_dmax_limit = true;
  bool use_truncation_k = true;
  bool batch_halving = true;
  // Also write graph_XXXXXX.dot with anchor nodes highlighted (hsg only).
  bool write_dot = false;

  // Baselines. Unset values are derived per target: BA links
  // max(1, round(m / n)) per node, WS uses the even ring degree nearest
  // 2m / n.
  std::optional<std::size_t> ba_attach_m;
  std::optional<std::size_t> ws_ring_k;
  double ws_rewire_p = 0.1;

  void validate() const;
  nlohmann::json to_json() const;
  // Fields absent from `j` keep their value in `base`.
  static GenerateOptions from_json(const nlohmann::json& j, GenerateOptions base);

  GeneratorConfig hsg_config(const GraphTarget& target, std::uint64_t graph_seed) const;
};

struct GeneratedCorpus {
  std::vector<Graph> graphs;
  // Anchor node ids per graph; empty for baselines.
  std::vector<std::vector<Node>> anchors;
};

// Graph i uses the substream derive_seed(options.seed, i). Runs in parallel
// across graphs; the result does not depend on the worker count.
GeneratedCorpus generate_for_targets(const GenerateOptions& options,
                                     std::span<const GraphTarget> targets);

std::vector<GraphTarget> resolve_targets(const GenerateOptions& options);

CorpusManifest cmd_generate(const GenerateOptions& options);

struct SynthOptions {
  CorpusSpec spec;
  std::filesystem::path out;

  nlohmann::json to_json() const;
  static SynthOptions from_json(const nlohmann::json& j, SynthOptions base);
};

CorpusManifest cmd_synth(const SynthOptions& options);

enum class ReportFormat { kJson, kCsv };

struct EvalOptions {
  std::filesystem::path reference;
  std::filesystem::path generated;
  MmdConfig metrics;
  ReportFormat format = ReportFormat::kJson;
  std::optional<std::filesystem::path> out;

  static EvalOptions from_json(const nlohmann::json& j, EvalOptions base);
};

std::string format_report(const MmdReport& report, ReportFormat format);

// Prints the report to `os` and, when options.out is set, writes it there.
MmdReport cmd_eval(const EvalOptions& options, std::ostream& os);

struct BenchOptions {
  std::vector<std::size_t> sizes{2000};
  double sparsity = 0.05;
  std::optional<std::size_t> d_max;  // unset: n - 1
  std::size_t runs = 5;
  std::uint64_t seed = 0;
  bool use_dmax_limit = true;
  bool use_truncation_k = true;
  bool batch_halving = true;
  std::optional<std::filesystem::path> out;

  static BenchOptions from_json(const nlohmann::json& j, BenchOptions base);
};

struct PhaseTimings {
  std::chrono::nanoseconds t1_parse{0};
  std::chrono::nanoseconds t2_connect{0};
  std::chrono::nanoseconds t3_densify{0};

  std::chrono::nanoseconds total() const { return t1_parse + t2_connect + t3_densify; }
  // Phase shares of total(); they sum to 1 up to rounding.
  double fraction_parse() const;
  double fraction_connect() const;
  double fraction_densify() const;
};

struct BenchRow {
  std::string label;  // run index, or "mean" for the per-size aggregate
  std::size_t n = 0;
  std::size_t m = 0;
  PhaseTimings timings;
};

// Runs in sequence (timings would be distorted by sharing cores).
std::vector<BenchRow> run_bench(const BenchOptions& options);
std::string bench_csv(std::span<const BenchRow> rows);

std::vector<BenchRow> cmd_bench(const BenchOptions& options, std::ostream& os);

// Edge count with m = round(c * n(n-1)/2), raised to n - 1 when smaller.
std::size_t edges_for_sparsity(std::size_t n, double sparsity);

}  // namespace hsgen
