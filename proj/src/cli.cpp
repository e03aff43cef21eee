#include "hsgen/cli.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hsgen/baselines.hpp"
#include "hsgen/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace hsgen {
namespace {

template <typename T>
void read_field(const json& j, const char* key, T& field) {
  if (j.contains(key) && !j[key].is_null()) field = j[key].get<T>();
}

template <typename T>
void read_field(const json& j, const char* key, std::optional<T>& field) {
  if (j.contains(key)) field = j[key].is_null() ? std::nullopt : std::optional<T>(j[key].get<T>());
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

// Wraps nlohmann type errors so that a bad config file is a config error.
template <typename F>
auto with_config_errors(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("config: ") + e.what());
  }
}

double to_ms(std::chrono::nanoseconds d) { return static_cast<double>(d.count()) / 1e6; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kHsg: return "hsg";
    case Method::kEr: return "er";
    case Method::kBa: return "ba";
    case Method::kWs: return "ws";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::kHsg, Method::kEr, Method::kBa, Method::kWs}) {
    if (to_string(m) == name) return m;
  }
  throw InvalidConfig("unknown method '" + std::string(name) + "'");
}

std::vector<GraphTarget> targets_from(std::span<const Graph> graphs) {
  std::vector<GraphTarget> out;
  out.reserve(graphs.size());
  for (const Graph& g : graphs) out.push_back({g.num_nodes(), g.num_edges(), g.max_degree()});
  return out;
}

void GenerateOptions::validate() const {
  if (ws_rewire_p < 0.0 || ws_rewire_p > 1.0) throw InvalidConfig("ws rewire_p must lie in [0, 1]");
  if ((model_a || model_b) && method != Method::kHsg) {
    throw InvalidConfig("degree model parameters apply to --method hsg only");
  }
}

json GenerateOptions::to_json() const {
  json j;
  j["method"] = to_string(method);
  j["n"] = n;
  j["m"] = m;
  j["d_max"] = optional_json(d_max);
  j["count"] = count;
  j["mirror"] = mirror ? json(mirror->generic_string()) : json(nullptr);
  j["seed"] = seed;
  j["model"] = model ? json(to_string(*model)) : json(nullptr);
  j["model_a"] = optional_json(model_a);
  j["model_b"] = optional_json(model_b);
  j["use_dmax_limit"] = use_dmax_limit;
  j["use_truncation_k"] = use_truncation_k;
  j["batch_halving"] = batch_halving;
  j["write_dot"] = write_dot;
  j["ba_attach_m"] = optional_json(ba_attach_m);
  j["ws_ring_k"] = optional_json(ws_ring_k);
  j["ws_rewire_p"] = ws_rewire_p;
  return j;
}

GenerateOptions GenerateOptions::from_json(const json& j, GenerateOptions base) {
  return with_config_errors([&] {
    GenerateOptions o = std::move(base);
    if (j.contains("method")) o.method = parse_method(j["method"].get<std::string>());
    read_field(j, "n", o.n);
    read_field(j, "m", o.m);
    read_field(j, "d_max", o.d_max);
    read_field(j, "count", o.count);
    if (j.contains("mirror")) {
      o.mirror = j["mirror"].is_null() ? std::nullopt
                                       : std::optional<fs::path>(j["mirror"].get<std::string>());
    }
    read_field(j, "seed", o.seed);
    if (j.contains("out")) o.out = j["out"].get<std::string>();
    if (j.contains("model")) {
      o.model = j["model"].is_null()
                    ? std::nullopt
                    : std::optional<DegreeKind>(parse_degree_kind(j["model"].get<std::string>()));
    }
    read_field(j, "model_a", o.model_a);
    read_field(j, "model_b", o.model_b);
    read_field(j, "use_dmax_limit", o.use_dmax_limit);
    read_field(j, "use_truncation_k", o.use_truncation_k);
    read_field(j, "batch_halving", o.batch_halving);
    read_field(j, "write_dot", o.write_dot);
    read_field(j, "ba_attach_m", o.ba_attach_m);
    read_field(j, "ws_ring_k", o.ws_ring_k);
    read_field(j, "ws_rewire_p", o.ws_rewire_p);
    return o;
  });
}

GeneratorConfig GenerateOptions::hsg_config(const GraphTarget& target,
                                            std::uint64_t graph_seed) const {
  GeneratorConfig cfg;
  cfg.n = target.n;
  cfg.m = target.m;
  cfg.d_max = target.d_max;
  cfg.use_dmax_limit = use_dmax_limit;
  cfg.use_truncation_k = use_truncation_k;
  cfg.batch_halving = batch_halving;
  cfg.seed = graph_seed;
  if (model || model_a || model_b) {
    DegreeModel dm = DegreeModel::defaults(model.value_or(DegreeKind::kPoisson), cfg.avg_degree(),
                                           cfg.edge_probability(), cfg.d_max);
    if (model_a) dm.a = *model_a;
    if (model_b) dm.b = *model_b;
    cfg.degree_model = dm;
  }
  return cfg;
}

std::vector<GraphTarget> resolve_targets(const GenerateOptions& options) {
  if (options.mirror) {
    const auto reference = read_graphs(*options.mirror);
    if (reference.empty()) throw InvalidConfig("mirror corpus " + options.mirror->string() + " is empty");
    return targets_from(reference);
  }
  if (options.count == 0) throw InvalidConfig("--count must be >= 1");
  if (options.n < 2) throw InvalidConfig("--n must be >= 2 (or use --mirror)");
  const GraphTarget t{options.n, options.m, options.d_max.value_or(options.n - 1)};
  return std::vector<GraphTarget>(options.count, t);
}

GeneratedCorpus generate_for_targets(const GenerateOptions& options,
                                     std::span<const GraphTarget> targets) {
  options.validate();
  GeneratedCorpus out;
  out.graphs.resize(targets.size());
  out.anchors.resize(targets.size());
  std::vector<std::exception_ptr> failures(targets.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(targets.size()); ++i) {
    try {
      const GraphTarget& t = targets[i];
      const std::uint64_t graph_seed = derive_seed(options.seed, static_cast<std::uint64_t>(i));
      Rng rng(graph_seed);
      switch (options.method) {
        case Method::kHsg: {
          GenerationResult r = generate_detailed(options.hsg_config(t, graph_seed));
          out.anchors[i] = r.substructures.node_offsets;
          out.graphs[i] = std::move(r.graph);
          break;
        }
        case Method::kEr:
          out.graphs[i] = erdos_renyi_gnm(t.n, t.m, rng);
          break;
        case Method::kBa: {
          const auto per_node = static_cast<std::size_t>(
              std::llround(static_cast<double>(t.m) / static_cast<double>(t.n)));
          const std::size_t k = options.ba_attach_m.value_or(std::max<std::size_t>(1, per_node));
          out.graphs[i] = barabasi_albert(t.n, k, rng);
          break;
        }
        case Method::kWs: {
          const auto half = static_cast<std::size_t>(
              std::llround(static_cast<double>(t.m) / static_cast<double>(t.n)));
          std::size_t k = options.ws_ring_k.value_or(2 * std::max<std::size_t>(1, half));
          if (!options.ws_ring_k && t.n >= 3) k = std::min(k, (t.n - 1) & ~std::size_t{1});
          out.graphs[i] = watts_strogatz(t.n, k, options.ws_rewire_p, rng);
          break;
        }
      }
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const InvalidConfig& e) {
      throw InvalidConfig("graph " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

CorpusManifest cmd_generate(const GenerateOptions& options) {
  options.validate();
  if (options.out.empty()) throw InvalidConfig("--out is required");
  const auto targets = resolve_targets(options);
  const GeneratedCorpus corpus = generate_for_targets(options, targets);

  CorpusManifest meta;
  meta.name = std::string("generate-") + std::string(to_string(options.method));
  meta.seed = options.seed;
  meta.config = options.to_json();
  if (options.mirror) {
    json list = json::array();
    for (const auto& t : targets) list.push_back({t.n, t.m, t.d_max});
    meta.config["targets"] = std::move(list);
  }
  CorpusManifest written = write_corpus(options.out, corpus.graphs, meta);
  if (options.write_dot) {
    for (std::size_t i = 0; i < corpus.graphs.size(); ++i) {
      fs::path dot = options.out / written.graphs[i].file;
      dot.replace_extension(".dot");
      write_dot(dot, corpus.graphs[i], corpus.anchors[i]);
    }
  }
  return written;
}

json SynthOptions::to_json() const {
  const CorpusSpec& s = spec;
  json j;
  j["kind"] = to_string(s.kind);
  j["count"] = s.count;
  j["seed"] = s.seed;
  switch (s.kind) {
    case CorpusKind::kGrid:
      j["grid_side_min"] = s.grid_side_min;
      j["grid_side_max"] = s.grid_side_max;
      break;
    case CorpusKind::kTree:
      j["tree_size_min"] = s.tree_size_min;
      j["tree_size_max"] = s.tree_size_max;
      break;
    case CorpusKind::kClus:
      j["clus_nodes_min"] = s.clus_nodes_min;
      j["clus_nodes_max"] = s.clus_nodes_max;
      j["clus_attach_m"] = s.clus_attach_m;
      j["clus_triad_p"] = s.clus_triad_p;
      break;
    case CorpusKind::kEgo:
      j["ego_mean_nodes"] = s.ego_mean_nodes;
      j["ego_exponent"] = s.ego_exponent;
      j["ego_population"] = s.ego_population;
      j["ego_max_retries"] = s.ego_max_retries;
      break;
  }
  return j;
}

SynthOptions SynthOptions::from_json(const json& j, SynthOptions base) {
  return with_config_errors([&] {
    SynthOptions o = std::move(base);
    CorpusSpec& s = o.spec;
    if (j.contains("kind")) s.kind = parse_corpus_kind(j["kind"].get<std::string>());
    read_field(j, "count", s.count);
    read_field(j, "seed", s.seed);
    read_field(j, "grid_side_min", s.grid_side_min);
    read_field(j, "grid_side_max", s.grid_side_max);
    read_field(j, "tree_size_min", s.tree_size_min);
    read_field(j, "tree_size_max", s.tree_size_max);
    read_field(j, "clus_nodes_min", s.clus_nodes_min);
    read_field(j, "clus_nodes_max", s.clus_nodes_max);
    read_field(j, "clus_attach_m", s.clus_attach_m);
    read_field(j, "clus_triad_p", s.clus_triad_p);
    read_field(j, "ego_mean_nodes", s.ego_mean_nodes);
    read_field(j, "ego_exponent", s.ego_exponent);
    read_field(j, "ego_population", s.ego_population);
    read_field(j, "ego_max_retries", s.ego_max_retries);
    if (j.contains("out")) o.out = j["out"].get<std::string>();
    return o;
  });
}

CorpusManifest cmd_synth(const SynthOptions& options) {
  options.spec.validate();
  if (options.out.empty()) throw InvalidConfig("--out is required");
  const auto graphs = synthesize(options.spec);
  CorpusManifest meta;
  meta.name = std::string("synth-") + std::string(to_string(options.spec.kind));
  meta.seed = options.spec.seed;
  meta.config = options.to_json();
  return write_corpus(options.out, graphs, meta);
}

EvalOptions EvalOptions::from_json(const json& j, EvalOptions base) {
  return with_config_errors([&] {
    EvalOptions o = std::move(base);
    if (j.contains("reference")) o.reference = j["reference"].get<std::string>();
    if (j.contains("generated")) o.generated = j["generated"].get<std::string>();
    if (j.contains("format")) {
      const auto f = j["format"].get<std::string>();
      if (f != "json" && f != "csv") throw InvalidConfig("format must be json or csv");
      o.format = f == "json" ? ReportFormat::kJson : ReportFormat::kCsv;
    }
    if (j.contains("out")) {
      o.out = j["out"].is_null() ? std::nullopt
                                 : std::optional<fs::path>(j["out"].get<std::string>());
    }
    auto setting = [&](const char* key, MetricSetting& s) {
      if (!j.contains(key)) return;
      const json& sj = j[key];
      if (sj.contains("kernel")) s.kernel = parse_kernel_kind(sj["kernel"].get<std::string>());
      read_field(sj, "sigma", s.sigma);
    };
    setting("deg", o.metrics.degree);
    setting("clus", o.metrics.clustering);
    setting("orbit", o.metrics.orbit);
    read_field(j, "compute_orbit", o.metrics.compute_orbit);
    return o;
  });
}

std::string format_report(const MmdReport& report, ReportFormat format) {
  if (format == ReportFormat::kJson) return report_to_json(report) + "\n";
  return report_csv_header() + "\n" + report_to_csv_row(report) + "\n";
}

MmdReport cmd_eval(const EvalOptions& options, std::ostream& os) {
  if (options.reference.empty() || options.generated.empty()) {
    throw InvalidConfig("--reference and --generated are required");
  }
  for (const MetricSetting* s : {&options.metrics.degree, &options.metrics.clustering,
                                 &options.metrics.orbit}) {
    if (!(s->sigma > 0.0)) throw InvalidConfig("sigma must be positive");
  }
  const auto reference = read_graphs(options.reference);
  const auto generated = read_graphs(options.generated);
  if (reference.empty()) throw InvalidConfig(options.reference.string() + " holds no graphs");
  if (generated.empty()) throw InvalidConfig(options.generated.string() + " holds no graphs");
  const MmdReport report = compare_corpora(reference, generated, options.metrics);
  const std::string text = format_report(report, options.format);
  os << text;
  if (options.out) write_text(*options.out, text);
  return report;
}

BenchOptions BenchOptions::from_json(const json& j, BenchOptions base) {
  return with_config_errors([&] {
    BenchOptions o = std::move(base);
    if (j.contains("n")) {
      o.sizes = j["n"].is_array() ? j["n"].get<std::vector<std::size_t>>()
                                  : std::vector<std::size_t>{j["n"].get<std::size_t>()};
    }
    read_field(j, "c", o.sparsity);
    read_field(j, "d_max", o.d_max);
    read_field(j, "runs", o.runs);
    read_field(j, "seed", o.seed);
    read_field(j, "use_dmax_limit", o.use_dmax_limit);
    read_field(j, "use_truncation_k", o.use_truncation_k);
    read_field(j, "batch_halving", o.batch_halving);
    if (j.contains("out")) {
      o.out = j["out"].is_null() ? std::nullopt
                                 : std::optional<fs::path>(j["out"].get<std::string>());
    }
    return o;
  });
}

double PhaseTimings::fraction_parse() const {
  return total().count() > 0 ? static_cast<double>(t1_parse.count()) / static_cast<double>(total().count()) : 0.0;
}
double PhaseTimings::fraction_connect() const {
  return total().count() > 0 ? static_cast<double>(t2_connect.count()) / static_cast<double>(total().count()) : 0.0;
}
double PhaseTimings::fraction_densify() const {
  return total().count() > 0 ? static_cast<double>(t3_densify.count()) / static_cast<double>(total().count()) : 0.0;
}

std::size_t edges_for_sparsity(std::size_t n, double sparsity) {
  const double max_edges = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  const auto m = static_cast<std::size_t>(std::llround(sparsity * max_edges));
  return std::max(m, n - 1);
}

std::vector<BenchRow> run_bench(const BenchOptions& options) {
  if (options.runs == 0) throw InvalidConfig("--runs must be >= 1");
  if (options.sizes.empty()) throw InvalidConfig("bench needs at least one --n");
  if (!(options.sparsity > 0.0 && options.sparsity <= 1.0)) throw InvalidConfig("--c must lie in (0, 1]");
  std::vector<BenchRow> rows;
  for (std::size_t n : options.sizes) {
    if (n < 2) throw InvalidConfig("--n must be >= 2");
    GeneratorConfig cfg;
    cfg.n = n;
    cfg.m = edges_for_sparsity(n, options.sparsity);
    cfg.d_max = options.d_max.value_or(n - 1);
    cfg.use_dmax_limit = options.use_dmax_limit;
    cfg.use_truncation_k = options.use_truncation_k;
    cfg.batch_halving = options.batch_halving;
    cfg.validate();
    PhaseTimings sum;
    for (std::size_t r = 0; r < options.runs; ++r) {
      cfg.seed = derive_seed(options.seed, r);
      const GenerationResult res = generate_detailed(cfg);
      BenchRow row{std::to_string(r), n, cfg.m,
                   {res.parse_time, res.connect_time, res.densify_time}};
      sum.t1_parse += row.timings.t1_parse;
      sum.t2_connect += row.timings.t2_connect;
      sum.t3_densify += row.timings.t3_densify;
      rows.push_back(std::move(row));
    }
    const auto runs = static_cast<std::int64_t>(options.runs);
    rows.push_back({"mean", n, cfg.m,
                    {sum.t1_parse / runs, sum.t2_connect / runs, sum.t3_densify / runs}});
  }
  return rows;
}

std::string bench_csv(std::span<const BenchRow> rows) {
  std::ostringstream os;
  os << "run,n,m,t1_parse_ms,t2_connect_ms,t3_densify_ms,total_ms,frac_t1,frac_t2,frac_t3\n";
  os.setf(std::ios::fixed);
  for (const BenchRow& r : rows) {
    const PhaseTimings& t = r.timings;
    os.precision(3);
    os << r.label << ',' << r.n << ',' << r.m << ',' << to_ms(t.t1_parse) << ','
       << to_ms(t.t2_connect) << ',' << to_ms(t.t3_densify) << ',' << to_ms(t.total()) << ',';
    os.precision(6);
    os << t.fraction_parse() << ',' << t.fraction_connect() << ',' << t.fraction_densify() << '\n';
  }
  return os.str();
}

std::vector<BenchRow> cmd_bench(const BenchOptions& options, std::ostream& os) {
  auto rows = run_bench(options);
  const std::string csv = bench_csv(rows);
  os << csv;
  if (options.out) write_text(*options.out, csv);
  return rows;
}

}  // namespace hsgen
