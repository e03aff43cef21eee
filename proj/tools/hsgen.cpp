// hsgen: generate, synthesize, evaluate and benchmark graph corpora.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "hsgen/cli.hpp"
#include "hsgen/error.hpp"

namespace {

using nlohmann::json;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

bool use_color() {
  const char* no_color = std::getenv("NO_COLOR");
  return (no_color == nullptr || *no_color == '\0') && isatty(fileno(stderr));
}

int report(int code, const std::string& message) {
  if (use_color()) {
    std::cerr << "\033[31merror:\033[0m " << message << '\n';
  } else {
    std::cerr << "error: " << message << '\n';
  }
  return code;
}

// --config is read before flag parsing so that flags override the file.
json load_config(int argc, char** argv) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      path = argv[i + 1];
    } else if (arg.rfind("--config=", 0) == 0) {
      path = arg.substr(9);
    }
  }
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw hsgen::InvalidConfig("cannot open config file " + path);
  try {
    json j = json::parse(in);
    if (!j.is_object()) throw hsgen::InvalidConfig(path + ": config must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw hsgen::InvalidConfig(path + ": " + e.what());
  }
}

json section(const json& config, const char* name) {
  return config.contains(name) ? config[name] : json::object();
}

int run(int argc, char** argv) {
  const json config = load_config(argc, argv);

  CLI::App app{"Graph corpus generation and evaluation"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with defaults; flags override it");

  // generate
  hsgen::GenerateOptions gen = hsgen::GenerateOptions::from_json(section(config, "generate"), {});
  std::string gen_method{hsgen::to_string(gen.method)};
  std::string gen_model = gen.model ? std::string(hsgen::to_string(*gen.model)) : "";
  std::string gen_mirror = gen.mirror ? gen.mirror->string() : "";
  std::string gen_out = gen.out.string();
  bool no_dmax = false, no_k = false, no_halving = false;
  auto* g = app.add_subcommand("generate", "Generate a corpus with hsg or a baseline");
  g->add_option("--method", gen_method, "hsg, er, ba or ws")->capture_default_str();
  g->add_option("--n", gen.n, "Nodes per graph");
  g->add_option("--m", gen.m, "Edges per graph");
  g->add_option("--dmax", gen.d_max, "Maximum degree (default n - 1)");
  g->add_option("--count", gen.count, "Number of graphs")->capture_default_str();
  g->add_option("--mirror", gen_mirror, "Take (n, m, dmax) from each graph of this corpus");
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--out", gen_out, "Output directory");
  g->add_option("--model", gen_model, "poisson, uniform, normal, exponential, gamma or pareto");
  g->add_option("--model-a", gen.model_a, "First degree-model parameter");
  g->add_option("--model-b", gen.model_b, "Second degree-model parameter");
  g->add_flag("--no-dmax", no_dmax, "Do not cap degrees at dmax");
  g->add_flag("--no-k", no_k, "Do not truncate anchor degrees at k");
  g->add_flag("--no-halving", no_halving, "Rebuild the probability list after every edge");
  g->add_flag("--dot", gen.write_dot, "Also write DOT files with anchors highlighted");
  g->add_option("--ba-m", gen.ba_attach_m, "BA links per arriving node");
  g->add_option("--ws-k", gen.ws_ring_k, "WS ring degree (even)");
  g->add_option("--ws-p", gen.ws_rewire_p, "WS rewiring probability")->capture_default_str();

  // synth
  hsgen::SynthOptions syn = hsgen::SynthOptions::from_json(section(config, "synth"), {});
  std::string syn_kind;
  std::string syn_out = syn.out.string();
  auto* s = app.add_subcommand("synth", "Synthesize a reference corpus");
  s->add_option("kind", syn_kind, "grid, tree, clus or ego")->required();
  s->add_option("--count", syn.spec.count)->capture_default_str();
  s->add_option("--seed", syn.spec.seed)->capture_default_str();
  s->add_option("--out", syn_out, "Output directory");
  s->add_option("--triad-p", syn.spec.clus_triad_p, "CLUS triad closure probability");
  s->add_option("--attach-m", syn.spec.clus_attach_m, "CLUS links per arriving node");
  s->add_option("--ego-nodes", syn.spec.ego_mean_nodes, "EGO target mean size");
  s->add_option("--ego-exponent", syn.spec.ego_exponent, "EGO power-law exponent");

  // eval
  hsgen::EvalOptions ev = hsgen::EvalOptions::from_json(section(config, "eval"), {});
  std::string ev_reference = ev.reference.string();
  std::string ev_generated = ev.generated.string();
  std::string ev_format = ev.format == hsgen::ReportFormat::kJson ? "json" : "csv";
  std::string ev_out = ev.out ? ev.out->string() : "";
  bool no_orbit = false;
  auto* e = app.add_subcommand("eval", "MMD between two corpora");
  e->add_option("--reference", ev_reference, "Reference corpus directory");
  e->add_option("--generated", ev_generated, "Generated corpus directory");
  e->add_option("--format", ev_format, "json or csv")->capture_default_str();
  e->add_option("--out", ev_out, "Also write the report here");
  e->add_option("--sigma-deg", ev.metrics.degree.sigma)->capture_default_str();
  e->add_option("--sigma-clus", ev.metrics.clustering.sigma)->capture_default_str();
  e->add_option("--sigma-orbit", ev.metrics.orbit.sigma)->capture_default_str();
  e->add_flag("--no-orbit", no_orbit, "Skip the orbit score");

  // bench
  hsgen::BenchOptions bn = hsgen::BenchOptions::from_json(section(config, "bench"), {});
  std::string bn_out = bn.out ? bn.out->string() : "";
  auto* b = app.add_subcommand("bench", "Time the three generation phases");
  b->add_option("--n", bn.sizes, "Node counts (repeatable)")->capture_default_str();
  b->add_option("--c", bn.sparsity, "Sparsity m / (n(n-1)/2)")->capture_default_str();
  b->add_option("--dmax", bn.d_max, "Maximum degree (default n - 1)");
  b->add_option("--runs", bn.runs)->capture_default_str();
  b->add_option("--seed", bn.seed)->capture_default_str();
  b->add_option("--out", bn_out, "Also write the CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    return report(kUsage, ex.what());
  }

  if (g->parsed()) {
    gen.method = hsgen::parse_method(gen_method);
    if (!gen_model.empty()) gen.model = hsgen::parse_degree_kind(gen_model);
    if (!gen_mirror.empty()) gen.mirror = gen_mirror;
    gen.out = gen_out;
    if (no_dmax) gen.use_dmax_limit = false;
    if (no_k) gen.use_truncation_k = false;
    if (no_halving) gen.batch_halving = false;
    const auto manifest = hsgen::cmd_generate(gen);
    std::cout << "wrote " << manifest.graphs.size() << " graphs to " << gen.out.string() << '\n';
  } else if (s->parsed()) {
    syn.spec.kind = hsgen::parse_corpus_kind(syn_kind);
    syn.out = syn_out;
    const auto manifest = hsgen::cmd_synth(syn);
    std::cout << "wrote " << manifest.graphs.size() << " graphs to " << syn.out.string() << '\n';
  } else if (e->parsed()) {
    ev.reference = ev_reference;
    ev.generated = ev_generated;
    if (ev_format != "json" && ev_format != "csv") {
      throw hsgen::InvalidConfig("--format must be json or csv");
    }
    ev.format = ev_format == "json" ? hsgen::ReportFormat::kJson : hsgen::ReportFormat::kCsv;
    if (!ev_out.empty()) ev.out = ev_out;
    if (no_orbit) ev.metrics.compute_orbit = false;
    hsgen::cmd_eval(ev, std::cout);
  } else if (b->parsed()) {
    if (!bn_out.empty()) bn.out = bn_out;
    hsgen::cmd_bench(bn, std::cout);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const hsgen::InvalidConfig& ex) {
    return report(kUsage, ex.what());
  } catch (const hsgen::InvalidParameter& ex) {
    return report(kUsage, ex.what());
  } catch (const hsgen::InvalidNode& ex) {
    return report(kUsage, ex.what());
  } catch (const hsgen::FormatError& ex) {
    return report(kData, ex.what());
  } catch (const hsgen::InvalidInput& ex) {
    return report(kData, ex.what());
  } catch (const hsgen::DegenerateSupport& ex) {
    return report(kData, ex.what());
  } catch (const std::filesystem::filesystem_error& ex) {
    return report(kData, ex.what());
  } catch (const std::exception& ex) {
    return report(kInternal, std::string("internal error: ") + ex.what());
  }
}
