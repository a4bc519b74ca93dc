// Command-line front end: topology generation, single seeded runs with
// optional trace capture, Monte Carlo sweeps, and trace audits.
//
// Exit codes: 0 success, 1 usage error, 2 contract-threshold breach.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "radiosim/audit.hpp"
#include "radiosim/election.hpp"
#include "radiosim/sweep.hpp"

using namespace radiosim;

namespace {

int cmd_topo(const std::string& family, int n, double p, int layers, bool directed, uint64_t seed,
             const std::string& out_path) {
  TopologySpec spec;
  spec.family = family_from_name(family);
  spec.n = n;
  spec.p = p;
  spec.layers = layers;
  spec.directed = directed || spec.family == TopologyFamily::RandomDigraph;
  spec.seed = seed;
  Topology t = Topology::build(spec);

  nlohmann::ordered_json j;
  j["family"] = family_name(spec.family);
  j["n"] = t.n();
  j["directed"] = t.directed();
  j["p"] = spec.p;
  j["layers"] = spec.layers;
  j["seed"] = spec.seed;
  j["D"] = t.eccentricity();
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& [u, v] : t.arcs()) edges.push_back(nlohmann::ordered_json::array({u, v}));
  j["edges"] = edges;

  if (out_path.empty()) {
    std::cout << j.dump() << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open " + out_path);
    f << j.dump() << "\n";
  }
  return 0;
}

int cmd_run(const std::string& protocol, const std::string& model, const std::string& family,
            int n, int d, double p, int layers, uint64_t seed, int alpha, uint64_t cap,
            const std::string& trace_path) {
  const ProtocolKind kind = protocol_from_name(protocol);
  if (model_from_name(model) != protocol_model(kind))
    throw CLI::ValidationError("--model", "model does not match protocol");

  TopologySpec tspec;
  tspec.family = family.empty()
                     ? (kind == ProtocolKind::SingleHop ? TopologyFamily::Complete
                                                        : TopologyFamily::RandomUndirected)
                     : family_from_name(family);
  tspec.n = n;
  tspec.p = p;
  tspec.layers = layers;
  tspec.directed = tspec.family == TopologyFamily::RandomDigraph;
  tspec.seed = rng::mix2(seed, 0x746f706fULL);
  Topology t = Topology::build(tspec);

  EngineConfig cfg;
  cfg.know_d = d;
  cfg.alpha = alpha;
  cfg.round_cap = cap;

  ContractAuditor auditor;
  auto [outcome, trace] = run_protocol(t, kind, seed, cfg, !trace_path.empty(), &auditor);
  if (!trace_path.empty()) {
    std::ofstream f(trace_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + trace_path);
    f << trace.to_jsonl();
  }
  if (outcome.aborted) std::cerr << "aborted: " << outcome.abort_reason << "\n";

  std::string output_id;
  bool all_equal = true;
  for (const auto& o : outcome.output)
    if (o != outcome.output.front()) all_equal = false;
  if (all_equal && !outcome.output.empty()) output_id = outcome.output.front().str();

  nlohmann::ordered_json j;
  j["protocol"] = protocol_name(kind);
  j["n"] = t.n();
  j["D"] = t.eccentricity();
  j["seed"] = seed;
  j["success"] = outcome.success;
  j["leader_node"] = outcome.leader;
  j["output_id"] = output_id;
  j["rounds"] = outcome.rounds;
  j["iterations"] = outcome.iterations;
  j["aborted"] = outcome.aborted;
  nlohmann::ordered_json vj = nlohmann::ordered_json::object();
  for (const auto& [prim, count] : auditor.counts()) vj[prim] = count;
  j["violations"] = vj;
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& stats_path,
              const std::string& runs_path, int threads) {
  ExperimentSpec spec = ExperimentSpec::parse_file(spec_path);
  SweepResult result = run_sweep(spec, threads);

  std::ofstream sf(stats_path, std::ios::binary);
  if (!sf) throw std::runtime_error("cannot open " + stats_path);
  sf << result.stats_csv(spec);
  if (!runs_path.empty()) {
    std::ofstream rf(runs_path, std::ios::binary);
    if (!rf) throw std::runtime_error("cannot open " + runs_path);
    rf << result.runs_jsonl(spec);
  }
  int total_runs = static_cast<int>(result.runs.size());
  int successes = 0;
  for (const auto& c : result.cells) successes += c.successes;
  std::cerr << "sweep: " << result.cells.size() << " cells, " << total_runs << " runs, "
            << successes << " successes\n";
  return result.threshold_breached ? 2 : 0;
}

int cmd_audit(const std::string& trace_path, const std::string& report_path) {
  std::ifstream f(trace_path);
  if (!f) throw std::runtime_error("cannot open " + trace_path);
  Trace trace = Trace::from_jsonl(f);
  AuditReport report = audit_trace(trace);
  if (report_path.empty()) {
    std::cout << report.to_json() << "\n";
  } else {
    std::ofstream rf(report_path, std::ios::binary);
    if (!rf) throw std::runtime_error("cannot open " + report_path);
    rf << report.to_json() << "\n";
  }
  std::cerr << "audit: " << report.rounds_checked << " rounds, " << report.invocations_checked
            << " invocations, " << report.violations.size() << " violations\n";
  return report.violations.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synchronous-round simulator for multi-hop radio and beep networks"};
  app.require_subcommand(1);

  // topo
  auto* topo = app.add_subcommand("topo", "generate a topology and print it as JSON");
  std::string family = "path", out_path;
  int n = 8, layers = 0;
  double p = 0.25;
  bool directed = false;
  uint64_t seed = 0;
  topo->add_option("--family", family,
                   "path|cycle|star|grid|layered|complete|random-digraph|random-undirected")
      ->required();
  topo->add_option("--n", n, "node count")->required();
  topo->add_option("--p", p, "extra-edge probability (random families)");
  topo->add_option("--layers", layers, "layer count (layered family)");
  topo->add_flag("--directed", directed, "directed variant (cycle)");
  topo->add_option("--seed", seed, "generator seed")->required();
  topo->add_option("--out", out_path, "output file (default stdout)");

  // run
  auto* run = app.add_subcommand("run", "run one seeded protocol instance");
  std::string protocol, model, run_family, trace_path;
  int run_n = 16, run_d = -1, run_layers = 0, alpha = 4;
  double run_p = 0.25;
  uint64_t run_seed = 0, cap = 10000000;
  run->add_option("--protocol", protocol, "expected|whp|beep|single-hop")->required();
  run->add_option("--model", model, "nocd|cd|beep")->required();
  run->add_option("--n", run_n, "node count")->required();
  run->add_option("--d", run_d, "D as announced to the nodes (default: exact)");
  run->add_option("--seed", run_seed, "run seed")->required();
  run->add_option("--alpha", alpha, "broadcast repetition constant");
  run->add_option("--trace", trace_path, "record the trace to this JSONL file");
  run->add_option("--family", run_family, "topology family (default fits the protocol)");
  run->add_option("--p", run_p, "extra-edge probability (random families)");
  run->add_option("--layers", run_layers, "layer count (layered family)");
  run->add_option("--cap", cap, "round cap");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a Monte Carlo experiment grid");
  std::string spec_path, stats_path, runs_path;
  int threads = 0;
  sweep->add_option("--spec", spec_path, "experiment spec file")->required();
  sweep->add_option("--out-stats", stats_path, "stats CSV output")->required();
  sweep->add_option("--out-runs", runs_path, "per-run JSONL output");
  sweep->add_option("--threads", threads, "1 = serial reference; default OpenMP");

  // audit
  auto* audit = app.add_subcommand("audit", "re-check a recorded trace");
  std::string audit_trace_path, report_path;
  audit->add_option("--trace", audit_trace_path, "trace JSONL file")->required();
  audit->add_option("--report", report_path, "report output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (topo->parsed()) return cmd_topo(family, n, p, layers, directed, seed, out_path);
    if (run->parsed())
      return cmd_run(protocol, model, run_family, run_n, run_d, run_p, run_layers, run_seed, alpha,
                     cap, trace_path);
    if (sweep->parsed()) return cmd_sweep(spec_path, stats_path, runs_path, threads);
    if (audit->parsed()) return cmd_audit(audit_trace_path, report_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
