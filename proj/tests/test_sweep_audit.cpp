#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "radiosim/audit.hpp"
#include "radiosim/sweep.hpp"

using namespace radiosim;

namespace {

ExperimentSpec spec_from(const std::string& text) {
  std::istringstream in(text);
  return ExperimentSpec::parse(in);
}

Trace record_run(ProtocolKind kind, uint64_t seed, TopologyFamily family = TopologyFamily::RandomUndirected,
                 int n = 10) {
  TopologySpec s;
  s.family = family;
  s.n = n;
  s.p = 0.3;
  s.seed = 77;
  Topology t = Topology::build(s);
  auto [outcome, trace] = run_protocol(t, kind, seed, {}, true);
  return trace;
}

}  // namespace

TEST_CASE("spec parsing: defaults, lists, comments, and rejects") {
  ExperimentSpec s = spec_from(
      "# comment\n"
      "protocol = expected\n"
      "family = grid\n"
      "n = 9, 16\n"
      "trials = 3\n"
      "seed = 42\n");
  CHECK(s.model == ChannelModel::NoCd);
  CHECK(s.ns == std::vector<int>{9, 16});
  CHECK(s.trials == 3);

  CHECK_THROWS_AS(spec_from("protocol = beep\nmodel = nocd\n"), std::invalid_argument);
  CHECK_THROWS_AS(spec_from("nonsense = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(spec_from("protocol expected\n"), std::invalid_argument);
  CHECK_THROWS_AS(spec_from("protocol = single-hop\nfamily = path\n"), std::invalid_argument);
}

TEST_CASE("an empty grid produces a header-only stats file") {
  ExperimentSpec s = spec_from("protocol = expected\nfamily = path\ntrials = 5\nseed = 1\n");
  CHECK(s.ns.empty());
  SweepResult r = run_sweep(s, 1);
  CHECK(r.runs.empty());
  CHECK(r.stats_csv(s) == std::string(kStatsCsvHeader) + "\n");
}

TEST_CASE("identical specs give byte-identical outputs, serial or parallel") {
  const std::string text =
      "protocol = expected\n"
      "family = random-undirected\n"
      "n = 8, 12\n"
      "p = 0.25\n"
      "trials = 12\n"
      "seed = 99\n";
  ExperimentSpec s = spec_from(text);
  SweepResult serial_a = run_sweep(s, 1);
  SweepResult serial_b = run_sweep(s, 1);
  SweepResult parallel = run_sweep(s, 0);
  CHECK(serial_a.stats_csv(s) == serial_b.stats_csv(s));
  CHECK(serial_a.runs_jsonl(s) == serial_b.runs_jsonl(s));
  CHECK(serial_a.stats_csv(s) == parallel.stats_csv(s));
  CHECK(serial_a.runs_jsonl(s) == parallel.runs_jsonl(s));
  // seeds are per (cell, trial), derived from the root, and all distinct
  CHECK(serial_a.runs.size() == 24);
  for (const auto& run : serial_a.runs)
    CHECK(run.seed == rng::mix3(99, static_cast<uint64_t>(run.cell), static_cast<uint64_t>(run.trial)));
}

TEST_CASE("sweep statistics add up") {
  ExperimentSpec s = spec_from(
      "protocol = beep\n"
      "family = path\n"
      "n = 9\n"
      "trials = 20\n"
      "seed = 5\n");
  SweepResult r = run_sweep(s, 0);
  REQUIRE(r.cells.size() == 1);
  const CellStats& c = r.cells[0];
  CHECK(c.trials == 20);
  CHECK(c.successes + (20 - c.successes) == 20);
  CHECK(c.min_rounds <= c.max_rounds);
  CHECK(c.mean_rounds >= static_cast<double>(c.min_rounds));
  CHECK(c.mean_rounds <= static_cast<double>(c.max_rounds));
  CHECK(c.mean_iterations >= 1.0);
}

TEST_CASE("a round cap far too small turns into counted aborts, not crashes") {
  ExperimentSpec s = spec_from(
      "protocol = expected\n"
      "family = path\n"
      "n = 12\n"
      "trials = 4\n"
      "seed = 3\n"
      "round_cap = 10\n"
      "max_failure_rate = 0.5\n");
  SweepResult r = run_sweep(s, 1);
  CHECK(r.cells[0].aborts == 4);
  CHECK(r.cells[0].successes == 0);
  CHECK(r.threshold_breached);  // 100% failures > 50%
}

TEST_CASE("a clean recorded trace audits clean") {
  Trace trace = record_run(ProtocolKind::Expected, 12);
  AuditReport report = audit_trace(trace);
  CHECK(report.violations.empty());
  CHECK(report.rounds_checked > 0);
  CHECK(report.invocations_checked > 0);
  // beep protocol traces audit clean too
  Trace btrace = record_run(ProtocolKind::Beep, 13);
  AuditReport breport = audit_trace(btrace);
  CHECK(breport.violations.empty());
}

TEST_CASE("one corrupted reception is flagged exactly once, at its round") {
  Trace trace = record_run(ProtocolKind::Expected, 21);
  uint64_t target_round = 0;
  bool done = false;
  for (auto& line : trace.lines) {
    if (done || !std::holds_alternative<TraceRound>(line)) continue;
    auto& r = std::get<TraceRound>(line);
    if (r.round != 5) continue;
    auto& rec = r.receptions[3];
    rec.kind = rec.kind == ReceptionKind::Silence ? ReceptionKind::Message : ReceptionKind::Silence;
    if (rec.kind == ReceptionKind::Message) rec.payload = Bitstring("1");
    target_round = r.round;
    done = true;
  }
  REQUIRE(done);
  AuditReport report = audit_trace(trace);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].primitive == "channel");
  CHECK(report.violations[0].round == target_round);
  CHECK(report.violations[0].node == 3);
}

TEST_CASE("a selection where everyone outputs the minimum is flagged") {
  // synthesized contract breach: two candidates, all nodes output the lower ID
  std::vector<TraceSourceRec> sources{{0, Bitstring("0001")}, {1, Bitstring("1000")}};
  std::vector<TraceOutputRec> outputs;
  for (int v = 0; v < 4; ++v) outputs.push_back({v, Bitstring("0001"), 0, -1});
  std::vector<Violation> violations;
  check_selection_contract(sources, outputs, 9, violations);
  REQUIRE(violations.size() == 4);
  for (const auto& v : violations) CHECK(v.kind == "minimum_survived");

  // and the same fixture through a full synthesized trace
  Trace trace = record_run(ProtocolKind::Expected, 23);
  for (auto& line : trace.lines) {
    if (!std::holds_alternative<TraceEvent>(line)) continue;
    auto& e = std::get<TraceEvent>(line);
    if (e.primitive != "selection") continue;
    if (e.begin) {
      e.sources.clear();
      e.sources.push_back({0, Bitstring("0001")});
      e.sources.push_back({1, Bitstring("1000")});
    } else {
      for (auto& o : e.outputs) {
        o.m = Bitstring("0001");
        o.b = 0;
      }
    }
  }
  AuditReport report = audit_trace(trace);
  int min_flags = 0;
  for (const auto& v : report.violations)
    if (v.kind == "minimum_survived") ++min_flags;
  CHECK(min_flags > 0);
}

TEST_CASE("the jsonl run records carry the documented fields in order") {
  ExperimentSpec s = spec_from(
      "protocol = expected\n"
      "family = path\n"
      "n = 6\n"
      "trials = 1\n"
      "seed = 8\n");
  SweepResult r = run_sweep(s, 1);
  const std::string line = r.runs_jsonl(s);
  CHECK(line.find("{\"protocol\":\"expected\",\"n\":6,\"D\":5,\"seed\":") == 0);
  CHECK(line.find("\"success\":") != std::string::npos);
  CHECK(line.find("\"leader_node\":") != std::string::npos);
  CHECK(line.find("\"output_id\":") != std::string::npos);
  CHECK(line.find("\"rounds\":") != std::string::npos);
  CHECK(line.find("\"iterations\":") != std::string::npos);
}

TEST_CASE("audit flags structural damage") {
  Trace trace = record_run(ProtocolKind::Expected, 29);
  // drop one node's action from some round
  for (auto& line : trace.lines) {
    if (!std::holds_alternative<TraceRound>(line)) continue;
    auto& r = std::get<TraceRound>(line);
    r.actions.pop_back();
    break;
  }
  AuditReport report = audit_trace(trace);
  bool structural = false;
  for (const auto& v : report.violations)
    if (v.primitive == "structure") structural = true;
  CHECK(structural);
}
