#include "radiosim/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "radiosim/audit.hpp"
#include "radiosim/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace radiosim {

const char* kStatsCsvHeader =
    "protocol,family,model,n,p,layers,d,alpha,trials,successes,success_rate,mean_rounds,"
    "std_rounds,min_rounds,max_rounds,mean_iterations,pmb_violation_runs,"
    "selection_violation_runs,search_violation_runs,beep_wave_violation_runs,aborts";

namespace {

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string cur;
  for (char c : value) {
    if (c == ',') {
      items.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) items.push_back(cur);
  return items;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

ExperimentSpec ExperimentSpec::parse(std::istream& in) {
  ExperimentSpec spec;
  bool model_given = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw std::invalid_argument("spec line " + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r\n");
      const auto b = s.find_last_not_of(" \t\r\n");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "protocol") {
        spec.protocol = protocol_from_name(value);
      } else if (key == "model") {
        spec.model = model_from_name(value);
        model_given = true;
      } else if (key == "family") {
        spec.family = family_from_name(value);
      } else if (key == "directed") {
        spec.directed = value == "true" || value == "1";
      } else if (key == "n") {
        spec.ns.clear();
        for (const auto& s : split_list(value)) spec.ns.push_back(std::stoi(s));
      } else if (key == "p") {
        spec.ps.clear();
        for (const auto& s : split_list(value)) spec.ps.push_back(std::stod(s));
        if (spec.ps.empty()) spec.ps = {0.25};
      } else if (key == "layers") {
        spec.layers.clear();
        for (const auto& s : split_list(value)) spec.layers.push_back(std::stoi(s));
        if (spec.layers.empty()) spec.layers = {0};
      } else if (key == "d") {
        spec.d_override = std::stoi(value);
      } else if (key == "trials") {
        spec.trials = std::stoi(value);
      } else if (key == "seed") {
        spec.seed = std::stoull(value);
      } else if (key == "alpha") {
        spec.alpha = std::stoi(value);
      } else if (key == "round_cap") {
        spec.round_cap = std::stoull(value);
      } else if (key == "max_failure_rate") {
        spec.max_failure_rate = std::stod(value);
      } else if (key == "max_pmb_violation_rate") {
        spec.max_violation_rate["pmb"] = std::stod(value);
      } else if (key == "max_selection_violation_rate") {
        spec.max_violation_rate["selection"] = std::stod(value);
      } else if (key == "max_search_violation_rate") {
        spec.max_violation_rate["search"] = std::stod(value);
      } else if (key == "max_beep_wave_violation_rate") {
        spec.max_violation_rate["beep_wave"] = std::stod(value);
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      throw std::invalid_argument("spec line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!model_given) spec.model = protocol_model(spec.protocol);
  spec.validate();
  return spec;
}

ExperimentSpec ExperimentSpec::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open spec file: " + path);
  return parse(f);
}

void ExperimentSpec::validate() const {
  if (model != protocol_model(protocol))
    throw std::invalid_argument("spec: model does not match protocol");
  if (trials < 0) throw std::invalid_argument("spec: negative trials");
  if (protocol == ProtocolKind::SingleHop && family != TopologyFamily::Complete)
    throw std::invalid_argument("spec: single-hop needs the complete family");
  if (protocol == ProtocolKind::Beep &&
      (family == TopologyFamily::RandomDigraph || directed))
    throw std::invalid_argument("spec: beep protocol needs an undirected family");
}

namespace {

struct Cell {
  int n;
  double p;
  int layers;
};

std::vector<Cell> grid_cells(const ExperimentSpec& spec) {
  std::vector<Cell> cells;
  for (int n : spec.ns)
    for (double p : spec.ps)
      for (int l : spec.layers) cells.push_back({n, p, l});
  return cells;
}

RunRecord execute_run(const ExperimentSpec& spec, const Cell& cell, int cell_idx, int trial) {
  RunRecord rec;
  rec.cell = cell_idx;
  rec.trial = trial;
  rec.n = cell.n;
  rec.p = cell.p;
  rec.layers = cell.layers;
  rec.seed = rng::mix3(spec.seed, static_cast<uint64_t>(cell_idx), static_cast<uint64_t>(trial));

  TopologySpec tspec;
  tspec.family = spec.family;
  tspec.n = cell.n;
  tspec.directed = spec.directed || spec.family == TopologyFamily::RandomDigraph;
  tspec.p = cell.p;
  tspec.layers = cell.layers;
  tspec.seed = rng::mix2(rec.seed, 0x746f706fULL);
  Topology topo = Topology::build(tspec);
  rec.d = topo.eccentricity();

  EngineConfig cfg;
  cfg.know_d = spec.d_override;
  cfg.alpha = spec.alpha;
  cfg.round_cap = spec.round_cap;

  ContractAuditor auditor;
  auto [outcome, trace] = run_protocol(topo, spec.protocol, rec.seed, cfg, false, &auditor);
  rec.outcome = std::move(outcome);
  rec.violations = auditor.counts();

  bool all_equal = true;
  for (const auto& o : rec.outcome.output)
    if (o != rec.outcome.output.front()) all_equal = false;
  if (all_equal && !rec.outcome.output.empty()) rec.output_id = rec.outcome.output.front().str();
  return rec;
}

}  // namespace

SweepResult run_sweep(const ExperimentSpec& spec, int threads) {
  const std::vector<Cell> cells = grid_cells(spec);
  SweepResult result;
  result.runs.resize(cells.size() * static_cast<size_t>(spec.trials));

  const auto total = static_cast<int64_t>(result.runs.size());
  if (threads == 1) {
    for (int64_t i = 0; i < total; ++i) {
      const int cell_idx = static_cast<int>(i / spec.trials);
      const int trial = static_cast<int>(i % spec.trials);
      result.runs[static_cast<size_t>(i)] =
          execute_run(spec, cells[static_cast<size_t>(cell_idx)], cell_idx, trial);
    }
  } else {
#ifdef _OPENMP
    if (threads > 1) omp_set_num_threads(threads);
#pragma omp parallel for schedule(dynamic)
#endif
    for (int64_t i = 0; i < total; ++i) {
      const int cell_idx = static_cast<int>(i / spec.trials);
      const int trial = static_cast<int>(i % spec.trials);
      result.runs[static_cast<size_t>(i)] =
          execute_run(spec, cells[static_cast<size_t>(cell_idx)], cell_idx, trial);
    }
  }

  // aggregate in index order, independent of the execution schedule
  for (size_t c = 0; c < cells.size(); ++c) {
    CellStats st;
    st.n = cells[c].n;
    st.p = cells[c].p;
    st.layers = cells[c].layers;
    st.trials = spec.trials;
    double sum = 0.0, sum_sq = 0.0, iter_sum = 0.0;
    st.min_rounds = UINT64_MAX;
    for (int t = 0; t < spec.trials; ++t) {
      const RunRecord& r = result.runs[c * static_cast<size_t>(spec.trials) + static_cast<size_t>(t)];
      if (r.outcome.success) ++st.successes;
      if (r.outcome.aborted) ++st.aborts;
      const auto rounds = static_cast<double>(r.outcome.rounds);
      sum += rounds;
      sum_sq += rounds * rounds;
      iter_sum += static_cast<double>(r.outcome.iterations);
      st.min_rounds = std::min(st.min_rounds, r.outcome.rounds);
      st.max_rounds = std::max(st.max_rounds, r.outcome.rounds);
      for (const auto& [prim, count] : r.violations)
        if (count > 0) ++st.violation_runs[prim];
    }
    if (spec.trials > 0) {
      st.mean_rounds = sum / spec.trials;
      st.mean_iterations = iter_sum / spec.trials;
      const double var = std::max(0.0, sum_sq / spec.trials - st.mean_rounds * st.mean_rounds);
      st.std_rounds = std::sqrt(var);
      const double fail_rate = 1.0 - static_cast<double>(st.successes) / spec.trials;
      if (fail_rate > spec.max_failure_rate) st.threshold_breached = true;
      for (const auto& [prim, limit] : spec.max_violation_rate) {
        const auto it = st.violation_runs.find(prim);
        const int bad = it == st.violation_runs.end() ? 0 : it->second;
        if (static_cast<double>(bad) / spec.trials > limit) st.threshold_breached = true;
      }
    } else {
      st.min_rounds = 0;
    }
    result.threshold_breached = result.threshold_breached || st.threshold_breached;
    result.cells.push_back(st);
  }
  return result;
}

std::string SweepResult::stats_csv(const ExperimentSpec& spec) const {
  std::string out = kStatsCsvHeader;
  out.push_back('\n');
  for (const auto& st : cells) {
    std::ostringstream row;
    auto run_count = [&st](const char* prim) {
      const auto it = st.violation_runs.find(prim);
      return it == st.violation_runs.end() ? 0 : it->second;
    };
    row << protocol_name(spec.protocol) << ',' << family_name(spec.family) << ','
        << model_name(spec.model) << ',' << st.n << ',' << fmt_double(st.p) << ',' << st.layers
        << ',' << (spec.d_override >= 0 ? spec.d_override : -1) << ',' << spec.alpha << ','
        << st.trials << ',' << st.successes << ','
        << fmt_double(st.trials > 0 ? static_cast<double>(st.successes) / st.trials : 0.0) << ','
        << fmt_double(st.mean_rounds) << ',' << fmt_double(st.std_rounds) << ',' << st.min_rounds
        << ',' << st.max_rounds << ',' << fmt_double(st.mean_iterations) << ','
        << run_count("pmb") << ',' << run_count("selection") << ',' << run_count("search") << ','
        << run_count("beep_wave") << ',' << st.aborts;
    out += row.str();
    out.push_back('\n');
  }
  return out;
}

std::string SweepResult::runs_jsonl(const ExperimentSpec& spec) const {
  std::string out;
  for (const auto& r : runs) {
    nlohmann::ordered_json j;
    j["protocol"] = protocol_name(spec.protocol);
    j["n"] = r.n;
    j["D"] = r.d;
    j["seed"] = r.seed;
    j["success"] = r.outcome.success;
    j["leader_node"] = r.outcome.leader;
    j["output_id"] = r.output_id;
    j["rounds"] = r.outcome.rounds;
    j["iterations"] = r.outcome.iterations;
    j["family"] = family_name(spec.family);
    j["model"] = model_name(spec.model);
    j["p"] = r.p;
    j["layers"] = r.layers;
    j["alpha"] = spec.alpha;
    j["cell"] = r.cell;
    j["trial"] = r.trial;
    j["aborted"] = r.outcome.aborted;
    nlohmann::ordered_json vj = nlohmann::ordered_json::object();
    for (const auto& [prim, count] : r.violations) vj[prim] = count;
    j["violations"] = vj;
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace radiosim
