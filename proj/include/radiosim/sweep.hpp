#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "radiosim/election.hpp"
#include "radiosim/topology.hpp"

namespace radiosim {

// Parsed from the key=value experiment file. One spec describes one protocol
// over a grid of topology cells; every cell runs `trials` seeded runs.
struct ExperimentSpec {
  ProtocolKind protocol = ProtocolKind::Expected;
  ChannelModel model = ChannelModel::NoCd;
  TopologyFamily family = TopologyFamily::Path;
  bool directed = false;
  std::vector<int> ns;
  std::vector<double> ps = {0.25};
  std::vector<int> layers = {0};
  int d_override = -1;
  int trials = 0;
  uint64_t seed = 0;
  int alpha = 4;
  uint64_t round_cap = 10000000;

  // thresholds checked per cell; breach flips the exit code to 2
  double max_failure_rate = 1.0;
  std::map<std::string, double> max_violation_rate;  // primitive -> runs-with-violation rate

  static ExperimentSpec parse(std::istream& in);
  static ExperimentSpec parse_file(const std::string& path);
  void validate() const;
};

struct RunRecord {
  int cell = 0;
  int trial = 0;
  int n = 0;
  int d = 0;
  double p = 0.0;
  int layers = 0;
  uint64_t seed = 0;
  ProtocolOutcome outcome;
  std::map<std::string, uint64_t> violations;
  std::string output_id;  // common output when all nodes agree, else ""
};

struct CellStats {
  int n = 0;
  double p = 0.0;
  int layers = 0;
  int trials = 0;
  int successes = 0;
  int aborts = 0;
  double mean_rounds = 0.0;
  double std_rounds = 0.0;
  uint64_t min_rounds = 0;
  uint64_t max_rounds = 0;
  double mean_iterations = 0.0;
  // runs with at least one violation of the given primitive
  std::map<std::string, int> violation_runs;
  bool threshold_breached = false;
};

struct SweepResult {
  std::vector<CellStats> cells;
  std::vector<RunRecord> runs;
  bool threshold_breached = false;

  std::string stats_csv(const ExperimentSpec& spec) const;
  std::string runs_jsonl(const ExperimentSpec& spec) const;
};

// Executes every (cell, trial) run. threads == 1 uses the serial reference
// path; anything else hands the run list to OpenMP. Both orders produce
// byte-identical outputs: results are aggregated by index.
SweepResult run_sweep(const ExperimentSpec& spec, int threads = 0);

extern const char* kStatsCsvHeader;

}  // namespace radiosim
