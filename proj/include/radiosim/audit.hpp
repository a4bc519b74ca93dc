#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "radiosim/beep_wave.hpp"
#include "radiosim/engine.hpp"
#include "radiosim/primitives.hpp"
#include "radiosim/trace.hpp"

namespace radiosim {

struct Violation {
  std::string primitive;  // "channel", "pmb", "selection", "search", "beep_wave", "structure"
  std::string kind;
  uint64_t round = 0;
  int node = -1;
  std::string detail;
};

// Per-invocation contract checks, shared by the online auditor and the
// offline trace audit. `outputs` carries only the nodes still running the
// protocol. Each function appends violations for the given invocation.
void check_pmb_contract(const std::vector<TraceSourceRec>& sources,
                        const std::vector<TraceOutputRec>& outputs, uint64_t round,
                        std::vector<Violation>& out);
void check_selection_contract(const std::vector<TraceSourceRec>& sources,
                              const std::vector<TraceOutputRec>& outputs, uint64_t round,
                              std::vector<Violation>& out);
void check_search_contract(const std::vector<TraceSourceRec>& sources,
                           const std::vector<TraceOutputRec>& outputs, uint64_t round,
                           std::vector<Violation>& out);
// first_beep entries are local wave rounds per node (-1 = silent throughout);
// pass std::nullopt distances when first-beep data is unavailable.
void check_beep_wave_contract(const Topology& t, const std::vector<TraceSourceRec>& sources,
                              const std::vector<TraceOutputRec>& outputs,
                              const std::vector<int64_t>* first_beep, uint64_t round,
                              std::vector<Violation>& out);

// Online observer handed to the engine; counts contract violations as the
// primitives complete, without requiring trace recording.
class ContractAuditor {
 public:
  virtual ~ContractAuditor() = default;
  virtual void on_pmb(const Engine& eng, const PayloadMap& sources,
                      const std::vector<Bitstring>& out);
  virtual void on_selection(const Engine& eng, const PayloadMap& candidate_ids,
                            const SelectionResult& r);
  virtual void on_search(const Engine& eng, const PayloadMap& candidate_ids, int ell,
                         const std::vector<Bitstring>& out);
  virtual void on_beep_wave(const Engine& eng, const PayloadMap& sources, int ell,
                            const BeepWaveResult& r);

  const std::vector<Violation>& violations() const { return violations_; }
  std::map<std::string, uint64_t> counts() const;
  bool clean() const { return violations_.empty(); }

 private:
  std::vector<Violation> violations_;
};

struct AuditReport {
  std::vector<Violation> violations;
  uint64_t rounds_checked = 0;
  uint64_t invocations_checked = 0;
  std::map<std::string, uint64_t> counts() const;
  std::string to_json() const;
};

// Offline audit of a recorded trace: re-derives every round's receptions from
// the recorded actions through the channel semantics and re-checks each
// primitive invocation against its contract.
AuditReport audit_trace(const Trace& trace);

}  // namespace radiosim
