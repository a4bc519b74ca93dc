#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "radiosim/audit.hpp"
#include "radiosim/engine.hpp"
#include "radiosim/primitives.hpp"
#include "radiosim/trace.hpp"

namespace radiosim {

enum class ProtocolKind { Expected, Whp, Beep, SingleHop };

const char* protocol_name(ProtocolKind k);
ProtocolKind protocol_from_name(const std::string& name);
ChannelModel protocol_model(ProtocolKind k);

struct ProtocolOutcome {
  std::vector<Bitstring> output;   // empty = node never produced an output
  std::vector<uint8_t> elected;    // output equals the node's own drawn ID and it was a candidate
  uint64_t rounds = 0;
  uint64_t iterations = 0;
  bool success = false;            // all outputs identical and exactly one node elected
  bool aborted = false;
  std::string abort_reason;
  int leader = -1;
};

// Test seam: when set and returning true for an iteration, the produced map
// replaces that iteration's random candidate draw. Looping protocols pass
// 1-based iteration numbers; the one-shot draw asks with iteration 0.
using CandidateOverride = std::function<bool(uint64_t iteration, PayloadMap& candidates)>;

// Repeated 1/n candidate sampling with 16 log n-bit IDs, arbitrated by
// selection; terminates when the exactly-one verdict arrives.
ProtocolOutcome elect_expected(Engine& eng, const CandidateOverride& override_candidates = {});

// One-shot (4 log n)/n sampling with log n-bit IDs, a prefix search to thin
// the field, then a bounded run of selections that shed below-maximum IDs.
// Exhausting the loop leaves the run marked unsuccessful.
ProtocolOutcome elect_whp(Engine& eng, const CandidateOverride& override_candidates = {});

// Beep-model election: candidates wave constant-weight IDs, any node that
// decodes more than log n ones waves a witness flag, silence means done.
ProtocolOutcome elect_beep(Engine& eng, const CandidateOverride& override_candidates = {});

// Single-hop reference on a complete graph with collision detection: one
// transmit round, one echo round telling the candidate whether it was alone.
ProtocolOutcome elect_single_hop(Engine& eng, const CandidateOverride& override_candidates = {});

ProtocolOutcome run_election(Engine& eng, ProtocolKind kind,
                             const CandidateOverride& override_candidates = {});

// Builds the engine, drives the protocol, and (optionally) records the trace.
// A round-cap overrun is reported through `aborted`, not thrown.
std::pair<ProtocolOutcome, Trace> run_protocol(const Topology& t, ProtocolKind kind, uint64_t seed,
                                               EngineConfig cfg = {}, bool record_trace = false,
                                               ContractAuditor* auditor = nullptr);

}  // namespace radiosim
