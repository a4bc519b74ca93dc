#pragma once

#include <optional>
#include <vector>

#include "radiosim/bitstring.hpp"
#include "radiosim/engine.hpp"

namespace radiosim {

// Sub-protocol source sets: engaged entry = member of S carrying that payload.
using PayloadMap = std::vector<std::optional<Bitstring>>;

// What each node picked up across one Decay execution: the first payload it
// received alone and the largest (empty = nothing received).
struct DecaySummary {
  std::vector<Bitstring> first;
  std::vector<Bitstring> maxval;

  void reset(int n);
  void merge(const DecaySummary& later);
};

// Durations, computable by every node from (n, D, alpha) before execution.
int decay_rounds(const Engine& eng);                      // log n
int pmb_executions(const Engine& eng);                    // ceil(alpha * (D + log n))
uint64_t pmb_rounds(const Engine& eng);
int selection_id_bits(const Engine& eng);                 // 16 log n
uint64_t selection_rounds(const Engine& eng);
uint64_t search_rounds(const Engine& eng, int ell);

// One Decay execution: in round i (1-based), each member of S transmits its
// payload with probability 2^-i.
DecaySummary decay(Engine& eng, const PayloadMap& sources);

// Four back-to-back Decay executions.
DecaySummary decay4(Engine& eng, const PayloadMap& sources);

// Flooding multi-broadcast: repeated Decay executions where a node starts
// forwarding the first payload it interpreted, from the next execution on.
// Returns each node's kept payload m(v); the empty string means none arrived.
std::vector<Bitstring> partial_multi_broadcast(Engine& eng, const PayloadMap& sources);

struct SelectionResult {
  std::vector<Bitstring> m;      // output string (ID, forwarded witness max, or empty)
  std::vector<uint8_t> b;        // 1 = exactly-one-candidate verdict
  std::vector<uint8_t> witness;  // node saw conflicting IDs during the decay phase
};

// Candidate arbitration: broadcast candidate IDs, probe each ID bit with
// Decay so conflicting IDs surface as witnesses, broadcast the witnesses'
// maxima back. With one candidate every node ends with (its ID, 1); with
// more, (some non-minimum ID, 0).
SelectionResult selection(Engine& eng, const PayloadMap& candidate_ids);

struct SearchResult {
  std::vector<Bitstring> m;                     // per node: ell agreed bits
  std::vector<std::vector<uint8_t>> iter_bits;  // bit agreed in each iteration, per node
};

// Prefix agreement on the highest candidate ID: one broadcast per bit, with
// the participant set recomputed from the agreed prefix every iteration.
SearchResult search(Engine& eng, const PayloadMap& candidate_ids, int ell);

}  // namespace radiosim
