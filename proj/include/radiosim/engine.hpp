#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "radiosim/channel.hpp"
#include "radiosim/rng.hpp"
#include "radiosim/topology.hpp"
#include "radiosim/trace.hpp"

namespace radiosim {

class ContractAuditor;

struct EngineConfig {
  int know_n = 0;                   // n as known to every node (0 = topology n)
  int know_d = -1;                  // D as known to every node (-1 = exact eccentricity)
  int alpha = 4;                    // broadcast repetition constant
  uint64_t round_cap = 10000000;
};

class RoundCapExceeded : public std::runtime_error {
 public:
  explicit RoundCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct TxEntry {
  int node;
  const Bitstring* payload;
};

struct RadioRoundOutcome {
  std::vector<std::pair<int, const Bitstring*>> messages;  // exactly-one receptions
  std::vector<int> collisions;                             // cd model only
};

struct BeepRoundOutcome {
  std::vector<int> heard;  // silent nodes with at least one beeping neighbor
};

// clamped so loop bounds stay positive on tiny instances
int log2_ceil(int n);

// Drives all per-node state machines in lockstep, one synchronous round at a
// time. Owns the round counter, the counter-based randomness, optional trace
// recording, and the primitive tag stack used to segment traces.
class Engine {
 public:
  Engine(const Topology& t, ChannelModel model, uint64_t seed, EngineConfig cfg = {});

  const Topology& topo() const { return *topo_; }
  ChannelModel model() const { return model_; }
  const EngineConfig& config() const { return cfg_; }
  uint64_t round() const { return round_; }
  uint64_t seed() const { return seed_; }
  int know_n() const { return cfg_.know_n; }
  int know_d() const { return cfg_.know_d; }
  int log_n() const { return log_n_; }

  // Draws for the round about to execute; each node advances its own counter.
  uint64_t draw_u64(int node);
  bool draw_pow2(int node, int i) { return (draw_u64(node) >> (64 - i)) == 0; }
  uint64_t draw_below(int node, uint64_t bound);
  bool draw_rational(int node, uint64_t num, uint64_t den);
  Bitstring draw_bits(int node, int len);

  // One radio round: `tx` lists the transmitters (ascending node ids), every
  // other node listens. Returned references stay valid until the next step.
  const RadioRoundOutcome& step_radio(std::span<const TxEntry> tx);
  // One beep round: `beepers` beep (ascending node ids), everyone else is silent.
  const BeepRoundOutcome& step_beep(std::span<const int> beepers);

  // Primitive segmentation. begin/end bracket an invocation; phase/iteration
  // tag the rounds in between.
  uint64_t begin_primitive(std::string_view name, std::vector<TraceSourceRec> sources = {});
  void end_primitive(uint64_t invocation, std::vector<TraceOutputRec> outputs = {});
  void set_phase(std::string_view phase, int iteration = 0);

  void record_into(Trace* trace) { trace_ = trace; }
  Trace* trace() { return trace_; }

  void set_auditor(ContractAuditor* a) { auditor_ = a; }
  ContractAuditor* auditor() { return auditor_; }

  // Nodes that already terminated their protocol stop transmitting, relaying
  // and witnessing; primitives consult this mask.
  void set_active(const std::vector<uint8_t>* active) { active_ = active; }
  bool is_active(int v) const { return active_ == nullptr || (*active_)[static_cast<size_t>(v)] != 0; }

 private:
  void advance_round();
  void record_radio_round(std::span<const TxEntry> tx);
  void record_beep_round();

  const Topology* topo_;
  ChannelModel model_;
  uint64_t seed_;
  EngineConfig cfg_;
  int log_n_;

  uint64_t round_ = 0;
  // lazily reset per-(node, round) draw counters
  std::vector<uint64_t> draw_k_;
  std::vector<uint64_t> draw_round_;

  // scratch for sparse round evaluation
  std::vector<int> rx_count_;
  std::vector<const Bitstring*> rx_payload_;
  std::vector<int> touched_;
  RadioRoundOutcome radio_out_;
  BeepRoundOutcome beep_out_;
  std::vector<uint8_t> beep_flag_;

  Trace* trace_ = nullptr;
  ContractAuditor* auditor_ = nullptr;
  const std::vector<uint8_t>* active_ = nullptr;

  struct TagFrame {
    std::string primitive;
    std::string phase;
    int iteration = 0;
    uint64_t invocation = 0;
  };
  std::vector<TagFrame> tags_;
  uint64_t next_invocation_ = 1;
};

}  // namespace radiosim
