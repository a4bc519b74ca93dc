#include "radiosim/engine.hpp"

#include <algorithm>

namespace radiosim {

int log2_ceil(int n) {
  if (n <= 2) return 1;
  int bits = 0;
  unsigned v = static_cast<unsigned>(n - 1);
  while (v > 0) {
    v >>= 1;
    ++bits;
  }
  return bits;
}

Engine::Engine(const Topology& t, ChannelModel model, uint64_t seed, EngineConfig cfg)
    : topo_(&t), model_(model), seed_(seed), cfg_(cfg) {
  if (cfg_.know_n <= 0) cfg_.know_n = t.n();
  if (cfg_.know_d < 0) cfg_.know_d = t.eccentricity();
  if (cfg_.alpha <= 0) throw std::invalid_argument("engine: alpha must be positive");
  log_n_ = log2_ceil(cfg_.know_n);
  draw_k_.assign(static_cast<size_t>(t.n()), 0);
  draw_round_.assign(static_cast<size_t>(t.n()), 0);
  rx_count_.assign(static_cast<size_t>(t.n()), 0);
  rx_payload_.assign(static_cast<size_t>(t.n()), nullptr);
  beep_flag_.assign(static_cast<size_t>(t.n()), 0);
}

uint64_t Engine::draw_u64(int node) {
  // one finalizer over a (seed, node, round, draw) counter key; the mix
  // constants keep distinct keys from aliasing
  const auto i = static_cast<size_t>(node);
  if (draw_round_[i] != round_ + 1) {
    draw_round_[i] = round_ + 1;
    draw_k_[i] = 0;
  }
  const uint64_t k = draw_k_[i]++;
  return rng::fmix64(seed_ + 0x9e3779b97f4a7c15ULL * (static_cast<uint64_t>(node) + 1) +
                     0xc2b2ae3d27d4eb4fULL * (round_ + 1) + 0xd6e8feb86659fd93ULL * (k + 1));
}

uint64_t Engine::draw_below(int node, uint64_t bound) {
  if (bound <= 1) return 0;
  const uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    uint64_t x = draw_u64(node);
    if (x >= threshold) return x % bound;
  }
}

bool Engine::draw_rational(int node, uint64_t num, uint64_t den) {
  if (num >= den) return true;
  return draw_below(node, den) < num;
}

Bitstring Engine::draw_bits(int node, int len) {
  Bitstring b = Bitstring::zeros(len);
  uint64_t word = 0;
  for (int i = 0; i < len; ++i) {
    if (i % 64 == 0) word = draw_u64(node);
    b.set_bit(i, static_cast<int>((word >> (i % 64)) & 1));
  }
  return b;
}

void Engine::advance_round() {
  ++round_;
  if (round_ > cfg_.round_cap)
    throw RoundCapExceeded("round cap " + std::to_string(cfg_.round_cap) + " exceeded at round " +
                           std::to_string(round_));
}

const RadioRoundOutcome& Engine::step_radio(std::span<const TxEntry> tx) {
  if (model_ == ChannelModel::Beep)
    throw std::invalid_argument("engine: radio round under beep semantics");
  radio_out_.messages.clear();
  radio_out_.collisions.clear();
  for (int v : touched_) {
    rx_count_[static_cast<size_t>(v)] = 0;
    rx_payload_[static_cast<size_t>(v)] = nullptr;
  }
  touched_.clear();
  for (const TxEntry& e : tx) {
    for (int v : topo_->out(e.node)) {
      if (rx_count_[static_cast<size_t>(v)] == 0) touched_.push_back(v);
      ++rx_count_[static_cast<size_t>(v)];
      rx_payload_[static_cast<size_t>(v)] = e.payload;
    }
  }
  std::sort(touched_.begin(), touched_.end());
  // transmitters hear nothing, even when a neighbor also transmitted
  size_t skip = 0;
  for (int v : touched_) {
    while (skip < tx.size() && tx[skip].node < v) ++skip;
    if (skip < tx.size() && tx[skip].node == v) continue;
    const int c = rx_count_[static_cast<size_t>(v)];
    if (c == 1)
      radio_out_.messages.emplace_back(v, rx_payload_[static_cast<size_t>(v)]);
    else if (c > 1 && model_ == ChannelModel::Cd)
      radio_out_.collisions.push_back(v);
  }
  if (trace_) record_radio_round(tx);
  advance_round();
  return radio_out_;
}

const BeepRoundOutcome& Engine::step_beep(std::span<const int> beepers) {
  if (model_ != ChannelModel::Beep)
    throw std::invalid_argument("engine: beep round under radio semantics");
  beep_out_.heard.clear();
  for (int b : beepers) beep_flag_[static_cast<size_t>(b)] = 1;
  for (const int b : beepers)
    for (int v : topo_->out(b))
      if (beep_flag_[static_cast<size_t>(v)] == 0) {
        beep_flag_[static_cast<size_t>(v)] = 2;  // heard marker, dedup
        beep_out_.heard.push_back(v);
      }
  std::sort(beep_out_.heard.begin(), beep_out_.heard.end());
  if (trace_) record_beep_round();
  for (int b : beepers) beep_flag_[static_cast<size_t>(b)] = 0;
  for (int v : beep_out_.heard) beep_flag_[static_cast<size_t>(v)] = 0;
  advance_round();
  return beep_out_;
}

void Engine::record_radio_round(std::span<const TxEntry> tx) {
  TraceRound r;
  r.round = round_;
  if (!tags_.empty()) {
    r.primitive = tags_.back().primitive;
    r.phase = tags_.back().phase;
    r.iteration = tags_.back().iteration;
    r.invocation = tags_.back().invocation;
  }
  const int n = topo_->n();
  r.actions.reserve(static_cast<size_t>(n));
  r.receptions.reserve(static_cast<size_t>(n));
  size_t ti = 0;
  for (int v = 0; v < n; ++v) {
    if (ti < tx.size() && tx[ti].node == v) {
      r.actions.push_back({v, ActionKind::Transmit, *tx[ti].payload});
      ++ti;
      r.receptions.push_back({v, ReceptionKind::Silence, {}});
      continue;
    }
    r.actions.push_back({v, ActionKind::Listen, {}});
    const int c = rx_count_[static_cast<size_t>(v)];
    if (c == 1)
      r.receptions.push_back({v, ReceptionKind::Message, *rx_payload_[static_cast<size_t>(v)]});
    else if (c > 1 && model_ == ChannelModel::Cd)
      r.receptions.push_back({v, ReceptionKind::Collision, {}});
    else
      r.receptions.push_back({v, ReceptionKind::Silence, {}});
  }
  trace_->lines.emplace_back(std::move(r));
}

void Engine::record_beep_round() {
  TraceRound r;
  r.round = round_;
  if (!tags_.empty()) {
    r.primitive = tags_.back().primitive;
    r.phase = tags_.back().phase;
    r.iteration = tags_.back().iteration;
    r.invocation = tags_.back().invocation;
  }
  const int n = topo_->n();
  for (int v = 0; v < n; ++v) {
    const bool beeping = beep_flag_[static_cast<size_t>(v)] == 1;
    r.actions.push_back({v, beeping ? ActionKind::Beep : ActionKind::Silent, {}});
    ReceptionKind k = ReceptionKind::NoBeep;
    if (!beeping && beep_flag_[static_cast<size_t>(v)] == 2) k = ReceptionKind::BeepHeard;
    r.receptions.push_back({v, k, {}});
  }
  trace_->lines.emplace_back(std::move(r));
}

uint64_t Engine::begin_primitive(std::string_view name, std::vector<TraceSourceRec> sources) {
  TagFrame f;
  f.primitive = std::string(name);
  f.invocation = next_invocation_++;
  tags_.push_back(f);
  if (trace_) {
    TraceEvent e;
    e.begin = true;
    e.invocation = f.invocation;
    e.primitive = f.primitive;
    e.round = round_;
    e.sources = std::move(sources);
    trace_->lines.emplace_back(std::move(e));
  }
  return tags_.back().invocation;
}

void Engine::end_primitive(uint64_t invocation, std::vector<TraceOutputRec> outputs) {
  if (tags_.empty() || tags_.back().invocation != invocation)
    throw std::logic_error("engine: mismatched primitive begin/end");
  if (trace_) {
    TraceEvent e;
    e.begin = false;
    e.invocation = invocation;
    e.primitive = tags_.back().primitive;
    e.round = round_;
    e.outputs = std::move(outputs);
    trace_->lines.emplace_back(std::move(e));
  }
  tags_.pop_back();
}

void Engine::set_phase(std::string_view phase, int iteration) {
  if (tags_.empty()) return;
  tags_.back().phase = std::string(phase);
  tags_.back().iteration = iteration;
}

}  // namespace radiosim
