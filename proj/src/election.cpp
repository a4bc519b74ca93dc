#include "radiosim/election.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radiosim/beep_wave.hpp"

namespace radiosim {

const char* protocol_name(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::Expected: return "expected";
    case ProtocolKind::Whp: return "whp";
    case ProtocolKind::Beep: return "beep";
    case ProtocolKind::SingleHop: return "single-hop";
  }
  return "?";
}

ProtocolKind protocol_from_name(const std::string& name) {
  if (name == "expected") return ProtocolKind::Expected;
  if (name == "whp") return ProtocolKind::Whp;
  if (name == "beep") return ProtocolKind::Beep;
  if (name == "single-hop") return ProtocolKind::SingleHop;
  throw std::invalid_argument("unknown protocol: " + name);
}

ChannelModel protocol_model(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::Expected:
    case ProtocolKind::Whp: return ChannelModel::NoCd;
    case ProtocolKind::Beep: return ChannelModel::Beep;
    case ProtocolKind::SingleHop: return ChannelModel::Cd;
  }
  return ChannelModel::NoCd;
}

namespace {

bool any_active(const std::vector<uint8_t>& active) {
  return std::any_of(active.begin(), active.end(), [](uint8_t a) { return a != 0; });
}

void finalize(const Engine& eng, ProtocolOutcome& out) {
  out.rounds = eng.round();
  int elected_count = 0;
  int leader = -1;
  bool all_equal = true;
  for (size_t v = 0; v < out.output.size(); ++v) {
    if (out.elected[v]) {
      ++elected_count;
      leader = static_cast<int>(v);
    }
    if (out.output[v] != out.output[0]) all_equal = false;
  }
  out.success = !out.aborted && all_equal && elected_count == 1 && !out.output[0].empty();
  out.leader = out.success ? leader : -1;
}

// adapter so the constant-weight sampler draws through the engine's
// per-(node, round) counters
class NodeDraws {
 public:
  NodeDraws(Engine& eng, int node) : eng_(eng), node_(node) {}
  uint64_t below(uint64_t bound) { return eng_.draw_below(node_, bound); }

 private:
  Engine& eng_;
  int node_;
};

Bitstring engine_constant_weight_id(Engine& eng, int node, int length, int weight) {
  std::vector<int> pos(static_cast<size_t>(length));
  for (int i = 0; i < length; ++i) pos[static_cast<size_t>(i)] = i;
  Bitstring b = Bitstring::zeros(length);
  for (int j = 0; j < weight; ++j) {
    const int k = j + static_cast<int>(eng.draw_below(node, static_cast<uint64_t>(length - j)));
    std::swap(pos[static_cast<size_t>(j)], pos[static_cast<size_t>(k)]);
    b.set_bit(pos[static_cast<size_t>(j)], 1);
  }
  return b;
}

}  // namespace

ProtocolOutcome elect_expected(Engine& eng, const CandidateOverride& override_candidates) {
  if (eng.model() != ChannelModel::NoCd)
    throw std::invalid_argument("elect_expected: requires radio semantics without collision detection");
  const int n = eng.topo().n();
  ProtocolOutcome out;
  out.output.assign(static_cast<size_t>(n), Bitstring());
  out.elected.assign(static_cast<size_t>(n), 0);
  std::vector<uint8_t> active(static_cast<size_t>(n), 1);
  eng.set_active(&active);

  const int id_bits = selection_id_bits(eng);
  PayloadMap candidates(static_cast<size_t>(n));
  while (any_active(active)) {
    ++out.iterations;
    for (auto& c : candidates) c.reset();
    if (!override_candidates || !override_candidates(out.iterations, candidates)) {
      for (int v = 0; v < n; ++v)
        if (active[static_cast<size_t>(v)] &&
            eng.draw_rational(v, 1, static_cast<uint64_t>(eng.know_n())))
          candidates[static_cast<size_t>(v)] = eng.draw_bits(v, id_bits);
    }
    SelectionResult r = selection(eng, candidates);
    for (int v = 0; v < n; ++v) {
      const size_t i = static_cast<size_t>(v);
      if (!active[i] || r.b[i] != 1) continue;
      out.output[i] = r.m[i];
      out.elected[i] = candidates[i] && *candidates[i] == r.m[i];
      active[i] = 0;
    }
  }
  eng.set_active(nullptr);
  finalize(eng, out);
  return out;
}

ProtocolOutcome elect_whp(Engine& eng, const CandidateOverride& override_candidates) {
  if (eng.model() != ChannelModel::NoCd)
    throw std::invalid_argument("elect_whp: requires radio semantics without collision detection");
  const int n = eng.topo().n();
  const int log_n = eng.log_n();
  const int ell = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(log_n))));
  const int loops = static_cast<int>(std::ceil(3.0 * std::sqrt(static_cast<double>(log_n))));

  ProtocolOutcome out;
  out.output.assign(static_cast<size_t>(n), Bitstring());
  out.elected.assign(static_cast<size_t>(n), 0);
  std::vector<uint8_t> active(static_cast<size_t>(n), 1);
  eng.set_active(&active);

  PayloadMap candidates(static_cast<size_t>(n));
  if (!override_candidates || !override_candidates(0, candidates)) {
    const auto num = static_cast<uint64_t>(std::min(4 * log_n, eng.know_n()));
    for (int v = 0; v < n; ++v)
      if (eng.draw_rational(v, num, static_cast<uint64_t>(eng.know_n())))
        candidates[static_cast<size_t>(v)] = eng.draw_bits(v, log_n);
  }

  SearchResult sr = search(eng, candidates, ell);
  for (int v = 0; v < n; ++v) {
    auto& c = candidates[static_cast<size_t>(v)];
    if (c && c->prefix(ell) != sr.m[static_cast<size_t>(v)]) c.reset();
  }

  for (int k = 0; k < loops && any_active(active); ++k) {
    ++out.iterations;
    SelectionResult r = selection(eng, candidates);
    for (int v = 0; v < n; ++v) {
      const size_t i = static_cast<size_t>(v);
      if (!active[i]) continue;
      if (r.b[i] == 1) {
        out.output[i] = r.m[i];
        out.elected[i] = candidates[i] && *candidates[i] == r.m[i];
        active[i] = 0;
      } else if (candidates[i] && *candidates[i] < r.m[i]) {
        candidates[i].reset();  // a higher ID is out there
      }
    }
  }
  eng.set_active(nullptr);
  finalize(eng, out);
  return out;
}

ProtocolOutcome elect_beep(Engine& eng, const CandidateOverride& override_candidates) {
  if (eng.model() != ChannelModel::Beep)
    throw std::invalid_argument("elect_beep: requires beep semantics");
  if (eng.topo().directed())
    throw std::invalid_argument("elect_beep: requires an undirected topology");
  const int n = eng.topo().n();
  const int log_n = eng.log_n();
  const int id_bits = 4 * log_n;

  ProtocolOutcome out;
  out.output.assign(static_cast<size_t>(n), Bitstring());
  out.elected.assign(static_cast<size_t>(n), 0);
  std::vector<uint8_t> active(static_cast<size_t>(n), 1);
  eng.set_active(&active);

  const Bitstring flag("1");
  PayloadMap candidates(static_cast<size_t>(n));
  PayloadMap witnesses(static_cast<size_t>(n));
  while (any_active(active)) {
    ++out.iterations;
    for (auto& c : candidates) c.reset();
    if (!override_candidates || !override_candidates(out.iterations, candidates)) {
      for (int v = 0; v < n; ++v)
        if (active[static_cast<size_t>(v)] &&
            eng.draw_rational(v, 1, static_cast<uint64_t>(eng.know_n())))
          candidates[static_cast<size_t>(v)] = engine_constant_weight_id(eng, v, id_bits, log_n);
    }
    BeepWaveResult wave = beep_wave(eng, candidates, id_bits);
    for (auto& w : witnesses) w.reset();
    for (int v = 0; v < n; ++v) {
      const size_t i = static_cast<size_t>(v);
      if (active[i] && !wave.m[i].empty() && wave.m[i].popcount() > log_n) witnesses[i] = flag;
    }
    BeepWaveResult verdict = beep_wave(eng, witnesses, 1);
    for (int v = 0; v < n; ++v) {
      const size_t i = static_cast<size_t>(v);
      if (!active[i]) continue;
      if (verdict.m[i].empty() && !wave.m[i].empty()) {
        out.output[i] = wave.m[i];
        out.elected[i] = candidates[i] && *candidates[i] == wave.m[i];
        active[i] = 0;
      }
    }
  }
  eng.set_active(nullptr);
  finalize(eng, out);
  return out;
}

ProtocolOutcome elect_single_hop(Engine& eng, const CandidateOverride& override_candidates) {
  if (eng.model() != ChannelModel::Cd)
    throw std::invalid_argument("elect_single_hop: requires collision detection");
  const int n = eng.topo().n();
  for (int v = 0; v < n; ++v)
    if (static_cast<int>(eng.topo().out(v).size()) != n - 1)
      throw std::invalid_argument("elect_single_hop: requires a complete (single-hop) graph");

  ProtocolOutcome out;
  out.output.assign(static_cast<size_t>(n), Bitstring());
  out.elected.assign(static_cast<size_t>(n), 0);
  if (n == 1) {
    // the sole node knows n = 1 and elects itself outright
    out.iterations = 1;
    out.output[0] = eng.draw_bits(0, eng.log_n());
    out.elected[0] = 1;
    finalize(eng, out);
    return out;
  }

  const int id_bits = eng.log_n();
  PayloadMap candidates(static_cast<size_t>(n));
  std::vector<TxEntry> tx;
  bool done = false;
  while (!done) {
    ++out.iterations;
    for (auto& c : candidates) c.reset();
    if (!override_candidates || !override_candidates(out.iterations, candidates)) {
      for (int v = 0; v < n; ++v)
        if (eng.draw_rational(v, 1, static_cast<uint64_t>(eng.know_n())))
          candidates[static_cast<size_t>(v)] = eng.draw_bits(v, id_bits);
    }
    std::vector<TraceSourceRec> recs;
    for (int v = 0; v < n; ++v)
      if (candidates[static_cast<size_t>(v)]) recs.push_back({v, *candidates[static_cast<size_t>(v)]});
    const uint64_t inv = eng.begin_primitive("single_hop", std::move(recs));

    eng.set_phase("transmit", static_cast<int>(out.iterations));
    tx.clear();
    for (int v = 0; v < n; ++v)
      if (candidates[static_cast<size_t>(v)]) tx.push_back({v, &*candidates[static_cast<size_t>(v)]});
    const RadioRoundOutcome& first = eng.step_radio(tx);
    // exactly one transmitter: every listener now holds the ID
    std::vector<std::pair<int, Bitstring>> received;
    for (const auto& [v, payload] : first.messages) received.emplace_back(v, *payload);

    eng.set_phase("echo", static_cast<int>(out.iterations));
    tx.clear();
    for (const auto& [v, payload] : received) tx.push_back({v, &payload});
    const RadioRoundOutcome& echo = eng.step_radio(tx);

    // a candidate that hears anything in the echo round was alone
    for (const auto& [v, payload] : echo.messages)
      if (candidates[static_cast<size_t>(v)]) {
        out.output[static_cast<size_t>(v)] = *candidates[static_cast<size_t>(v)];
        out.elected[static_cast<size_t>(v)] = 1;
        done = true;
      }
    for (int v : echo.collisions)
      if (candidates[static_cast<size_t>(v)]) {
        out.output[static_cast<size_t>(v)] = *candidates[static_cast<size_t>(v)];
        out.elected[static_cast<size_t>(v)] = 1;
        done = true;
      }
    for (const auto& [v, payload] : received) out.output[static_cast<size_t>(v)] = payload;
    if (!received.empty()) done = true;
    eng.end_primitive(inv);
  }
  finalize(eng, out);
  return out;
}

ProtocolOutcome run_election(Engine& eng, ProtocolKind kind, const CandidateOverride& ov) {
  switch (kind) {
    case ProtocolKind::Expected: return elect_expected(eng, ov);
    case ProtocolKind::Whp: return elect_whp(eng, ov);
    case ProtocolKind::Beep: return elect_beep(eng, ov);
    case ProtocolKind::SingleHop: return elect_single_hop(eng, ov);
  }
  throw std::logic_error("run_election: bad protocol kind");
}

std::pair<ProtocolOutcome, Trace> run_protocol(const Topology& t, ProtocolKind kind, uint64_t seed,
                                               EngineConfig cfg, bool record_trace,
                                               ContractAuditor* auditor) {
  Engine eng(t, protocol_model(kind), seed, cfg);
  Trace trace;
  trace.header.protocol = protocol_name(kind);
  trace.header.know_n = eng.know_n();
  trace.header.know_d = eng.know_d();
  trace.header.alpha = eng.config().alpha;
  trace.header.round_cap = eng.config().round_cap;
  trace.header.topology = t.spec();
  trace.header.seed = seed;
  trace.header.n = t.n();
  trace.header.D = t.eccentricity();
  trace.header.model = eng.model();
  if (record_trace) eng.record_into(&trace);
  if (auditor) eng.set_auditor(auditor);

  ProtocolOutcome outcome;
  try {
    outcome = run_election(eng, kind);
  } catch (const RoundCapExceeded& e) {
    outcome.output.assign(static_cast<size_t>(t.n()), Bitstring());
    outcome.elected.assign(static_cast<size_t>(t.n()), 0);
    outcome.aborted = true;
    outcome.abort_reason = e.what();
    outcome.rounds = eng.round();
    outcome.success = false;
  }
  return {std::move(outcome), std::move(trace)};
}

}  // namespace radiosim
