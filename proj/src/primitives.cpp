#include "radiosim/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radiosim/audit.hpp"

namespace radiosim {

namespace {

std::vector<TraceSourceRec> source_recs(const PayloadMap& sources) {
  std::vector<TraceSourceRec> recs;
  for (int v = 0; v < static_cast<int>(sources.size()); ++v)
    if (sources[static_cast<size_t>(v)]) recs.push_back({v, *sources[static_cast<size_t>(v)]});
  return recs;
}

// One Decay execution without its own trace frame; the caller tags rounds.
// `members` lists the participating nodes, `payload_of[v]` what they send.
void decay_core(Engine& eng, const std::vector<int>& members,
                const std::vector<const Bitstring*>& payload_of, DecaySummary& out) {
  const int rounds = decay_rounds(eng);
  std::vector<TxEntry> tx;
  tx.reserve(members.size());
  for (int i = 1; i <= rounds; ++i) {
    tx.clear();
    for (int v : members)
      if (eng.draw_pow2(v, i)) tx.push_back({v, payload_of[static_cast<size_t>(v)]});
    const RadioRoundOutcome& rx = eng.step_radio(tx);
    for (const auto& [v, payload] : rx.messages) {
      if (out.first[static_cast<size_t>(v)].empty()) out.first[static_cast<size_t>(v)] = *payload;
      if (out.maxval[static_cast<size_t>(v)] < *payload) out.maxval[static_cast<size_t>(v)] = *payload;
    }
  }
}

void active_members(const Engine& eng, const PayloadMap& sources, std::vector<int>& members,
                    std::vector<const Bitstring*>& payload_of) {
  const int n = static_cast<int>(sources.size());
  members.clear();
  payload_of.assign(static_cast<size_t>(n), nullptr);
  for (int v = 0; v < n; ++v)
    if (sources[static_cast<size_t>(v)] && eng.is_active(v)) {
      members.push_back(v);
      payload_of[static_cast<size_t>(v)] = &*sources[static_cast<size_t>(v)];
    }
}

std::vector<TraceOutputRec> output_recs(const Engine& eng, const std::vector<Bitstring>& m) {
  std::vector<TraceOutputRec> recs;
  for (int v = 0; v < static_cast<int>(m.size()); ++v)
    if (eng.is_active(v)) recs.push_back({v, m[static_cast<size_t>(v)], -1, -1});
  return recs;
}

}  // namespace

void DecaySummary::reset(int n) {
  first.resize(static_cast<size_t>(n));
  maxval.resize(static_cast<size_t>(n));
  for (auto& b : first) b = Bitstring();
  for (auto& b : maxval) b = Bitstring();
}

void DecaySummary::merge(const DecaySummary& later) {
  for (size_t v = 0; v < first.size(); ++v) {
    if (first[v].empty()) first[v] = later.first[v];
    if (maxval[v] < later.maxval[v]) maxval[v] = later.maxval[v];
  }
}

int decay_rounds(const Engine& eng) { return eng.log_n(); }

int pmb_executions(const Engine& eng) {
  return eng.config().alpha * (eng.know_d() + eng.log_n());
}

uint64_t pmb_rounds(const Engine& eng) {
  return static_cast<uint64_t>(pmb_executions(eng)) * static_cast<uint64_t>(decay_rounds(eng));
}

int selection_id_bits(const Engine& eng) { return 16 * eng.log_n(); }

uint64_t selection_rounds(const Engine& eng) {
  return 2 * pmb_rounds(eng) +
         static_cast<uint64_t>(selection_id_bits(eng)) * 4ULL *
             static_cast<uint64_t>(decay_rounds(eng));
}

uint64_t search_rounds(const Engine& eng, int ell) {
  return static_cast<uint64_t>(ell) * pmb_rounds(eng);
}

DecaySummary decay(Engine& eng, const PayloadMap& sources) {
  const uint64_t inv = eng.begin_primitive("decay", source_recs(sources));
  eng.set_phase("step", 0);
  std::vector<int> members;
  std::vector<const Bitstring*> payload_of;
  active_members(eng, sources, members, payload_of);
  DecaySummary out;
  out.reset(eng.topo().n());
  decay_core(eng, members, payload_of, out);
  eng.end_primitive(inv);
  return out;
}

DecaySummary decay4(Engine& eng, const PayloadMap& sources) {
  const uint64_t inv = eng.begin_primitive("decay4", source_recs(sources));
  std::vector<int> members;
  std::vector<const Bitstring*> payload_of;
  active_members(eng, sources, members, payload_of);
  DecaySummary out, step;
  out.reset(eng.topo().n());
  step.reset(eng.topo().n());
  for (int rep = 1; rep <= 4; ++rep) {
    eng.set_phase("rep", rep);
    step.reset(eng.topo().n());
    decay_core(eng, members, payload_of, step);
    out.merge(step);
  }
  eng.end_primitive(inv);
  return out;
}

std::vector<Bitstring> partial_multi_broadcast(Engine& eng, const PayloadMap& sources) {
  const int n = eng.topo().n();
  int len = -1;
  for (int v = 0; v < n; ++v)
    if (sources[static_cast<size_t>(v)]) {
      const int l = sources[static_cast<size_t>(v)]->size();
      if (l < 1 || l > 16 * eng.log_n())
        throw std::invalid_argument("broadcast: payload length outside the configured cap");
      if (len >= 0 && l != len) throw std::invalid_argument("broadcast: payload lengths differ");
      len = l;
    }
  const uint64_t inv = eng.begin_primitive("pmb", source_recs(sources));
  std::vector<Bitstring> kept(static_cast<size_t>(n));
  std::vector<int> members;
  std::vector<const Bitstring*> payload_of(static_cast<size_t>(n), nullptr);
  for (int v = 0; v < n; ++v)
    if (sources[static_cast<size_t>(v)] && eng.is_active(v)) {
      kept[static_cast<size_t>(v)] = *sources[static_cast<size_t>(v)];
      members.push_back(v);
      payload_of[static_cast<size_t>(v)] = &kept[static_cast<size_t>(v)];
    }

  const int execs = pmb_executions(eng);
  DecaySummary step;
  step.reset(n);
  std::vector<int> joined;
  for (int e = 1; e <= execs; ++e) {
    eng.set_phase("flood", e);
    step.reset(n);
    decay_core(eng, members, payload_of, step);
    // nodes that just interpreted a payload keep it and forward from the
    // next execution on
    joined.clear();
    for (int v = 0; v < n; ++v)
      if (payload_of[static_cast<size_t>(v)] == nullptr && !step.first[static_cast<size_t>(v)].empty() &&
          eng.is_active(v)) {
        kept[static_cast<size_t>(v)] = step.first[static_cast<size_t>(v)];
        payload_of[static_cast<size_t>(v)] = &kept[static_cast<size_t>(v)];
        joined.push_back(v);
      }
    if (!joined.empty()) {
      members.insert(members.end(), joined.begin(), joined.end());
      std::sort(members.begin(), members.end());
    }
  }
  eng.end_primitive(inv, output_recs(eng, kept));
  if (eng.auditor()) eng.auditor()->on_pmb(eng, sources, kept);
  return kept;
}

SelectionResult selection(Engine& eng, const PayloadMap& candidate_ids) {
  const int n = eng.topo().n();
  const int bits = selection_id_bits(eng);
  // shorter IDs (the one-shot protocol uses log n bits) read as 0 beyond
  // their length; the probing schedule keeps its fixed width regardless
  int id_len = -1;
  for (int v = 0; v < n; ++v)
    if (candidate_ids[static_cast<size_t>(v)]) {
      const int len = candidate_ids[static_cast<size_t>(v)]->size();
      if (len > bits) throw std::invalid_argument("selection: candidate ID too long");
      if (id_len >= 0 && len != id_len)
        throw std::invalid_argument("selection: candidate ID lengths differ");
      id_len = len;
    }

  const uint64_t inv = eng.begin_primitive("selection", source_recs(candidate_ids));

  eng.set_phase("broadcast_ids", 0);
  std::vector<Bitstring> m = partial_multi_broadcast(eng, candidate_ids);

  std::vector<uint8_t> witness(static_cast<size_t>(n), 0);
  std::vector<int> members;
  std::vector<const Bitstring*> payload_of(static_cast<size_t>(n), nullptr);
  DecaySummary bit_sum, step;
  bit_sum.reset(n);
  step.reset(n);
  for (int i = 1; i <= bits; ++i) {
    eng.set_phase("bit_decay", i);
    members.clear();
    std::fill(payload_of.begin(), payload_of.end(), nullptr);
    for (int v = 0; v < n; ++v) {
      const Bitstring& mv = m[static_cast<size_t>(v)];
      if (!mv.empty() && i <= mv.size() && mv.bit(i - 1) == 1 && eng.is_active(v)) {
        members.push_back(v);
        payload_of[static_cast<size_t>(v)] = &mv;
      }
    }
    bit_sum.reset(n);
    for (int rep = 0; rep < 4; ++rep) {
      step.reset(n);
      decay_core(eng, members, payload_of, step);
      bit_sum.merge(step);
    }
    // hearing an ID while one's own bit i is 0 exposes a conflict
    for (int v = 0; v < n; ++v) {
      const Bitstring& got = bit_sum.maxval[static_cast<size_t>(v)];
      Bitstring& mv = m[static_cast<size_t>(v)];
      if (got.empty() || mv.empty() || !eng.is_active(v)) continue;
      if (i <= mv.size() && mv.bit(i - 1) != 0) continue;
      witness[static_cast<size_t>(v)] = 1;
      if (mv < got) mv = got;
    }
  }

  eng.set_phase("broadcast_witness", 0);
  PayloadMap witness_src(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v)
    if (witness[static_cast<size_t>(v)]) witness_src[static_cast<size_t>(v)] = m[static_cast<size_t>(v)];
  std::vector<Bitstring> p = partial_multi_broadcast(eng, witness_src);

  SelectionResult r;
  r.m.resize(static_cast<size_t>(n));
  r.b.assign(static_cast<size_t>(n), 0);
  r.witness = witness;
  for (int v = 0; v < n; ++v) {
    const size_t i = static_cast<size_t>(v);
    if (m[i].empty()) continue;  // (empty, 0)
    if (p[i].empty()) {
      r.m[i] = m[i];
      r.b[i] = 1;
    } else {
      r.m[i] = p[i];
    }
  }

  std::vector<TraceOutputRec> recs;
  for (int v = 0; v < n; ++v)
    if (eng.is_active(v))
      recs.push_back({v, r.m[static_cast<size_t>(v)], r.b[static_cast<size_t>(v)],
                      r.witness[static_cast<size_t>(v)]});
  eng.end_primitive(inv, std::move(recs));
  if (eng.auditor()) eng.auditor()->on_selection(eng, candidate_ids, r);
  return r;
}

SearchResult search(Engine& eng, const PayloadMap& candidate_ids, int ell) {
  const int n = eng.topo().n();
  for (int v = 0; v < n; ++v)
    if (candidate_ids[static_cast<size_t>(v)] &&
        candidate_ids[static_cast<size_t>(v)]->size() < ell)
      throw std::invalid_argument("search: ell exceeds candidate ID length");

  const uint64_t inv = eng.begin_primitive("search", source_recs(candidate_ids));
  const Bitstring one("1");

  SearchResult r;
  r.m.assign(static_cast<size_t>(n), Bitstring());
  PayloadMap participants(static_cast<size_t>(n));
  for (int i = 1; i <= ell; ++i) {
    eng.set_phase("bit", i);
    for (auto& s : participants) s.reset();
    for (int v = 0; v < n; ++v) {
      const auto& id = candidate_ids[static_cast<size_t>(v)];
      if (!id || !eng.is_active(v)) continue;
      // agreement with the node's own prefix so far, and a 1 at position i
      if (id->prefix(i - 1) == r.m[static_cast<size_t>(v)] && id->bit(i - 1) == 1)
        participants[static_cast<size_t>(v)] = one;
    }
    std::vector<Bitstring> p = partial_multi_broadcast(eng, participants);
    std::vector<uint8_t> row(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
      const int bit = p[static_cast<size_t>(v)].empty() ? 0 : 1;
      r.m[static_cast<size_t>(v)].push_back(bit);
      row[static_cast<size_t>(v)] = static_cast<uint8_t>(bit);
    }
    r.iter_bits.push_back(std::move(row));
  }

  eng.end_primitive(inv, output_recs(eng, r.m));
  if (eng.auditor()) eng.auditor()->on_search(eng, candidate_ids, ell, r.m);
  return r;
}

}  // namespace radiosim
