#include "radiosim/beep_wave.hpp"

#include <stdexcept>

#include "radiosim/audit.hpp"

namespace radiosim {

uint64_t beep_wave_rounds(const Engine& eng, int ell) {
  return static_cast<uint64_t>(eng.know_d()) + 3ULL * (static_cast<uint64_t>(ell) + 1) + 2;
}

BeepWaveResult beep_wave(Engine& eng, const PayloadMap& sources, int ell) {
  if (eng.topo().directed())
    throw std::invalid_argument("beep_wave: directed topologies are not supported");
  if (eng.model() != ChannelModel::Beep)
    throw std::invalid_argument("beep_wave: beep semantics required");
  if (ell < 1 || ell > 16 * eng.log_n())
    throw std::invalid_argument("beep_wave: payload width outside the configured cap");
  const int n = eng.topo().n();
  std::vector<TraceSourceRec> recs;
  for (int v = 0; v < n; ++v) {
    const auto& f = sources[static_cast<size_t>(v)];
    if (!f) continue;
    if (f->size() != ell) throw std::invalid_argument("beep_wave: payload length mismatch");
    if (eng.is_active(v)) recs.push_back({v, *f});
  }
  const uint64_t inv = eng.begin_primitive("beep_wave", std::move(recs));

  BeepWaveResult r;
  r.m.assign(static_cast<size_t>(n), Bitstring());
  r.first_beep.assign(static_cast<size_t>(n), -1);
  std::vector<int64_t> first_heard(static_cast<size_t>(n), -1);
  std::vector<uint8_t> relay_next(static_cast<size_t>(n), 0);
  std::vector<uint8_t> is_source(static_cast<size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    if (sources[static_cast<size_t>(v)] && eng.is_active(v)) {
      is_source[static_cast<size_t>(v)] = 1;
      r.m[static_cast<size_t>(v)] = *sources[static_cast<size_t>(v)];
    }

  const uint64_t total = beep_wave_rounds(eng, ell);
  std::vector<int> beepers;
  for (uint64_t round = 0; round < total; ++round) {
    eng.set_phase("wave", static_cast<int>(round));
    beepers.clear();
    for (int v = 0; v < n; ++v) {
      const size_t i = static_cast<size_t>(v);
      if (!eng.is_active(v)) continue;
      bool beep = false;
      if (is_source[i]) {
        if (round == 0)
          beep = true;
        else if (round % 3 == 0 && round / 3 >= 1 && round / 3 <= static_cast<uint64_t>(ell))
          beep = sources[i]->bit(static_cast<int>(round / 3) - 1) == 1;
      } else if (relay_next[i]) {
        beep = true;
        relay_next[i] = 0;
      }
      if (beep) {
        beepers.push_back(v);
        if (r.first_beep[i] < 0) r.first_beep[i] = static_cast<int64_t>(round);
      }
    }
    const BeepRoundOutcome& rx = eng.step_beep(beepers);
    for (int v : rx.heard) {
      const size_t i = static_cast<size_t>(v);
      if (!eng.is_active(v)) continue;
      if (is_source[i]) {
        if (round % 3 == 0 && round / 3 >= 1 && round / 3 <= static_cast<uint64_t>(ell))
          r.m[i].set_bit(static_cast<int>(round / 3) - 1, 1);
        continue;
      }
      if (first_heard[i] < 0) {
        first_heard[i] = static_cast<int64_t>(round);
        r.m[i] = Bitstring::zeros(ell);
        relay_next[i] = 1;
        continue;
      }
      const int64_t d = static_cast<int64_t>(round) - first_heard[i];
      if (d % 3 == 0 && d / 3 >= 1 && d / 3 <= ell) {
        r.m[i].set_bit(static_cast<int>(d / 3) - 1, 1);
        relay_next[i] = 1;
      } else if (d % 3 == 1 && (d - 1) / 3 >= 1 && (d - 1) / 3 <= ell) {
        // a neighboring wave one round out of phase still decodes, but is
        // not relayed: relays stay locked to the node's own slots
        r.m[i].set_bit(static_cast<int>((d - 1) / 3) - 1, 1);
      }
    }
  }

  std::vector<TraceOutputRec> out;
  for (int v = 0; v < n; ++v)
    if (eng.is_active(v)) out.push_back({v, r.m[static_cast<size_t>(v)], -1, -1});
  eng.end_primitive(inv, std::move(out));
  if (eng.auditor()) eng.auditor()->on_beep_wave(eng, sources, ell, r);
  return r;
}

}  // namespace radiosim
