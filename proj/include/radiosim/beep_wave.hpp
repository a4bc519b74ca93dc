#pragma once

#include <cstdint>
#include <vector>

#include "radiosim/engine.hpp"
#include "radiosim/primitives.hpp"

namespace radiosim {

struct BeepWaveResult {
  std::vector<Bitstring> m;         // decoded payload; empty = no beep ever heard
  std::vector<int64_t> first_beep;  // local round of the node's first own beep, -1 = never
};

// D + 3(ell+1) + 2: the source schedule spans rounds 0..3*ell, the wave needs
// up to D rounds to arrive, and the slack absorbs the one-round parity skew
// between neighboring relays.
uint64_t beep_wave_rounds(const Engine& eng, int ell);

// Deterministic wave relay. Sources beep at local round 0 and again at round
// 3i for every 1-bit of their payload; a non-source relays one round after
// each beep heard on its own period-3 slots and decodes bit i from a beep at
// slot 3i (or one round behind it, where waves of mismatched parity land).
BeepWaveResult beep_wave(Engine& eng, const PayloadMap& sources, int ell);

}  // namespace radiosim
