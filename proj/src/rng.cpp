#include "radiosim/rng.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace radiosim {

Bitstring sample_constant_weight_id(DrawStream& rng, int length, int weight) {
  if (weight < 0 || weight > length) throw std::invalid_argument("constant-weight id: weight out of range");
  std::vector<int> pos(static_cast<size_t>(length));
  std::iota(pos.begin(), pos.end(), 0);
  Bitstring b = Bitstring::zeros(length);
  for (int j = 0; j < weight; ++j) {
    const int k = j + static_cast<int>(rng.below(static_cast<uint64_t>(length - j)));
    std::swap(pos[static_cast<size_t>(j)], pos[static_cast<size_t>(k)]);
    b.set_bit(pos[static_cast<size_t>(j)], 1);
  }
  return b;
}

}  // namespace radiosim
