#include "radiosim/bitstring.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace radiosim {

Bitstring::Bitstring(std::string_view text) {
  bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring: expected only '0'/'1'");
    bits_.push_back(static_cast<uint8_t>(c == '1'));
  }
}

Bitstring Bitstring::zeros(int len) {
  Bitstring b;
  b.bits_.assign(static_cast<size_t>(len), 0);
  return b;
}

Bitstring Bitstring::ones(int len) {
  Bitstring b;
  b.bits_.assign(static_cast<size_t>(len), 1);
  return b;
}

int Bitstring::popcount() const {
  return std::accumulate(bits_.begin(), bits_.end(), 0);
}

Bitstring Bitstring::prefix(int len) const {
  Bitstring b;
  b.bits_.assign(bits_.begin(), bits_.begin() + std::min<size_t>(static_cast<size_t>(len), bits_.size()));
  return b;
}

std::string Bitstring::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (uint8_t b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::strong_ordering operator<=>(const Bitstring& a, const Bitstring& b) {
  return std::lexicographical_compare_three_way(a.bits_.begin(), a.bits_.end(), b.bits_.begin(),
                                                b.bits_.end());
}

Bitstring Bitstring::bit_or(const Bitstring& a, const Bitstring& b) {
  if (a.size() != b.size()) throw std::invalid_argument("bit_or: length mismatch");
  Bitstring r = a;
  for (size_t i = 0; i < r.bits_.size(); ++i) r.bits_[i] |= b.bits_[i];
  return r;
}

}  // namespace radiosim
