#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace radiosim {

// Fixed-length bit vector used for node IDs and broadcast payloads.
// Position 0 is the most significant bit; equal-length strings compare
// as unsigned integers and the empty string sorts below everything.
class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(std::string_view text);

  static Bitstring zeros(int len);
  static Bitstring ones(int len);

  int size() const { return static_cast<int>(bits_.size()); }
  bool empty() const { return bits_.empty(); }

  int bit(int i) const { return bits_[static_cast<size_t>(i)]; }
  void set_bit(int i, int v) { bits_[static_cast<size_t>(i)] = static_cast<uint8_t>(v != 0); }

  int popcount() const;
  Bitstring prefix(int len) const;
  void push_back(int v) { bits_.push_back(static_cast<uint8_t>(v != 0)); }

  std::string str() const;

  friend bool operator==(const Bitstring& a, const Bitstring& b) = default;
  friend std::strong_ordering operator<=>(const Bitstring& a, const Bitstring& b);

  // Bitwise OR of two equal-length strings.
  static Bitstring bit_or(const Bitstring& a, const Bitstring& b);

 private:
  std::vector<uint8_t> bits_;
};

}  // namespace radiosim
