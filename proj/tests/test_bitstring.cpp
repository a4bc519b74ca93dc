#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "radiosim/bitstring.hpp"
#include "radiosim/rng.hpp"

using namespace radiosim;

TEST_CASE("construction and text round trip") {
  Bitstring b("10110");
  CHECK(b.size() == 5);
  CHECK(b.str() == "10110");
  CHECK(b.bit(0) == 1);
  CHECK(b.bit(1) == 0);
  CHECK(b.popcount() == 3);
  CHECK(Bitstring().empty());
  CHECK(Bitstring::zeros(4).str() == "0000");
  CHECK(Bitstring::ones(3).str() == "111");
  CHECK_THROWS_AS(Bitstring("10x"), std::invalid_argument);
}

TEST_CASE("ordering: most significant bit first, empty lowest") {
  CHECK(Bitstring("0111") < Bitstring("1000"));
  CHECK(Bitstring("1010") < Bitstring("1011"));
  CHECK(Bitstring() < Bitstring("0"));
  CHECK(Bitstring("0") < Bitstring("00"));  // prefix sorts first
  CHECK(Bitstring("1100") == Bitstring("1100"));

  // equal length order agrees with unsigned integer order
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 500; ++trial) {
    const unsigned a = static_cast<unsigned>(gen() & 0xff);
    const unsigned b = static_cast<unsigned>(gen() & 0xff);
    Bitstring ba = Bitstring::zeros(8), bb = Bitstring::zeros(8);
    for (int i = 0; i < 8; ++i) {
      ba.set_bit(i, static_cast<int>((a >> (7 - i)) & 1));
      bb.set_bit(i, static_cast<int>((b >> (7 - i)) & 1));
    }
    CHECK((ba < bb) == (a < b));
  }
}

TEST_CASE("prefix and bitwise or") {
  Bitstring b("110101");
  CHECK(b.prefix(3).str() == "110");
  CHECK(b.prefix(0).empty());
  CHECK(Bitstring::bit_or(Bitstring("1010"), Bitstring("0110")).str() == "1110");
  CHECK_THROWS_AS(Bitstring::bit_or(Bitstring("1"), Bitstring("10")), std::invalid_argument);
}

TEST_CASE("constant-weight sampling endpoints") {
  DrawStream rng(1);
  CHECK(sample_constant_weight_id(rng, 8, 0).str() == "00000000");
  CHECK(sample_constant_weight_id(rng, 8, 8).str() == "11111111");
  CHECK_THROWS_AS(sample_constant_weight_id(rng, 4, 5), std::invalid_argument);
  for (int trial = 0; trial < 200; ++trial)
    CHECK(sample_constant_weight_id(rng, 12, 3).popcount() == 3);
}

TEST_CASE("constant-weight sampling is uniform over all 28 two-of-eight strings") {
  DrawStream rng(20240817);
  std::map<std::string, int> counts;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[sample_constant_weight_id(rng, 8, 2).str()];
  CHECK(counts.size() == 28);
  const double expected = draws / 28.0;
  double chi2 = 0.0;
  for (const auto& [_, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < oracles::chi2_crit_999(27));
}
