#include <doctest.h>

#include "oracles.hpp"
#include "radiosim/primitives.hpp"

using namespace radiosim;

namespace {

Topology path(int n) {
  TopologySpec s;
  s.family = TopologyFamily::Path;
  s.n = n;
  return Topology::build(s);
}

Topology random_graph(uint64_t seed, int n = 24, double p = 0.1) {
  TopologySpec s;
  s.family = TopologyFamily::RandomUndirected;
  s.n = n;
  s.p = p;
  s.seed = seed;
  return Topology::build(s);
}

}  // namespace

TEST_CASE("no sources, no payloads, fixed duration") {
  Topology t = path(12);
  Engine eng(t, ChannelModel::NoCd, 3);
  auto m = partial_multi_broadcast(eng, PayloadMap(12));
  CHECK(eng.round() == pmb_rounds(eng));
  for (const auto& b : m) CHECK(b.empty());
}

TEST_CASE("a single source floods its payload along a path") {
  const Bitstring payload("1100");
  int ok = 0;
  const int trials = 500;
  for (int trial = 0; trial < trials; ++trial) {
    Topology t = path(16);
    Engine eng(t, ChannelModel::NoCd, 9000 + static_cast<uint64_t>(trial));
    PayloadMap src(16);
    src[0] = payload;
    auto m = partial_multi_broadcast(eng, src);
    bool all = true;
    for (const auto& b : m)
      if (b != payload) all = false;
    ok += all ? 1 : 0;
  }
  CHECK(ok >= static_cast<int>(trials * 0.99));
}

TEST_CASE("two sources: every node adopts one of the two payloads") {
  const Bitstring a("0101"), b("1010");
  int ok = 0;
  const int trials = 500;
  for (int trial = 0; trial < trials; ++trial) {
    Topology t = random_graph(static_cast<uint64_t>(trial));
    Engine eng(t, ChannelModel::NoCd, 31 + static_cast<uint64_t>(trial));
    PayloadMap src(static_cast<size_t>(t.n()));
    src[0] = a;
    src[static_cast<size_t>(t.n() - 1)] = b;
    auto m = partial_multi_broadcast(eng, src);
    bool all = true;
    for (const auto& kept : m)
      if (kept != a && kept != b) all = false;
    ok += all ? 1 : 0;
  }
  CHECK(ok >= static_cast<int>(trials * 0.99));
}

TEST_CASE("whatever arrives is always some source's payload, never an invention") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Topology t = random_graph(seed, 16, 0.15);
    Engine eng(t, ChannelModel::NoCd, seed * 7 + 1);
    PayloadMap src(static_cast<size_t>(t.n()));
    std::mt19937_64 gen(seed);
    std::vector<Bitstring> values;
    for (int v = 0; v < t.n(); ++v)
      if (gen() % 4 == 0) {
        src[static_cast<size_t>(v)] = oracles::random_bits(gen, 6);
        values.push_back(*src[static_cast<size_t>(v)]);
      }
    auto m = partial_multi_broadcast(eng, src);
    for (const auto& kept : m) {
      if (kept.empty()) continue;
      CHECK(std::find(values.begin(), values.end(), kept) != values.end());
    }
  }
}

TEST_CASE("duration never depends on the source set or the dice") {
  Topology t = random_graph(4, 20, 0.2);
  const uint64_t want = [&] {
    Engine eng(t, ChannelModel::NoCd, 1);
    return pmb_rounds(eng);
  }();
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Engine eng(t, ChannelModel::NoCd, seed);
    PayloadMap src(static_cast<size_t>(t.n()));
    for (uint64_t v = 0; v < seed * 2 && v < 20; ++v) src[v] = Bitstring("11");
    partial_multi_broadcast(eng, src);
    CHECK(eng.round() == want);
  }
}

TEST_CASE("a larger alpha stretches the schedule proportionally") {
  Topology t = path(8);
  EngineConfig c4;
  EngineConfig c6;
  c6.alpha = 6;
  Engine e4(t, ChannelModel::NoCd, 1, c4);
  Engine e6(t, ChannelModel::NoCd, 1, c6);
  CHECK(pmb_executions(e6) * 4 == pmb_executions(e4) * 6);
}
