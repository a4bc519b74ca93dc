#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "radiosim/primitives.hpp"

using namespace radiosim;

namespace {

Topology random_graph(uint64_t seed, int n = 32, double p = 0.12) {
  TopologySpec s;
  s.family = TopologyFamily::RandomUndirected;
  s.n = n;
  s.p = p;
  s.seed = seed;
  return Topology::build(s);
}

PayloadMap random_candidates(const Engine& eng, std::mt19937_64& gen, int count) {
  const int n = eng.topo().n();
  const int bits = selection_id_bits(eng);
  PayloadMap ids(static_cast<size_t>(n));
  std::set<int> picked;
  while (static_cast<int>(picked.size()) < count)
    picked.insert(static_cast<int>(gen() % static_cast<uint64_t>(n)));
  std::set<std::string> used;
  for (int v : picked) {
    Bitstring id = oracles::random_bits(gen, bits);
    while (used.count(id.str())) id = oracles::random_bits(gen, bits);
    used.insert(id.str());
    ids[static_cast<size_t>(v)] = id;
  }
  return ids;
}

}  // namespace

TEST_CASE("no candidates: every node reports (empty, 0), deterministically") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Topology t = random_graph(seed, 16);
    Engine eng(t, ChannelModel::NoCd, seed);
    auto r = selection(eng, PayloadMap(16));
    for (int v = 0; v < 16; ++v) {
      CHECK(r.m[static_cast<size_t>(v)].empty());
      CHECK(r.b[static_cast<size_t>(v)] == 0);
      CHECK(r.witness[static_cast<size_t>(v)] == 0);
    }
  }
}

TEST_CASE("a sole candidate is agreed on by everyone") {
  std::mt19937_64 gen(1);
  int ok = 0;
  const int trials = 500;
  for (int trial = 0; trial < trials; ++trial) {
    Topology t = random_graph(static_cast<uint64_t>(trial));
    Engine eng(t, ChannelModel::NoCd, 777 + static_cast<uint64_t>(trial));
    PayloadMap ids = random_candidates(eng, gen, 1);
    auto r = selection(eng, ids);
    Bitstring the_id;
    for (const auto& id : ids)
      if (id) the_id = *id;
    bool all = true;
    for (int v = 0; v < t.n(); ++v)
      if (r.m[static_cast<size_t>(v)] != the_id || r.b[static_cast<size_t>(v)] != 1) all = false;
    ok += all ? 1 : 0;
  }
  CHECK(ok >= static_cast<int>(trials * 0.99));
}

TEST_CASE("multiple candidates: verdict 0 everywhere and the minimum never survives") {
  std::mt19937_64 gen(2);
  const int trials = 500;
  int ok = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const int k = 2 + trial % 7;  // 2..8 candidates
    Topology t = random_graph(static_cast<uint64_t>(trial) + 5000);
    Engine eng(t, ChannelModel::NoCd, 13 + static_cast<uint64_t>(trial));
    PayloadMap ids = random_candidates(eng, gen, k);
    Bitstring min_id;
    std::set<Bitstring> all_ids;
    for (const auto& id : ids)
      if (id) {
        all_ids.insert(*id);
        if (min_id.empty() || *id < min_id) min_id = *id;
      }
    auto r = selection(eng, ids);
    bool good = true;
    for (int v = 0; v < t.n(); ++v) {
      const size_t i = static_cast<size_t>(v);
      if (r.b[i] != 0 || r.m[i].empty() || r.m[i] == min_id || !all_ids.count(r.m[i])) good = false;
    }
    ok += good ? 1 : 0;
  }
  CHECK(ok >= static_cast<int>(trials * 0.99));
}

TEST_CASE("witnesses really saw two distinct identifiers") {
  // trace-level soundness: a witness must have received a payload in the
  // bit-probing phase that differs from what the opening broadcast gave it
  std::mt19937_64 gen(3);
  int witnesses_checked = 0;
  for (uint64_t seed = 0; seed < 12; ++seed) {
    Topology t = random_graph(seed, 12, 0.25);
    Engine eng(t, ChannelModel::NoCd, seed * 3 + 1);
    Trace trace;
    trace.header.topology = t.spec();
    eng.record_into(&trace);
    PayloadMap ids = random_candidates(eng, gen, 2 + static_cast<int>(seed % 3));
    auto r = selection(eng, ids);

    // first nested broadcast's outputs = each node's kept ID
    std::vector<Bitstring> kept(static_cast<size_t>(t.n()));
    bool have_kept = false;
    std::vector<std::set<std::string>> probe_rx(static_cast<size_t>(t.n()));
    for (const auto& line : trace.lines) {
      if (std::holds_alternative<TraceEvent>(line)) {
        const auto& e = std::get<TraceEvent>(line);
        if (!e.begin && e.primitive == "pmb" && !have_kept) {
          for (const auto& o : e.outputs) kept[static_cast<size_t>(o.node)] = o.m;
          have_kept = true;
        }
        continue;
      }
      const auto& round = std::get<TraceRound>(line);
      if (round.primitive != "selection" || round.phase != "bit_decay") continue;
      for (const auto& rec : round.receptions)
        if (rec.kind == ReceptionKind::Message)
          probe_rx[static_cast<size_t>(rec.node)].insert(rec.payload.str());
    }
    REQUIRE(have_kept);
    for (int v = 0; v < t.n(); ++v) {
      if (!r.witness[static_cast<size_t>(v)]) continue;
      ++witnesses_checked;
      bool distinct = false;
      for (const auto& got : probe_rx[static_cast<size_t>(v)])
        if (got != kept[static_cast<size_t>(v)].str()) distinct = true;
      CHECK(distinct);
    }
  }
  CHECK(witnesses_checked > 0);
}

TEST_CASE("selection always burns its precomputed round budget") {
  Topology t = random_graph(8, 16, 0.2);
  std::mt19937_64 gen(4);
  for (int k : {0, 1, 3}) {
    Engine eng(t, ChannelModel::NoCd, static_cast<uint64_t>(k) + 21);
    PayloadMap ids = k == 0 ? PayloadMap(16) : random_candidates(eng, gen, k);
    const uint64_t want = selection_rounds(eng);
    selection(eng, ids);
    CHECK(eng.round() == want);
  }
}

TEST_CASE("identical duplicate candidates look like a sole candidate") {
  // both hold the same ID: no conflict can ever surface, the verdict is 1
  Topology t = random_graph(17, 16, 0.2);
  Engine eng(t, ChannelModel::NoCd, 5);
  PayloadMap ids(16);
  std::mt19937_64 gen(6);
  const Bitstring id = oracles::random_bits(gen, selection_id_bits(eng));
  ids[2] = id;
  ids[9] = id;
  auto r = selection(eng, ids);
  for (int v = 0; v < 16; ++v) {
    CHECK(r.b[static_cast<size_t>(v)] == 1);
    CHECK(r.m[static_cast<size_t>(v)] == id);
    CHECK(r.witness[static_cast<size_t>(v)] == 0);
  }
}
