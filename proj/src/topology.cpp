#include "radiosim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "radiosim/rng.hpp"

namespace radiosim {

const char* family_name(TopologyFamily f) {
  switch (f) {
    case TopologyFamily::Path: return "path";
    case TopologyFamily::Cycle: return "cycle";
    case TopologyFamily::Star: return "star";
    case TopologyFamily::Grid: return "grid";
    case TopologyFamily::Layered: return "layered";
    case TopologyFamily::Complete: return "complete";
    case TopologyFamily::RandomDigraph: return "random-digraph";
    case TopologyFamily::RandomUndirected: return "random-undirected";
  }
  return "?";
}

TopologyFamily family_from_name(const std::string& name) {
  if (name == "path") return TopologyFamily::Path;
  if (name == "cycle") return TopologyFamily::Cycle;
  if (name == "star") return TopologyFamily::Star;
  if (name == "grid") return TopologyFamily::Grid;
  if (name == "layered") return TopologyFamily::Layered;
  if (name == "complete") return TopologyFamily::Complete;
  if (name == "random-digraph") return TopologyFamily::RandomDigraph;
  if (name == "random-undirected") return TopologyFamily::RandomUndirected;
  throw std::invalid_argument("unknown topology family: " + name);
}

namespace {

void add_edge(std::vector<std::pair<int, int>>& arcs, int u, int v, bool both) {
  arcs.emplace_back(u, v);
  if (both) arcs.emplace_back(v, u);
}

std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int src) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<int> q{src};
  dist[static_cast<size_t>(src)] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int w : adj[static_cast<size_t>(u)]) {
      if (dist[static_cast<size_t>(w)] < 0) {
        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
        q.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace

Topology Topology::from_arcs(int n, bool directed, std::vector<std::pair<int, int>> arcs,
                             TopologySpec spec) {
  if (n <= 0) throw std::invalid_argument("topology: n must be positive");
  Topology t;
  t.n_ = n;
  t.directed_ = directed;
  t.spec_ = spec;

  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  t.out_.assign(static_cast<size_t>(n), {});
  t.in_.assign(static_cast<size_t>(n), {});
  for (auto [u, v] : arcs) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("topology: node out of range");
    if (u == v) throw std::invalid_argument("topology: self-loop");
    if (!directed &&
        !std::binary_search(arcs.begin(), arcs.end(), std::make_pair(v, u)))
      throw std::invalid_argument("topology: undirected graph missing reverse arc");
    t.out_[static_cast<size_t>(u)].push_back(v);
    t.in_[static_cast<size_t>(v)].push_back(u);
  }
  t.arcs_ = std::move(arcs);

  // connectivity + eccentricity in one pass of per-source BFS
  int ecc = 0;
  for (int s = 0; s < n; ++s) {
    std::vector<int> d = bfs(t.out_, s);
    for (int v = 0; v < n; ++v) {
      if (d[static_cast<size_t>(v)] < 0)
        throw std::invalid_argument(directed ? "topology: not strongly connected"
                                             : "topology: not connected");
      ecc = std::max(ecc, d[static_cast<size_t>(v)]);
    }
  }
  t.ecc_ = ecc;
  return t;
}

Topology Topology::build(const TopologySpec& spec) {
  const int n = spec.n;
  if (n <= 0) throw std::invalid_argument("topology: n must be positive");
  std::vector<std::pair<int, int>> arcs;
  bool directed = false;

  switch (spec.family) {
    case TopologyFamily::Path:
      for (int i = 0; i + 1 < n; ++i) add_edge(arcs, i, i + 1, true);
      break;
    case TopologyFamily::Cycle:
      if (n < 3 && spec.directed && n != 1)
        throw std::invalid_argument("topology: directed cycle needs n >= 3");
      directed = spec.directed;
      for (int i = 0; i + 1 < n; ++i) add_edge(arcs, i, i + 1, !directed);
      if (n > 2) add_edge(arcs, n - 1, 0, !directed);
      break;
    case TopologyFamily::Star:
      for (int i = 1; i < n; ++i) add_edge(arcs, 0, i, true);
      break;
    case TopologyFamily::Grid: {
      int rows = 1;
      for (int r = static_cast<int>(std::sqrt(static_cast<double>(n))); r >= 1; --r)
        if (n % r == 0) {
          rows = r;
          break;
        }
      const int cols = n / rows;
      auto id = [cols](int r, int c) { return r * cols + c; };
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
          if (c + 1 < cols) add_edge(arcs, id(r, c), id(r, c + 1), true);
          if (r + 1 < rows) add_edge(arcs, id(r, c), id(r + 1, c), true);
        }
      break;
    }
    case TopologyFamily::Layered: {
      int layers = spec.layers > 0 ? spec.layers : (n == 1 ? 1 : std::max(2, n / 4));
      if (layers > n) throw std::invalid_argument("topology: more layers than nodes");
      if (layers < 2 && n > 1)
        throw std::invalid_argument("topology: layered graph needs >= 2 layers");
      // node i sits in layer i*layers/n; consecutive layers fully joined
      std::vector<int> layer_of(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i)
        layer_of[static_cast<size_t>(i)] = static_cast<int>((static_cast<int64_t>(i) * layers) / n);
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (layer_of[static_cast<size_t>(v)] - layer_of[static_cast<size_t>(u)] == 1)
            add_edge(arcs, u, v, true);
      break;
    }
    case TopologyFamily::Complete:
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) add_edge(arcs, u, v, true);
      break;
    case TopologyFamily::RandomDigraph: {
      if (spec.p < 0.0 || spec.p > 1.0) throw std::invalid_argument("topology: p outside [0,1]");
      directed = true;
      DrawStream rng(rng::mix2(spec.seed, 0x746f706fULL));
      // planted Hamiltonian cycle on a random permutation keeps the graph
      // strongly connected without rejection sampling
      std::vector<int> perm(static_cast<size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      for (int i = n - 1; i > 0; --i)
        std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(rng.below(static_cast<uint64_t>(i + 1)))]);
      std::set<std::pair<int, int>> planted;
      for (int i = 0; i < n && n > 1; ++i) {
        int u = perm[static_cast<size_t>(i)];
        int v = perm[static_cast<size_t>((i + 1) % n)];
        if (u != v) planted.emplace(u, v);
      }
      const auto num = static_cast<uint64_t>(spec.p * 9007199254740992.0);  // p * 2^53
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          if (u == v) continue;
          if (planted.count({u, v}) || rng.bernoulli_rational(num, 9007199254740992ULL))
            arcs.emplace_back(u, v);
        }
      break;
    }
    case TopologyFamily::RandomUndirected: {
      if (spec.p < 0.0 || spec.p > 1.0) throw std::invalid_argument("topology: p outside [0,1]");
      DrawStream rng(rng::mix2(spec.seed, 0x746f7075ULL));
      // random attachment tree as the connected backbone
      std::set<std::pair<int, int>> chosen;
      for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng.below(static_cast<uint64_t>(v)));
        chosen.emplace(std::min(u, v), std::max(u, v));
      }
      const auto num = static_cast<uint64_t>(spec.p * 9007199254740992.0);
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (chosen.count({u, v}) || rng.bernoulli_rational(num, 9007199254740992ULL))
            add_edge(arcs, u, v, true);
      break;
    }
  }

  return from_arcs(n, directed, std::move(arcs), spec);
}

std::vector<int> Topology::distances_from(int src) const { return bfs(out_, src); }

std::vector<int> Topology::distances_from_set(const std::vector<int>& srcs) const {
  std::vector<int> dist(static_cast<size_t>(n_), -1);
  std::deque<int> q;
  for (int s : srcs)
    if (dist[static_cast<size_t>(s)] < 0) {
      dist[static_cast<size_t>(s)] = 0;
      q.push_back(s);
    }
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int w : out_[static_cast<size_t>(u)])
      if (dist[static_cast<size_t>(w)] < 0) {
        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
        q.push_back(w);
      }
  }
  return dist;
}

}  // namespace radiosim
