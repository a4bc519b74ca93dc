#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace radiosim {

enum class TopologyFamily {
  Path,
  Cycle,
  Star,
  Grid,
  Layered,
  Complete,
  RandomDigraph,
  RandomUndirected,
};

const char* family_name(TopologyFamily f);
TopologyFamily family_from_name(const std::string& name);

struct TopologySpec {
  TopologyFamily family = TopologyFamily::Path;
  int n = 1;
  bool directed = false;    // honored by cycle; random-digraph is always directed
  double p = 0.25;          // extra-edge probability for the random families
  int layers = 0;           // layer count for layered (0 = choose from n)
  uint64_t seed = 0;
};

// Immutable node/edge structure with cached eccentricity. Construction
// validates connectivity (strong connectivity for directed graphs).
class Topology {
 public:
  static Topology build(const TopologySpec& spec);
  // arcs are ordered pairs; for undirected graphs both directions must be present
  // (generators take care of this; use `symmetric` to mirror a one-sided list).
  static Topology from_arcs(int n, bool directed, std::vector<std::pair<int, int>> arcs,
                            TopologySpec spec = {});

  int n() const { return n_; }
  bool directed() const { return directed_; }
  int eccentricity() const { return ecc_; }

  const std::vector<int>& out(int v) const { return out_[static_cast<size_t>(v)]; }
  const std::vector<int>& in(int v) const { return in_[static_cast<size_t>(v)]; }
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }

  const TopologySpec& spec() const { return spec_; }

  // Shortest-path distances from `src` following out-edges (-1 = unreachable).
  std::vector<int> distances_from(int src) const;
  // Distance from the nearest member of `srcs` to each node (multi-source BFS).
  std::vector<int> distances_from_set(const std::vector<int>& srcs) const;

 private:
  Topology() = default;

  int n_ = 0;
  bool directed_ = false;
  int ecc_ = 0;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<std::pair<int, int>> arcs_;
  TopologySpec spec_;
};

}  // namespace radiosim
