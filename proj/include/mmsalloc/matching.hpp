#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace mmsalloc {

/// Vertices on both sides are numbered from 0.
struct BipartiteGraph {
  int x_size = 0;
  int y_size = 0;
  std::vector<std::vector<int>> adjacency;  // per X vertex, sorted Y ids
};

/// Validates ranges, sorts and rejects duplicate edges.
BipartiteGraph make_graph(int x_size, int y_size, std::vector<std::vector<int>> adjacency);

struct Matching {
  std::vector<std::pair<int, int>> pairs;  // (x, y), ascending x
  size_t size() const { return pairs.size(); }
};

Matching max_matching(const BipartiteGraph& g);

/// Maximum matching restricted to the X vertices not reachable by
/// alternating paths from an unmatched X vertex.
Matching envy_free_matching(const BipartiteGraph& g);

/// No unmatched X vertex is adjacent to a matched Y vertex.
bool is_envy_free(const BipartiteGraph& g, const Matching& matching);

std::vector<int> neighborhood(const BipartiteGraph& g, const std::vector<int>& x_subset);

struct HallSplit {
  std::vector<int> x_subset;
  std::vector<int> y_subset;  // neighborhood of x_subset, strictly smaller
};

/// Absent when an X-perfect matching exists.
std::optional<HallSplit> hall_deficient_split(const BipartiteGraph& g);

}  // namespace mmsalloc
