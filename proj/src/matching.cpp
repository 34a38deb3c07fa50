#include "mmsalloc/matching.hpp"

#include <algorithm>
#include <functional>

#include "mmsalloc/error.hpp"

namespace mmsalloc {

namespace {

struct MatchState {
  std::vector<int> x_to_y, y_to_x;
};

MatchState kuhn(const BipartiteGraph& g) {
  MatchState s{std::vector<int>(g.x_size, -1), std::vector<int>(g.y_size, -1)};
  std::vector<int> seen(g.y_size, -1);
  std::function<bool(int, int)> augment = [&](int x, int round) {
    for (int y : g.adjacency[x]) {
      if (seen[y] == round) continue;
      seen[y] = round;
      if (s.y_to_x[y] < 0 || augment(s.y_to_x[y], round)) {
        s.x_to_y[x] = y;
        s.y_to_x[y] = x;
        return true;
      }
    }
    return false;
  };
  for (int x = 0; x < g.x_size; ++x) augment(x, x);
  return s;
}

// X vertices reachable by alternating paths from unmatched X vertices.
std::vector<bool> alternating_reach(const BipartiteGraph& g, const MatchState& s) {
  std::vector<bool> in_z(g.x_size, false);
  std::vector<int> stack;
  for (int x = 0; x < g.x_size; ++x)
    if (s.x_to_y[x] < 0) {
      in_z[x] = true;
      stack.push_back(x);
    }
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : g.adjacency[x]) {
      int next = s.y_to_x[y];
      if (next >= 0 && !in_z[next]) {
        in_z[next] = true;
        stack.push_back(next);
      }
    }
  }
  return in_z;
}

Matching to_matching(const MatchState& s, const std::vector<bool>* excluded) {
  Matching m;
  for (int x = 0; x < static_cast<int>(s.x_to_y.size()); ++x)
    if (s.x_to_y[x] >= 0 && !(excluded && (*excluded)[x])) m.pairs.emplace_back(x, s.x_to_y[x]);
  return m;
}

}  // namespace

BipartiteGraph make_graph(int x_size, int y_size, std::vector<std::vector<int>> adjacency) {
  if (x_size < 0 || y_size < 0 || static_cast<int>(adjacency.size()) != x_size)
    throw MmsError(ErrorCode::shape_mismatch, "adjacency does not match the X side");
  for (auto& row : adjacency) {
    std::ranges::sort(row);
    if (std::ranges::adjacent_find(row) != row.end())
      throw MmsError(ErrorCode::shape_mismatch, "duplicate edge");
    if (!row.empty() && (row.front() < 0 || row.back() >= y_size))
      throw MmsError(ErrorCode::shape_mismatch, "edge endpoint out of range");
  }
  return BipartiteGraph{x_size, y_size, std::move(adjacency)};
}

Matching max_matching(const BipartiteGraph& g) { return to_matching(kuhn(g), nullptr); }

Matching envy_free_matching(const BipartiteGraph& g) {
  MatchState s = kuhn(g);
  std::vector<bool> z = alternating_reach(g, s);
  return to_matching(s, &z);
}

bool is_envy_free(const BipartiteGraph& g, const Matching& matching) {
  std::vector<bool> x_matched(g.x_size, false), y_matched(g.y_size, false);
  for (auto [x, y] : matching.pairs) {
    x_matched[x] = true;
    y_matched[y] = true;
  }
  for (int x = 0; x < g.x_size; ++x) {
    if (x_matched[x]) continue;
    for (int y : g.adjacency[x])
      if (y_matched[y]) return false;
  }
  return true;
}

std::vector<int> neighborhood(const BipartiteGraph& g, const std::vector<int>& x_subset) {
  std::vector<bool> mark(g.y_size, false);
  for (int x : x_subset)
    for (int y : g.adjacency[x]) mark[y] = true;
  std::vector<int> out;
  for (int y = 0; y < g.y_size; ++y)
    if (mark[y]) out.push_back(y);
  return out;
}

std::optional<HallSplit> hall_deficient_split(const BipartiteGraph& g) {
  MatchState s = kuhn(g);
  if (std::ranges::none_of(s.x_to_y, [](int y) { return y < 0; })) return std::nullopt;
  std::vector<bool> z = alternating_reach(g, s);
  HallSplit split;
  for (int x = 0; x < g.x_size; ++x)
    if (z[x]) split.x_subset.push_back(x);
  split.y_subset = neighborhood(g, split.x_subset);
  return split;
}

}  // namespace mmsalloc
