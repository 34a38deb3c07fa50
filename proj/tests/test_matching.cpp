#include <random>

#include "doctest.h"
#include "mmsalloc/error.hpp"
#include "mmsalloc/matching.hpp"
#include "oracles.hpp"

using namespace mmsalloc;

namespace {

BipartiteGraph random_graph(std::mt19937_64& rng, int xs, int ys, int density) {
  std::vector<std::vector<int>> adj(xs);
  for (int x = 0; x < xs; ++x)
    for (int y = 0; y < ys; ++y)
      if (static_cast<int>(rng() % 100) < density) adj[x].push_back(y);
  return make_graph(xs, ys, std::move(adj));
}

bool is_matching(const BipartiteGraph& g, const Matching& m) {
  std::vector<bool> ux(g.x_size, false), uy(g.y_size, false);
  for (auto [x, y] : m.pairs) {
    if (ux[x] || uy[y]) return false;
    if (std::find(g.adjacency[x].begin(), g.adjacency[x].end(), y) == g.adjacency[x].end()) return false;
    ux[x] = uy[y] = true;
  }
  return true;
}

}  // namespace

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(make_graph(1, 1, {{1}}), MmsError);
  CHECK_THROWS_AS(make_graph(1, 2, {{0, 0}}), MmsError);
  CHECK_THROWS_AS(make_graph(2, 1, {{0}}), MmsError);
}

TEST_CASE("small matchings") {
  CHECK(max_matching(make_graph(1, 1, {{0}})).size() == 1);
  CHECK(max_matching(make_graph(3, 3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}})).size() == 3);
  CHECK(max_matching(make_graph(2, 1, {{0}, {0}})).size() == 1);

  BipartiteGraph one = make_graph(1, 1, {{0}});
  CHECK(envy_free_matching(one).pairs == std::vector<std::pair<int, int>>{{0, 0}});
  BipartiteGraph star = make_graph(2, 1, {{0}, {0}});
  CHECK(envy_free_matching(star).size() == 0);
  BipartiteGraph cross = make_graph(2, 2, {{0, 1}, {0}});
  Matching m = envy_free_matching(cross);
  CHECK(m.pairs == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
  CHECK(is_envy_free(cross, m));

  auto split = hall_deficient_split(star);
  REQUIRE(split);
  CHECK(split->x_subset == std::vector<int>{0, 1});
  CHECK(split->y_subset == std::vector<int>{0});
  CHECK_FALSE(hall_deficient_split(cross));
}

TEST_CASE("every graph up to four by four") {
  for (int xs = 1; xs <= 4; ++xs)
    for (int ys = 1; ys <= 4; ++ys) {
      const int cells = xs * ys;
      for (int mask = 0; mask < (1 << cells); ++mask) {
        std::vector<std::vector<int>> adj(xs);
        for (int bit = 0; bit < cells; ++bit)
          if (mask >> bit & 1) adj[bit / ys].push_back(bit % ys);
        BipartiteGraph g = make_graph(xs, ys, adj);
        Matching ef = envy_free_matching(g);
        CHECK(is_matching(g, ef));
        CHECK(oracle::envy_free(g, ef));
        std::vector<int> all(xs);
        for (int x = 0; x < xs; ++x) all[x] = x;
        if (static_cast<int>(neighborhood(g, all).size()) >= xs) CHECK(ef.size() > 0);
        CHECK((ef.size() > 0) == oracle::nonempty_envy_free_exists(g));
        CHECK(static_cast<int>(max_matching(g).size()) == oracle::max_matching_size(g));
      }
    }
}

TEST_CASE("random graphs up to eight by eight") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 2000; ++t) {
    const int xs = 1 + static_cast<int>(rng() % 8), ys = 1 + static_cast<int>(rng() % 8);
    BipartiteGraph g = random_graph(rng, xs, ys, 10 + static_cast<int>(rng() % 60));
    Matching mm = max_matching(g);
    CHECK(is_matching(g, mm));
    Matching ef = envy_free_matching(g);
    CHECK(is_matching(g, ef));
    CHECK(is_envy_free(g, ef));
    CHECK(oracle::envy_free(g, ef));
    std::vector<int> all(xs);
    for (int x = 0; x < xs; ++x) all[x] = x;
    if (static_cast<int>(neighborhood(g, all).size()) >= xs) CHECK(ef.size() > 0);

    auto split = hall_deficient_split(g);
    CHECK(split.has_value() == (static_cast<int>(mm.size()) < xs));
    if (split) {
      CHECK(split->y_subset == neighborhood(g, split->x_subset));
      CHECK(split->x_subset.size() > split->y_subset.size());
    }
  }
}
