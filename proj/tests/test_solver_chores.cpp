#include <random>

#include "doctest.h"
#include "engineered.hpp"
#include "mmsalloc/error.hpp"
#include "mmsalloc/json_io.hpp"
#include "mmsalloc/solver_chores.hpp"
#include "oracles.hpp"

using namespace mmsalloc;

namespace {

SolveOutcome solved(const Instance& inst) {
  SolveOutcome out = solve_chores(inst);
  REQUIRE_MESSAGE(out.status == SolveStatus::solved, out.diagnostic);
  CHECK(oracle::certified(inst, *out.allocation));
  ReplayReport rep = replay_trace(to_ordered(inst).instance, *out.trace, true);
  CHECK(rep.partition_ok);
  for (const StepVerdict& v : rep.steps) CHECK_MESSAGE(v.valid, v.reason);
  return out;
}

}  // namespace

TEST_CASE("random chores instances") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 2), m = static_cast<int>(rng() % (n + 6));
    if (m > 8) continue;
    solved(oracle::random_instance(rng, ItemKind::chores, n, m, 20));
  }
  CHECK_THROWS_AS(solve_chores(make_instance(ItemKind::goods, {{1}})), MmsError);
}

TEST_CASE("every chore is worth at least the share") {
  std::mt19937_64 rng(72);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 3), m = n + static_cast<int>(rng() % 4);
    if (m > 8) continue;
    Instance inst = oracle::random_instance(rng, ItemKind::chores, n, m, 20);
    for (AgentId i = 1; i <= n; ++i) {
      const Rational mu = oracle::mms(inst, i);
      for (ItemId j = 1; j <= m; ++j) CHECK(inst.value(i, j) >= mu);
    }
  }
}

TEST_CASE("engineered chores instances take their branch") {
  for (const EngineeredChores& e : engineered_chores()) {
    CAPTURE(e.name);
    Instance inst = instance_from_json(Json::parse(e.json));
    SolveOutcome out = solved(inst);
    if (!e.final_rule.empty()) CHECK(out.trace->final_rule == e.final_rule);
    if (!e.branch.empty()) {
      bool seen = false;
      for (const ReductionStep& s : out.trace->steps) seen = seen || s.branch == e.branch;
      CHECK(seen);
    }
  }
}

TEST_CASE("pair tails after normalization are all the same pair") {
  Instance inst = instance_from_json(Json::parse(engineered_chores()[4].json));
  OrderedInstance o = to_ordered(inst);
  const int n = inst.n();
  int pairs = 0;
  for (AgentId i = 1; i <= n; ++i) {
    StructuredPartition sp = structured_partition_chores(o, i);
    for (const Bundle& b : sp.partition.bundles)
      if (b.size() == 2 && b.min() >= n) {
        CHECK(b == Bundle{n, n + 1});
        ++pairs;
      }
  }
  CHECK(pairs >= 3);
}
