#include "mmsalloc/solver_chores.hpp"

#include <algorithm>

#include "mmsalloc/error.hpp"
#include "partition_search.hpp"
#include "solve_engine.hpp"

namespace mmsalloc {

namespace {

using detail::Action;

// Index of the bundle whose worst chore is at least n: smallest first, then
// lexicographic. -1 if there is none.
int tail_index(const Allocation& p, int n) {
  int best = -1;
  for (int b = 0; b < static_cast<int>(p.bundles.size()); ++b) {
    const Bundle& x = p.bundles[b];
    if (x.empty() || x.min() < n) continue;
    if (best < 0 || x.size() < p.bundles[best].size() ||
        (x.size() == p.bundles[best].size() && x < p.bundles[best]))
      best = b;
  }
  return best;
}

int count_below(const Allocation& p, size_t size) {
  return static_cast<int>(std::ranges::count_if(p.bundles, [&](const Bundle& b) { return b.size() < size; }));
}

bool mostly_small(const Allocation& p, int n) { return count_below(p, 2) >= n - 2 && count_below(p, 3) >= n - 1; }

// Agent i holds a partition with at least n-2 bundles below two chores and
// n-1 below three.
Action small_bundles(const Instance& cur, const MuVector& mu, AgentId i, const Allocation& p,
                     const std::string& prefix) {
  const int n = cur.n();
  std::vector<int> singles, rest;
  for (int b = 0; b < n; ++b) (p.bundles[b].size() < 2 ? singles : rest).push_back(b);

  auto hand_out = [&](Allocation& alloc, const std::vector<AgentId>& agents, std::vector<int> bundles) {
    for (size_t k = 0; k < agents.size(); ++k) alloc.bundles[agents[k] - 1] = p.bundles[bundles[k]];
  };
  std::vector<AgentId> others;
  for (AgentId a = 1; a <= n; ++a)
    if (a != i) others.push_back(a);

  if (static_cast<int>(singles.size()) >= n - 1) {
    Allocation alloc;
    alloc.bundles.resize(n);
    std::vector<int> order = singles;
    order.insert(order.end(), rest.begin(), rest.end());
    hand_out(alloc, others, std::vector<int>(order.begin(), order.begin() + (n - 1)));
    alloc.bundles[i - 1] = p.bundles[order[n - 1]];
    return Action::finish(alloc, prefix + "_mostly_singletons");
  }

  int pair = -1;
  for (int b : rest)
    if (p.bundles[b].size() == 2 && (pair < 0)) pair = b;
  if (pair < 0 || rest.size() != 2)
    throw MmsError(ErrorCode::internal_invariant_violation, "small-bundle partition without its pair bundle");
  const int other = rest[0] == pair ? rest[1] : rest[0];
  const Bundle& B = p.bundles[pair];
  for (AgentId o : others) {
    if (bundle_value(cur, o, B) < mu[o - 1]) continue;
    Allocation alloc;
    alloc.bundles.resize(n);
    alloc.bundles[o - 1] = B;
    alloc.bundles[i - 1] = p.bundles[other];
    std::vector<AgentId> left;
    for (AgentId a : others)
      if (a != o) left.push_back(a);
    hand_out(alloc, left, singles);
    return Action::finish(alloc, prefix + "_pair_to_other");
  }
  return Action::step(ReductionStep{RuleId::pair_blockable, prefix + "_pair_to_owner", {{i, B}}});
}

Action chores_decide(detail::Engine& e) {
  const Instance& cur = e.current();
  const SolverOptions& opts = e.options();
  const int n = cur.n(), m = cur.m();
  if (m <= n) return Action::finish(detail::singleton_allocation(n, m), "singleton_base");
  const MuVector mu = mms_values(cur, opts.oracle);
  for (AgentId i = 1; i <= n; ++i)
    for (ItemId j = 1; j <= m; ++j)
      if (cur.value(i, j) < mu[i - 1])
        throw MmsError(ErrorCode::internal_invariant_violation, "a single chore falls below its agent's share");

  const int c = m - n;
  if (n > c) {
    const OrderedInstance ordered = detail::as_ordered(cur);
    std::vector<StructuredPartition> sp;
    std::vector<int> tail(n + 1, -1);
    for (AgentId i = 1; i <= n; ++i) {
      sp.push_back(structured_partition_chores(ordered, i, mu[i - 1]));
      tail[i] = tail_index(sp.back().partition, n);
      if (tail[i] < 0) throw MmsError(ErrorCode::internal_invariant_violation, "agent without a tail bundle");
    }

    for (AgentId i = 1; i <= n; ++i) {
      const Allocation& p = sp[i - 1].partition;
      if (static_cast<int>(p.bundles[tail[i]].size()) < c) continue;
      Allocation q = p;
      if (count_below(q, 2) < n - 2) q = singleton_surgery_chores(q, n, m, tail[i]);
      if (mostly_small(q, n)) return small_bundles(cur, mu, i, q, "large_tail");
    }
    for (AgentId i = 1; i <= n; ++i)
      if (mostly_small(sp[i - 1].partition, n)) return small_bundles(cur, mu, i, sp[i - 1].partition, "small_bundles");

    std::vector<TailBundle> tails;
    for (AgentId i = 1; i <= n; ++i)
      tails.push_back(TailBundle{i, sp[i - 1].partition.bundles[tail[i]], detail::singleton_prefix(sp[i - 1].partition)});
    for (int k = 2; k <= c - 1; ++k) {
      const BigInt thr = std::max(BigInt(c - k + 2), n_c_chores(c - k + 1, opts.bounds) + 1);
      if (thr > n) continue;
      for (const auto& [key, group] : group_tail_bundles(tails, k, c, n)) {
        if (BigInt(group.size()) < thr) continue;
        try {
          ReductionStep s = reduce_by_domination(ordered, group, ItemKind::chores, mu, thr.convert_to<int>());
          s.branch = k == 2 ? "pair_group" : "tail_group";
          return Action::step(s);
        } catch (const MmsError& err) {
          if (err.code() != ErrorCode::precondition_unmet) throw;
        }
      }
    }
  }

  if (!detail::power_within(n, m, opts.search_cap))
    return Action::give_up("no constructive rule applies and " + std::to_string(n) + "^" + std::to_string(m) +
                           " exceeds the search cap");
  if (auto alloc = find_allocation_meeting(cur, e.original_mu_of_residual(), opts.search_cap))
    return Action::finish(*alloc, "exhaustive_fallback");
  return Action::give_up("exhaustive search found no allocation meeting the original shares");
}

}  // namespace

SolveOutcome solve_chores(const Instance& instance, const SolverOptions& options) {
  if (instance.kind() != ItemKind::chores) throw MmsError(ErrorCode::precondition_unmet, "chores solver got goods");
  detail::Engine engine(instance, options);
  return engine.run(chores_decide);
}

}  // namespace mmsalloc
