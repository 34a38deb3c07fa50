#include "mmsalloc/solver_goods.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mmsalloc/error.hpp"
#include "mmsalloc/matching.hpp"
#include "partition_search.hpp"
#include "solve_engine.hpp"

namespace mmsalloc {

namespace {

using detail::Action;

bool class_solvable(int n, int c, const BoundParams& bounds) {
  if (n <= 2 || c <= 5) return true;
  if (c == 6) return n >= 4;
  if (c == 7) return n >= 8;
  return BigInt(n) >= n_c_goods(c, bounds);
}

// A reduction is taken unless it leaves a class with a guarantee for one without.
bool keeps_class(int n, int c, int n2, int c2, const BoundParams& bounds) {
  return !class_solvable(n, c, bounds) || class_solvable(n2, c2, bounds);
}

ReductionStep make_step(RuleId rule, std::string branch, std::vector<Award> awards) {
  return ReductionStep{rule, std::move(branch), std::move(awards)};
}

int removed_items(const ReductionStep& s) {
  int k = 0;
  for (const Award& a : s.awards) k += static_cast<int>(a.bundle.size());
  return k;
}

bool reaches(const Instance& inst, AgentId i, ItemId j, const MuVector& mu) { return inst.value(i, j) >= mu[i - 1]; }

PartitionType type_of(std::initializer_list<int> cards) { return PartitionType{std::vector<int>(cards)}; }

// Dominated pair among {g, partner} bundles: the largest partner, lowest agent on ties.
struct PairPick {
  Bundle bundle;
  AgentId owner = 0;
};

PairPick dominated_pair(ItemId g, const std::vector<std::pair<AgentId, ItemId>>& sharers) {
  PairPick p;
  ItemId worst = 0;
  for (auto [agent, partner] : sharers)
    if (partner > worst) {
      worst = partner;
      p.owner = agent;
    }
  p.bundle = Bundle{g, worst};
  return p;
}

// Partner of g when g sits in a bundle of size two.
std::optional<ItemId> pair_partner(const Allocation& partition, ItemId g) {
  int b = partition.bundle_of(g);
  if (b < 0 || partition.bundles[b].size() != 2) return std::nullopt;
  const Bundle& pair = partition.bundles[b];
  return pair.min() == g ? pair.max() : pair.min();
}

std::vector<std::vector<int>> combinations(int size, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int x = start; x < size; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::optional<Allocation> threshold_allocation(const Instance& inst, const ReductionStep& step, const MuVector& mu,
                                               uint64_t cap) {
  Instance rest = apply(inst, step);
  return find_allocation_meeting(rest, detail::remaining_mu(mu, step), cap);
}

// ---------------------------------------------------------------------------
// Four agents, ten goods.
Action c6_action(const Instance& cur, const MuVector& mu, const SolverOptions& opts) {
  const OrderedInstance ordered = detail::as_ordered(cur);
  const int n = cur.n();
  bool any_first = false;
  for (AgentId i = 1; i <= n; ++i) any_first = any_first || reaches(cur, i, 1, mu);
  if (!any_first) return Action::step(reduce_2n2(ordered, mu, opts.oracle));
  if (auto s = reduce_pair_from_high(ordered, mu)) return Action::step(*s);

  for (AgentId i = 1; i <= n; ++i) {
    if (!reaches(cur, i, 2, mu)) continue;
    for (AgentId o = 1; o <= n; ++o)
      if (o != i && reaches(cur, o, 2, mu))
        return Action::step(make_step(RuleId::single_item, "two_high_goods", {{i, Bundle{1}}, {o, Bundle{2}}}));
  }

  // Good 1 goes to one of its high valuers; the other three share the rest
  // with their shares in this instance as thresholds.
  const std::vector<PartitionType> types = {type_of({1, 2, 2, 5}), type_of({1, 2, 3, 4}), type_of({1, 3, 3, 3}),
                                            type_of({2, 2, 2, 4}), type_of({2, 2, 3, 3})};
  std::vector<std::vector<bool>> has(n + 1, std::vector<bool>(types.size(), false));
  for (AgentId i = 1; i <= n; ++i)
    for (size_t t = 0; t < types.size(); ++t) has[i][t] = find_typed_partition(cur, i, mu[i - 1], types[t]).has_value();

  std::vector<std::pair<int, AgentId>> order;
  for (AgentId r = 1; r <= n; ++r) {
    if (!reaches(cur, r, 1, mu)) continue;
    int flexible = 0, nine = 0, split = 0;
    for (AgentId j = 1; j <= n; ++j) {
      if (j == r) continue;
      flexible += has[j][0] || has[j][3] || has[j][4];
      split += has[j][1];
      nine += has[j][2];
    }
    int score = flexible > 0 ? 0 : (nine >= 3 || split >= 2) ? 1 : 2;
    order.emplace_back(score, r);
  }
  std::ranges::sort(order);
  for (auto [score, r] : order) {
    ReductionStep step = make_step(RuleId::single_item, "first_good_then_threshold", {{r, Bundle{1}}});
    if (auto alloc = threshold_allocation(cur, step, mu, opts.search_cap)) {
      Action a = Action::step(step);
      a.final = FinalAllocation{*alloc, "threshold_search"};
      return a;
    }
  }
  return Action::give_up("no recipient of good 1 leaves a threshold allocation");
}

// ---------------------------------------------------------------------------
// Eight agents, fifteen goods.
std::optional<Action> c7_efm(const OrderedInstance& ordered, AgentId i, const Allocation& partition, const MuVector& mu,
                             const char* branch) {
  StructuredPartition sp{partition, count_singletons(partition)};
  auto r = efm_step(ordered, i, sp, mu);
  if (!r) return std::nullopt;
  if (auto* s = std::get_if<ReductionStep>(&*r))
    s->branch = branch;
  else
    std::get<FinalAllocation>(*r).rule = std::string(branch) + "_matching";
  return detail::from_step_or_allocation(std::move(*r));
}

Action c7_action(const Instance& cur, const MuVector& mu, const SolverOptions& opts) {
  const OrderedInstance ordered = detail::as_ordered(cur);
  const int n = cur.n();

  for (AgentId i = 1; i <= n; ++i) {
    if (reaches(cur, i, 3, mu)) continue;
    StructuredPartition sp = structured_partition_goods(ordered, i, mms_value(cur, i, opts.oracle));
    if (auto a = c7_efm(ordered, i, sp.partition, mu, "low_third_good")) return *a;
  }

  for (AgentId i = 1; i <= n; ++i)
    if (mu[i - 1].sign() == 0 || bundle_value(cur, i, Bundle{8, 9}) >= mu[i - 1])
      return Action::step(make_step(RuleId::pigeonhole_pair, "", {{i, Bundle{8, 9}}}));

  for (AgentId i = 1; i <= n; ++i) {
    if (!reaches(cur, i, 6, mu)) continue;
    std::vector<AgentId> six, five;
    for (AgentId o = 1; o <= n; ++o) {
      if (o == i) continue;
      if (reaches(cur, o, 6, mu)) six.push_back(o);
      if (reaches(cur, o, 5, mu)) five.push_back(o);
    }
    if (six.empty()) return Action::step(make_step(RuleId::pair_from_high, "sixth_good_unique", {{i, Bundle{6, 15}}}));
    if (five.size() == 1)
      return Action::step(
          make_step(RuleId::pair_from_high, "sixth_and_fifth", {{i, Bundle{6, 14}}, {five[0], Bundle{5, 15}}}));
    const AgentId a5 = five[0], a4 = five[1];
    std::vector<Award> awards{{a4, Bundle{4}}, {a5, Bundle{5}}, {i, Bundle{6}}};
    ItemId next = 1;
    for (AgentId o = 1; o <= n && next <= 3; ++o)
      if (o != i && o != a5 && o != a4) awards.push_back({o, Bundle{next++}});
    return Action::step(make_step(RuleId::single_item, "six_singletons", std::move(awards)));
  }

  const std::vector<PartitionType> few_large = {type_of({1, 1, 1, 2, 2, 2, 2, 4}), type_of({1, 1, 1, 1, 2, 2, 2, 5}),
                                                type_of({1, 1, 1, 1, 1, 2, 2, 6})};
  for (AgentId i = 1; i <= n; ++i)
    for (const PartitionType& t : few_large)
      if (auto p = find_typed_partition(cur, i, mu[i - 1], t))
        if (auto a = c7_efm(ordered, i, *p, mu, "one_large_bundle")) return *a;

  // Type classes: 1 = five singletons, then 3, 4, 5 by singleton count.
  const std::vector<std::pair<int, PartitionType>> classes = {
      {1, type_of({1, 1, 1, 1, 1, 2, 3, 5})}, {1, type_of({1, 1, 1, 1, 1, 2, 4, 4})},
      {1, type_of({1, 1, 1, 1, 1, 3, 3, 4})}, {3, type_of({1, 1, 1, 1, 2, 2, 3, 4})},
      {4, type_of({1, 1, 1, 1, 2, 3, 3, 3})}, {5, type_of({1, 1, 1, 2, 2, 2, 3, 3})}};
  std::vector<int> cls(n + 1, 0);
  std::vector<Allocation> part(n + 1);
  for (AgentId i = 1; i <= n; ++i) {
    for (const auto& [id, t] : classes)
      if (auto p = find_typed_partition(cur, i, mu[i - 1], t)) {
        cls[i] = id;
        part[i] = *p;
        break;
      }
    if (!cls[i]) return Action::give_up("agent " + std::to_string(i) + " has no partition of a known type");
  }
  auto agents_of = [&](int id) {
    std::vector<AgentId> out;
    for (AgentId i = 1; i <= n; ++i)
      if (cls[i] == id) out.push_back(i);
    return out;
  };

  const std::vector<AgentId> five = agents_of(1);
  if (!five.empty() && five.size() <= 4) {
    std::vector<Award> awards;
    for (size_t k = 0; k + 1 < five.size(); ++k) awards.push_back({five[k], Bundle{static_cast<ItemId>(k + 1)}});
    awards.push_back({five.back(), Bundle{5, 15}});
    return Action::step(make_step(RuleId::pair_from_high, "few_five_singleton", std::move(awards)));
  }
  if (five.size() >= 5) {
    for (const auto& pick : combinations(static_cast<int>(five.size()), 5)) {
      std::vector<AgentId> chosen;
      for (int x : pick) chosen.push_back(five[x]);
      std::vector<Award> base;
      ItemId next = 1;
      for (AgentId o = 1; o <= n; ++o)
        if (std::ranges::find(chosen, o) == chosen.end()) base.push_back({o, Bundle{next++}});
      for (AgentId a4 : chosen)
        for (AgentId a5 : chosen) {
          if (a4 == a5) continue;
          std::vector<Award> awards = base;
          awards.push_back({a4, Bundle{4}});
          awards.push_back({a5, Bundle{5}});
          ReductionStep step = make_step(RuleId::single_item, "many_five_singleton", std::move(awards));
          if (auto alloc = threshold_allocation(cur, step, mu, opts.search_cap)) {
            Action a = Action::step(step);
            a.final = FinalAllocation{*alloc, "threshold_search"};
            return a;
          }
        }
    }
    return Action::give_up("no threshold allocation after the five-singleton awards");
  }

  const std::vector<AgentId> t4 = agents_of(4);
  if (t4.size() >= 7) {
    for (ItemId g = 5; g <= 7; ++g) {
      std::vector<std::pair<AgentId, ItemId>> sharers;
      for (AgentId a : t4)
        if (auto h = pair_partner(part[a], g)) sharers.push_back({a, *h});
      if (sharers.size() < 3) continue;
      for (const auto& pick : combinations(static_cast<int>(sharers.size()), 3)) {
        std::vector<std::pair<AgentId, ItemId>> trio;
        for (int x : pick) trio.push_back(sharers[x]);
        const PairPick b = dominated_pair(g, trio);
        std::vector<AgentId> rest;
        for (AgentId a : t4)
          if (std::ranges::none_of(trio, [&](const auto& s) { return s.first == a; })) rest.push_back(a);
        for (AgentId i : rest)
          for (AgentId i2 : rest) {
            if (i == i2) continue;
            std::vector<Award> awards;
            ItemId next = 1;
            for (AgentId o = 1; o <= n; ++o) {
              bool inside = o == i || o == i2 || std::ranges::any_of(trio, [&](const auto& s) { return s.first == o; });
              if (!inside) awards.push_back({o, Bundle{next++}});
            }
            const bool i_ok = bundle_value(cur, i, b.bundle) >= mu[i - 1];
            const bool i2_ok = bundle_value(cur, i2, b.bundle) >= mu[i2 - 1];
            if (!i_ok) {
              awards.push_back({i2_ok ? i2 : b.owner, b.bundle});
              return Action::step(make_step(RuleId::domination, "t4_pair_blocked", std::move(awards)));
            }
            if (!i2_ok) continue;  // the mirrored ordering handles it
            awards.push_back({i, b.bundle});
            awards.push_back({i2, Bundle{4}});
            ReductionStep step = make_step(RuleId::domination, "t4_pair_then_threshold", std::move(awards));
            if (auto alloc = threshold_allocation(cur, step, mu, opts.search_cap)) {
              Action a = Action::step(step);
              a.final = FinalAllocation{*alloc, "threshold_search"};
              return a;
            }
          }
      }
    }
    return Action::give_up("no t4 pair construction succeeded");
  }

  for (ItemId g = 5; g <= 7; ++g) {
    std::vector<std::pair<AgentId, ItemId>> sharers;
    for (AgentId a = 1; a <= n; ++a)
      if (auto h = pair_partner(part[a], g)) sharers.push_back({a, *h});
    if (sharers.size() < 4) continue;
    if (sharers.size() > 5) sharers.resize(5);
    std::vector<AgentId> group;
    for (auto& s : sharers) group.push_back(s.first);
    for (AgentId a = 1; a <= n && group.size() < 5; ++a)
      if (std::ranges::find(group, a) == group.end()) group.push_back(a);
    std::vector<Award> awards;
    ItemId next = 1;
    for (AgentId o = 1; o <= n; ++o)
      if (std::ranges::find(group, o) == group.end()) awards.push_back({o, Bundle{next++}});
    const PairPick b = dominated_pair(g, sharers);
    AgentId taker = b.owner;
    if (sharers.size() == 4) {
      AgentId odd = group.back();
      if (bundle_value(cur, odd, b.bundle) >= mu[odd - 1]) taker = odd;
    }
    awards.push_back({taker, b.bundle});
    return Action::step(make_step(RuleId::domination, "overlap_pair", std::move(awards)));
  }
  return Action::give_up("no good in 5..7 is shared by four two-good bundles");
}

// ---------------------------------------------------------------------------
Action goods_decide(detail::Engine& e) {
  const Instance& cur = e.current();
  const SolverOptions& opts = e.options();
  const int n = cur.n(), m = cur.m();
  if (m <= n) return Action::finish(detail::singleton_allocation(n, m), "singleton_base");
  const MuVector mu = mms_values(cur, opts.oracle);
  if (n == 2) {
    auto alloc = base_identical_partitions(cur, mu, opts.oracle);
    if (!alloc) throw MmsError(ErrorCode::internal_invariant_violation, "two-agent base failed");
    return Action::finish(*alloc, "two_agent_base");
  }
  const int c = m - n;
  if (c == 6 && n == 4) {
    Action a = c6_action(cur, mu, opts);
    if (!a.unresolved) return a;
  } else if (c == 7 && n == 8) {
    return c7_action(cur, mu, opts);
  } else {
    const OrderedInstance ordered = detail::as_ordered(cur);
    const BoundParams& b = opts.bounds;
    if (keeps_class(n, c, n - 1, c, b))
      if (auto s = reduce_single_item(cur, mu)) return Action::step(*s);
    if (keeps_class(n, c, n - 1, c - 1, b)) {
      if (auto s = reduce_pigeonhole_pair(ordered, mu)) return Action::step(*s);
      if (auto s = reduce_pair_from_high(ordered, mu)) return Action::step(*s);
      if (auto s = reduce_pair_blockable(cur, mu)) return Action::step(*s);
    }
    if (m <= 2 * n + 2 && n >= 3) {
      ReductionStep s = reduce_2n2(ordered, mu, opts.oracle);
      if (keeps_class(n, c, n - 1, m - removed_items(s) - (n - 1), b)) return Action::step(s);
    }
    if (c >= 8 && BigInt(n) >= n_c_goods(c, b))
      if (auto r = theorem1_step(ordered, c, mu, opts)) return detail::from_step_or_allocation(std::move(*r));
  }
  if (!detail::power_within(n, m, opts.search_cap))
    return Action::give_up("no constructive rule applies and " + std::to_string(n) + "^" + std::to_string(m) +
                           " exceeds the search cap");
  if (auto alloc = find_allocation_meeting(cur, e.original_mu_of_residual(), opts.search_cap))
    return Action::finish(*alloc, "exhaustive_fallback");
  return Action::give_up("exhaustive search found no allocation meeting the original shares");
}

}  // namespace

ReductionStep reduce_2n2(const OrderedInstance& ordered, const MuVector& mu, const OracleOptions& options) {
  const Instance& inst = ordered.instance;
  const int n = inst.n(), m = inst.m();
  if (inst.kind() != ItemKind::goods || n < 3 || m > 2 * n + 2)
    throw MmsError(ErrorCode::precondition_unmet, "needs ordered goods with n >= 3 and m <= 2n+2");
  for (AgentId i = 1; i <= n; ++i)
    if (reaches(inst, i, 1, mu)) return make_step(RuleId::single_item, "first_good", {{i, Bundle{1}}});
  if (auto s = reduce_pigeonhole_pair(ordered, mu)) return *s;

  std::vector<Allocation> witness;
  for (AgentId i = 1; i <= n; ++i) witness.push_back(mms_value(inst, i, options).witness);
  for (ItemId g = 1; g <= n - 1; ++g) {
    std::vector<std::pair<AgentId, ItemId>> sharers;
    for (AgentId i = 1; i <= n; ++i)
      if (auto h = pair_partner(witness[i - 1], g)) sharers.push_back({i, *h});
    if (static_cast<int>(sharers.size()) < n - 1) continue;
    const PairPick b = dominated_pair(g, sharers);
    if (static_cast<int>(sharers.size()) == n)
      return make_step(RuleId::domination, "shared_pair", {{b.owner, b.bundle}});
    AgentId odd = 1;
    while (std::ranges::any_of(sharers, [&](const auto& s) { return s.first == odd; })) ++odd;
    if (bundle_value(inst, odd, b.bundle) >= mu[odd - 1])
      return make_step(RuleId::domination, "shared_pair_to_outsider", {{odd, b.bundle}});
    return make_step(RuleId::domination, "shared_pair_blocked", {{b.owner, b.bundle}});
  }
  throw MmsError(ErrorCode::internal_invariant_violation, "no branch of the 2n+2 case split applies");
}

std::optional<StepOrAllocation> efm_step(const OrderedInstance& ordered, AgentId agent,
                                         const StructuredPartition& witness, const MuVector& mu) {
  const Instance& inst = ordered.instance;
  const int n = inst.n(), m = inst.m();
  const Allocation& part = witness.partition;
  if (mu[agent - 1].sign() == 0) throw MmsError(ErrorCode::precondition_unmet, "zero share goes to the pair rule");
  if (static_cast<int>(part.bundles.size()) != n || !part.is_partition_of(m))
    throw MmsError(ErrorCode::shape_mismatch, "witness is not a partition");
  const int small = static_cast<int>(std::ranges::count_if(part.bundles, [](const Bundle& b) { return b.size() < 3; }));
  if (small < n - 1) throw MmsError(ErrorCode::precondition_unmet, "fewer than n-1 bundles below three goods");

  auto likes = [&](AgentId a, int b) { return bundle_value(inst, a, part.bundles[b]) >= mu[a - 1]; };
  std::vector<std::vector<int>> adj(n);
  for (AgentId a = 1; a <= n; ++a)
    for (int b = 0; b < n; ++b)
      if (likes(a, b)) adj[a - 1].push_back(b);
  Matching full = max_matching(make_graph(n, n, adj));
  if (static_cast<int>(full.size()) == n) {
    Allocation alloc;
    alloc.bundles.resize(n);
    for (auto [x, y] : full.pairs) alloc.bundles[x] = part.bundles[y];
    return StepOrAllocation{FinalAllocation{alloc, "perfect_matching"}};
  }

  std::vector<int> small_bundles;
  for (int b = 0; b < n; ++b)
    if (part.bundles[b].size() <= 2) small_bundles.push_back(b);
  std::vector<AgentId> others;
  for (AgentId a = 1; a <= n; ++a)
    if (a != agent) others.push_back(a);
  std::vector<std::vector<int>> adj2(others.size());
  for (size_t x = 0; x < others.size(); ++x)
    for (size_t y = 0; y < small_bundles.size(); ++y)
      if (likes(others[x], small_bundles[y])) adj2[x].push_back(static_cast<int>(y));
  auto split = hall_deficient_split(
      make_graph(static_cast<int>(others.size()), static_cast<int>(small_bundles.size()), adj2));
  if (!split) throw MmsError(ErrorCode::internal_invariant_violation, "small bundles match all other agents");

  std::set<AgentId> deficient;
  for (int x : split->x_subset) deficient.insert(others[x]);
  std::set<int> crowded;
  for (int y : split->y_subset) crowded.insert(small_bundles[y]);
  std::vector<AgentId> h_agents;
  for (AgentId a = 1; a <= n; ++a)
    if (!deficient.contains(a)) h_agents.push_back(a);
  std::vector<int> h_bundles;
  for (int b : small_bundles)
    if (!crowded.contains(b)) h_bundles.push_back(b);
  std::vector<std::vector<int>> adj3(h_agents.size());
  for (size_t x = 0; x < h_agents.size(); ++x)
    for (size_t y = 0; y < h_bundles.size(); ++y)
      if (likes(h_agents[x], h_bundles[y])) adj3[x].push_back(static_cast<int>(y));
  Matching ef = envy_free_matching(
      make_graph(static_cast<int>(h_agents.size()), static_cast<int>(h_bundles.size()), adj3));
  if (ef.size() == 0) return std::nullopt;

  std::vector<bool> taken(m + 1, false);
  for (auto [x, y] : ef.pairs)
    for (ItemId j : part.bundles[h_bundles[y]]) taken[j] = true;
  ReductionStep step{RuleId::efm_batch, "", {}};
  std::vector<std::pair<AgentId, Bundle>> singles;
  for (auto [x, y] : ef.pairs) {
    const Bundle& b = part.bundles[h_bundles[y]];
    if (b.size() == 2)
      step.awards.push_back({h_agents[x], b});
    else
      singles.push_back({h_agents[x], b});
  }
  for (auto& [a, b] : singles) {
    ItemId worst = m;
    while (worst >= 1 && taken[worst]) --worst;
    if (worst < 1) throw MmsError(ErrorCode::internal_invariant_violation, "no good left to pad a singleton");
    taken[worst] = true;
    step.awards.push_back({a, b.with(worst)});
  }
  return StepOrAllocation{step};
}

std::optional<StepOrAllocation> theorem1_step(const OrderedInstance& ordered, int c, const MuVector& mu,
                                              const SolverOptions& options) {
  const Instance& inst = ordered.instance;
  const int n = inst.n(), m = inst.m();
  if (inst.kind() != ItemKind::goods || m != n + c || !(n > c && c >= 1))
    throw MmsError(ErrorCode::precondition_unmet, "needs ordered goods with m = n+c and n > c >= 1");

  const Bundle pigeon{n, n + 1};
  for (AgentId i = 1; i <= n; ++i)
    if (mu[i - 1].sign() == 0) return StepOrAllocation{make_step(RuleId::pigeonhole_pair, "zero_share", {{i, pigeon}})};

  std::vector<StructuredPartition> sp;
  std::vector<TailBundle> tails;
  for (AgentId i = 1; i <= n; ++i) {
    sp.push_back(structured_partition_goods(ordered, i, mms_value(inst, i, options.oracle)));
    std::optional<Bundle> best;
    for (const Bundle& b : sp.back().partition.bundles)
      if (!b.empty() && b.min() >= n && (!best || b.size() < best->size() || (b.size() == best->size() && b < *best)))
        best = b;
    if (!best) throw MmsError(ErrorCode::internal_invariant_violation, "agent without a tail bundle");
    tails.push_back(TailBundle{i, *best, detail::singleton_prefix(sp.back().partition)});
  }

  for (AgentId i = 1; i <= n; ++i)
    if (tails[i - 1].bundle.size() <= 2 && bundle_value(inst, i, pigeon) >= mu[i - 1])
      return StepOrAllocation{make_step(RuleId::pigeonhole_pair, "short_tail", {{i, pigeon}})};

  auto small_count = [](const Allocation& a) {
    return static_cast<int>(std::ranges::count_if(a.bundles, [](const Bundle& b) { return b.size() < 3; }));
  };
  for (AgentId i = 1; i <= n; ++i) {
    const int k = static_cast<int>(tails[i - 1].bundle.size());
    if (k < c - 1) continue;
    if (small_count(sp[i - 1].partition) >= n - 1) {
      if (auto r = efm_step(ordered, i, sp[i - 1], mu)) return r;
      continue;
    }
    if (k != c - 1) continue;
    // Leading goods 1..n-2 against the agents that value them.
    const int lead = n - 2;
    std::vector<std::vector<int>> adj(n);
    for (AgentId a = 1; a <= n; ++a)
      for (ItemId j = 1; j <= lead; ++j)
        if (reaches(inst, a, j, mu)) adj[a - 1].push_back(j - 1);
    BipartiteGraph g = make_graph(n, lead, adj);
    Matching mt = max_matching(g);
    ReductionStep step{RuleId::single_item, "leading_goods", {}};
    if (static_cast<int>(mt.size()) == lead) {
      for (auto [x, y] : mt.pairs) step.awards.push_back({x + 1, Bundle{y + 1}});
      return StepOrAllocation{step};
    }
    Matching ef = envy_free_matching(g);
    if (ef.size() == 0) continue;
    std::vector<bool> taken(m + 1, false);
    for (auto [x, y] : ef.pairs) taken[y + 1] = true;
    step.rule = RuleId::efm_batch;
    step.branch = "leading_goods_padded";
    for (auto [x, y] : ef.pairs) {
      ItemId worst = m;
      while (taken[worst]) --worst;
      taken[worst] = true;
      step.awards.push_back({x + 1, Bundle{y + 1, worst}});
    }
    return StepOrAllocation{step};
  }

  for (int k = 3; k <= c - 2; ++k) {
    const BigInt thr = std::max(BigInt(c - k + 1), n_c_goods(c - k + 1, options.bounds) + 1);
    if (thr > n) continue;
    for (const auto& [key, group] : group_tail_bundles(tails, k, c, n)) {
      if (BigInt(group.size()) < thr) continue;
      try {
        return StepOrAllocation{reduce_by_domination(ordered, group, ItemKind::goods, mu, thr.convert_to<int>())};
      } catch (const MmsError& e) {
        if (e.code() != ErrorCode::precondition_unmet) throw;
      }
    }
  }
  return std::nullopt;
}

SolveOutcome solve(const Instance& instance, const SolverOptions& options) {
  if (instance.kind() != ItemKind::goods) throw MmsError(ErrorCode::precondition_unmet, "goods solver got chores");
  detail::Engine engine(instance, options);
  return engine.run(goods_decide);
}

SolveOutcome solve_c6(const Instance& instance, const SolverOptions& options) {
  if (instance.n() == 3) throw MmsError(ErrorCode::n_equals_three, "three agents with n+6 goods are not covered");
  if (instance.m() > instance.n() + 6) throw MmsError(ErrorCode::precondition_unmet, "more than n+6 goods");
  return solve(instance, options);
}

SolveOutcome solve_c7(const Instance& instance, const SolverOptions& options) {
  if (instance.n() < 8) throw MmsError(ErrorCode::too_few_agents, "n+7 goods need at least 8 agents");
  if (instance.m() > instance.n() + 7) throw MmsError(ErrorCode::precondition_unmet, "more than n+7 goods");
  return solve(instance, options);
}

}  // namespace mmsalloc
