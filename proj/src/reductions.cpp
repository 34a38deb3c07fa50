#include "mmsalloc/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "mmsalloc/error.hpp"
#include "mmsalloc/matching.hpp"

namespace mmsalloc {

namespace {

constexpr const char* kRuleNames[] = {"single_item", "pair_blockable", "pigeonhole_pair",         "pair_from_high",
                                      "domination",  "efm_batch",      "identical_partition_base", "two_agent_base"};

ReductionStep single_award(RuleId rule, AgentId agent, Bundle bundle) {
  return ReductionStep{rule, "", {Award{agent, std::move(bundle)}}};
}

}  // namespace

const char* to_string(RuleId rule) { return kRuleNames[static_cast<int>(rule)]; }

RuleId parse_rule_id(std::string_view text) {
  for (int r = 0; r < static_cast<int>(std::size(kRuleNames)); ++r)
    if (text == kRuleNames[r]) return static_cast<RuleId>(r);
  throw MmsError(ErrorCode::parse_error, "unknown rule '" + std::string(text) + "'");
}

std::optional<ReductionStep> reduce_single_item(const Instance& instance, const MuVector& mu) {
  if (instance.kind() != ItemKind::goods) return std::nullopt;
  for (ItemId j = instance.m(); j >= 1; --j)
    for (AgentId i = 1; i <= instance.n(); ++i)
      if (instance.value(i, j) >= mu[i - 1]) return single_award(RuleId::single_item, i, Bundle{j});
  return std::nullopt;
}

std::optional<ReductionStep> reduce_pair_blockable(const Instance& instance, const MuVector& mu) {
  const int n = instance.n(), m = instance.m();
  for (ItemId b = m; b >= 2; --b)
    for (ItemId a = b - 1; a >= 1; --a) {
      const Bundle pair{a, b};
      for (AgentId i = 1; i <= n; ++i) {
        if (bundle_value(instance, i, pair) < mu[i - 1]) continue;
        bool blocked = false;
        for (AgentId o = 1; o <= n && !blocked; ++o)
          blocked = o != i && bundle_value(instance, o, pair) > mu[o - 1];
        if (!blocked) return single_award(RuleId::pair_blockable, i, pair);
      }
    }
  return std::nullopt;
}

std::optional<ReductionStep> reduce_pigeonhole_pair(const OrderedInstance& ordered, const MuVector& mu) {
  const Instance& inst = ordered.instance;
  const int n = inst.n();
  if (inst.kind() != ItemKind::goods || inst.m() < n + 1) return std::nullopt;
  const Bundle pair{n, n + 1};
  for (AgentId i = 1; i <= n; ++i)
    if (bundle_value(inst, i, pair) >= mu[i - 1]) return single_award(RuleId::pigeonhole_pair, i, pair);
  return std::nullopt;
}

std::optional<ReductionStep> reduce_pair_from_high(const OrderedInstance& ordered, const MuVector& mu) {
  const Instance& inst = ordered.instance;
  const int n = inst.n(), m = inst.m();
  if (inst.kind() != ItemKind::goods) return std::nullopt;
  for (ItemId j = 1; j < m; ++j) {
    AgentId only = 0;
    int count = 0;
    for (AgentId i = 1; i <= n; ++i)
      if (inst.value(i, j) >= mu[i - 1]) {
        ++count;
        only = i;
      }
    if (count == 1) return single_award(RuleId::pair_from_high, only, Bundle{j, m});
  }
  return std::nullopt;
}

ReductionStep reduce_by_domination(const OrderedInstance& ordered, const std::vector<TailBundle>& group,
                                   ItemKind kind, const MuVector& mu, int keep) {
  const Instance& inst = ordered.instance;
  const int n = inst.n();
  const TailBundle picked = pick_dominated(group, kind);
  if (keep < 1 || keep > n) throw MmsError(ErrorCode::precondition_unmet, "staying group size out of range");
  const int q = n - keep;

  std::vector<AgentId> staying{picked.agent};
  std::set<AgentId> seen{picked.agent};
  std::vector<TailBundle> members = group;
  std::ranges::stable_sort(members, [](const TailBundle& a, const TailBundle& b) { return a.agent < b.agent; });
  for (const TailBundle& t : members) {
    if (static_cast<int>(staying.size()) == keep) break;
    if (seen.contains(t.agent) || t.singleton_prefix < q) continue;
    bool covered = kind == ItemKind::goods ? dominates(t.bundle, picked.bundle).has_value()
                                           : dominates(picked.bundle, t.bundle).has_value();
    if (!covered) continue;
    seen.insert(t.agent);
    staying.push_back(t.agent);
  }
  if (static_cast<int>(staying.size()) < keep)
    throw MmsError(ErrorCode::precondition_unmet, "too few group members keep the leading items as singletons");
  if (bundle_value(inst, picked.agent, picked.bundle) < mu[picked.agent - 1])
    throw MmsError(ErrorCode::precondition_unmet, "picked bundle is below its owner's share");
  if (!picked.bundle.empty() && picked.bundle.min() <= q)
    throw MmsError(ErrorCode::precondition_unmet, "picked bundle overlaps the leading items");

  std::vector<AgentId> others;
  for (AgentId i = 1; i <= n; ++i)
    if (!seen.contains(i)) others.push_back(i);
  std::vector<std::vector<int>> adj(others.size());
  for (size_t x = 0; x < others.size(); ++x)
    for (ItemId j = 1; j <= q; ++j)
      if (inst.value(others[x], j) >= mu[others[x] - 1]) adj[x].push_back(j - 1);
  Matching mt = max_matching(make_graph(static_cast<int>(others.size()), q, std::move(adj)));
  if (static_cast<int>(mt.size()) != q)
    throw MmsError(ErrorCode::precondition_unmet, "leading items cannot be matched to the remaining agents");

  ReductionStep step{RuleId::domination, "", {}};
  for (auto [x, y] : mt.pairs) step.awards.push_back(Award{others[x], Bundle{y + 1}});
  step.awards.push_back(Award{picked.agent, picked.bundle});
  return step;
}

std::optional<Allocation> base_identical_partitions(const Instance& instance, const MuVector& mu,
                                                    const OracleOptions& options) {
  const int n = instance.n();
  std::vector<Allocation> candidates;
  for (AgentId i = 1; i <= n; ++i) {
    Allocation w = mms_value(instance, i, options).witness;
    if (std::ranges::find(candidates, w) == candidates.end()) candidates.push_back(std::move(w));
  }
  for (const Allocation& p : candidates) {
    std::vector<AgentId> outsiders;
    for (AgentId i = 1; i <= n; ++i)
      if (!is_mms_partition(instance, i, mu[i - 1], p)) outsiders.push_back(i);
    if (outsiders.size() > 1) continue;
    Allocation out;
    out.bundles.resize(n);
    std::vector<bool> used(n, false);
    if (!outsiders.empty()) {
      AgentId odd = outsiders.front();
      int best = 0;
      for (int b = 1; b < n; ++b)
        if (bundle_value(instance, odd, p.bundles[b]) > bundle_value(instance, odd, p.bundles[best])) best = b;
      out.bundles[odd - 1] = p.bundles[best];
      used[best] = true;
    }
    int next = 0;
    for (AgentId i = 1; i <= n; ++i) {
      if (!outsiders.empty() && i == outsiders.front()) continue;
      while (used[next]) ++next;
      out.bundles[i - 1] = p.bundles[next];
      used[next] = true;
    }
    return out;
  }
  return std::nullopt;
}

Instance apply(const Instance& instance, const ReductionStep& step) {
  std::vector<bool> agent_gone(instance.n() + 1, false), item_gone(instance.m() + 1, false);
  for (const Award& a : step.awards) {
    if (a.agent < 1 || a.agent > instance.n() || agent_gone[a.agent])
      throw MmsError(ErrorCode::dangling_reference, "agent " + std::to_string(a.agent) + " is not available");
    agent_gone[a.agent] = true;
    for (ItemId j : a.bundle) {
      if (j < 1 || j > instance.m() || item_gone[j])
        throw MmsError(ErrorCode::dangling_reference, "item " + std::to_string(j) + " is not available");
      item_gone[j] = true;
    }
  }
  std::vector<AgentId> agents;
  std::vector<ItemId> items;
  for (AgentId i = 1; i <= instance.n(); ++i)
    if (!agent_gone[i]) agents.push_back(i);
  for (ItemId j = 1; j <= instance.m(); ++j)
    if (!item_gone[j]) items.push_back(j);
  if (agents.empty() && !items.empty())
    throw MmsError(ErrorCode::dangling_reference, "items left over after removing every agent");
  return sub_instance(instance, agents, items);
}

StepVerdict check_step(const Instance& instance, const ReductionStep& step, const OracleOptions& options) {
  Instance residual;
  try {
    residual = apply(instance, step);
  } catch (const MmsError& e) {
    return {false, e.what()};
  }
  const MuVector mu_before = mms_values(instance, options);
  std::vector<bool> awarded(instance.n() + 1, false);
  for (const Award& a : step.awards) {
    awarded[a.agent] = true;
    const Rational& mu = mu_before[a.agent - 1];
    Rational got = bundle_value(instance, a.agent, a.bundle);
    if (got < mu)
      return {false, "agent " + std::to_string(a.agent) + " receives " + got.to_string() + " below share " +
                         mu.to_string()};
  }
  MuVector after = residual.n() ? mms_values(residual, options) : MuVector{};
  int local = 0;
  for (AgentId i = 1; i <= instance.n(); ++i) {
    if (awarded[i]) continue;
    const Rational& before = mu_before[i - 1];
    if (after[local] < before)
      return {false, "share of agent " + std::to_string(i) + " drops from " + before.to_string() + " to " +
                         after[local].to_string()};
    ++local;
  }
  return {true, ""};
}

bool verify_step(const Instance& instance, const ReductionStep& step, const OracleOptions& options) {
  return check_step(instance, step, options).valid;
}

Residual make_residual(const Instance& instance) {
  Residual r{instance, std::vector<AgentId>(instance.n()), std::vector<ItemId>(instance.m())};
  std::iota(r.agents.begin(), r.agents.end(), 1);
  std::iota(r.items.begin(), r.items.end(), 1);
  return r;
}

Residual apply(const Residual& residual, const ReductionStep& local_step) {
  Residual out;
  out.instance = apply(residual.instance, local_step);
  std::vector<bool> agent_gone(residual.agents.size() + 1, false), item_gone(residual.items.size() + 1, false);
  for (const Award& a : local_step.awards) {
    agent_gone[a.agent] = true;
    for (ItemId j : a.bundle) item_gone[j] = true;
  }
  for (size_t i = 0; i < residual.agents.size(); ++i)
    if (!agent_gone[i + 1]) out.agents.push_back(residual.agents[i]);
  for (size_t j = 0; j < residual.items.size(); ++j)
    if (!item_gone[j + 1]) out.items.push_back(residual.items[j]);
  return out;
}

ReductionStep to_global(const Residual& residual, const ReductionStep& local_step) {
  ReductionStep g{local_step.rule, local_step.branch, {}};
  for (const Award& a : local_step.awards) {
    std::vector<ItemId> items;
    for (ItemId j : a.bundle) items.push_back(residual.items.at(j - 1));
    g.awards.push_back(Award{residual.agents.at(a.agent - 1), Bundle(std::move(items))});
  }
  return g;
}

ReductionStep to_local(const Residual& residual, const ReductionStep& global_step) {
  auto local_index = [](const std::vector<int>& ids, int id, const char* what) {
    auto it = std::ranges::find(ids, id);
    if (it == ids.end())
      throw MmsError(ErrorCode::dangling_reference, std::string(what) + " " + std::to_string(id) + " is not available");
    return static_cast<int>(it - ids.begin()) + 1;
  };
  ReductionStep l{global_step.rule, global_step.branch, {}};
  for (const Award& a : global_step.awards) {
    std::vector<ItemId> items;
    for (ItemId j : a.bundle) items.push_back(local_index(residual.items, j, "item"));
    l.awards.push_back(Award{local_index(residual.agents, a.agent, "agent"), Bundle(std::move(items))});
  }
  return l;
}

ReplayReport replay_trace(const Instance& ordered, const ReductionTrace& trace, bool check_steps,
                          const OracleOptions& options) {
  ReplayReport report;
  report.allocation.bundles.resize(ordered.n());
  std::vector<bool> assigned(ordered.n() + 1, false);
  Residual residual = make_residual(ordered);
  try {
    for (const ReductionStep& step : trace.steps) {
      ReductionStep local = to_local(residual, step);
      if (check_steps) report.steps.push_back(check_step(residual.instance, local, options));
      for (const Award& a : step.awards) {
        report.allocation.bundles[a.agent - 1] = a.bundle;
        assigned[a.agent] = true;
      }
      residual = apply(residual, local);
    }
    std::vector<AgentId> expect = residual.agents, got = trace.final_agents;
    std::ranges::sort(expect);
    std::ranges::sort(got);
    if (expect != got) {
      report.error = "final agents do not match the agents left after the steps";
      return report;
    }
    if (trace.final.bundles.size() != trace.final_agents.size()) {
      report.error = "final allocation size differs from its agent list";
      return report;
    }
    for (size_t k = 0; k < trace.final_agents.size(); ++k) {
      report.allocation.bundles[trace.final_agents[k] - 1] = trace.final.bundles[k];
      assigned[trace.final_agents[k]] = true;
    }
  } catch (const MmsError& e) {
    report.error = e.what();
    return report;
  }
  report.partition_ok = report.allocation.is_partition_of(ordered.m());
  if (!report.partition_ok) report.error = "replayed bundles do not partition the items";
  return report;
}

}  // namespace mmsalloc
