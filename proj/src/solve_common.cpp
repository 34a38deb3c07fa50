#include "mmsalloc/solve_common.hpp"

#include <algorithm>
#include <numeric>

#include "mmsalloc/error.hpp"
#include "solve_engine.hpp"

namespace mmsalloc {

const char* to_string(SolveStatus status) { return status == SolveStatus::solved ? "solved" : "unresolved"; }

Certificate certify(const Instance& instance, const Allocation& allocation, const OracleOptions& options) {
  Certificate cert;
  if (static_cast<int>(allocation.bundles.size()) != instance.n() || !allocation.is_partition_of(instance.m())) {
    cert.reason = "allocation is not a partition of the items among the agents";
    return cert;
  }
  cert.mu = mms_values(instance, options);
  cert.ok = true;
  for (AgentId i = 1; i <= instance.n(); ++i) {
    cert.values.push_back(bundle_value(instance, i, allocation.bundles[i - 1]));
    if (cert.values.back() < cert.mu[i - 1] && cert.ok) {
      cert.ok = false;
      cert.reason = "agent " + std::to_string(i) + " receives " + cert.values.back().to_string() + " below share " +
                    cert.mu[i - 1].to_string();
    }
  }
  return cert;
}

namespace detail {

OrderedInstance as_ordered(const Instance& instance) {
  OrderedInstance o{instance, {}};
  std::vector<ItemId> identity(instance.m());
  std::iota(identity.begin(), identity.end(), 1);
  o.source_ranks.assign(instance.n(), identity);
  return o;
}

Action from_step_or_allocation(StepOrAllocation r) {
  if (auto* s = std::get_if<ReductionStep>(&r)) return Action::step(std::move(*s));
  auto& f = std::get<FinalAllocation>(r);
  return Action::finish(std::move(f.allocation), std::move(f.rule));
}

MuVector remaining_mu(const MuVector& mu, const ReductionStep& step) {
  std::vector<bool> gone(mu.size() + 1, false);
  for (const Award& a : step.awards) gone[a.agent] = true;
  MuVector out;
  for (size_t i = 0; i < mu.size(); ++i)
    if (!gone[i + 1]) out.push_back(mu[i]);
  return out;
}

Allocation singleton_allocation(int n, int m) {
  Allocation a;
  a.bundles.resize(n);
  for (int j = 1; j <= m; ++j) a.bundles[j - 1] = Bundle{j};
  return a;
}

int singleton_prefix(const Allocation& partition) {
  int s = 0;
  while (true) {
    int b = partition.bundle_of(s + 1);
    if (b < 0 || partition.bundles[b].size() != 1) return s;
    ++s;
  }
}

Engine::Engine(const Instance& original, const SolverOptions& options)
    : original_(original), ordered_(to_ordered(original)), options_(options) {
  residual_ = make_residual(ordered_.instance);
}

MuVector Engine::original_mu_of_residual() {
  if (!original_mu_) original_mu_ = mms_values(ordered_.instance, options_.oracle);
  MuVector out;
  for (AgentId a : residual_.agents) out.push_back((*original_mu_)[a - 1]);
  return out;
}

void Engine::push(const ReductionStep& local) {
  trace_.steps.push_back(to_global(residual_, local));
  residual_ = apply(residual_, local);
}

SolveOutcome Engine::finish(const Allocation& local_final, const std::string& rule) {
  trace_.final_agents = residual_.agents;
  trace_.final.bundles.clear();
  for (const Bundle& b : local_final.bundles) {
    std::vector<ItemId> items;
    for (ItemId j : b) items.push_back(residual_.items.at(j - 1));
    trace_.final.bundles.emplace_back(std::move(items));
  }
  trace_.final_rule = rule;

  SolveOutcome out;
  out.trace = trace_;
  ReplayReport replay = replay_trace(ordered_.instance, trace_, false);
  if (!replay.partition_ok) {
    out.diagnostic = "trace does not replay: " + replay.error;
    return out;
  }
  Allocation lifted = lift_allocation(ordered_, replay.allocation, original_);
  Certificate cert = certify(original_, lifted, options_.oracle);
  out.allocation = lifted;
  out.mu = cert.mu;
  out.values = cert.values;
  if (!cert.ok) {
    out.diagnostic = "certification failed: " + cert.reason;
    return out;
  }
  out.status = SolveStatus::solved;
  out.diagnostic = rule;
  return out;
}

SolveOutcome Engine::unresolved(const std::string& diagnostic) {
  SolveOutcome out;
  trace_.final_agents = residual_.agents;
  out.trace = trace_;
  out.diagnostic = diagnostic;
  return out;
}

SolveOutcome Engine::run(const std::function<Action(Engine&)>& decide) {
  try {
    while (true) {
      const Instance& cur = current();
      if (cur.n() == 0) return finish(Allocation{}, "empty");
      if (cur.n() == 1) {
        Allocation all;
        all.bundles.resize(1);
        for (ItemId j = 1; j <= cur.m(); ++j) all.bundles[0].insert(j);
        return finish(all, "single_agent");
      }
      Action action = decide(*this);
      if (action.unresolved) return unresolved(*action.unresolved);
      for (const ReductionStep& s : action.steps) push(s);
      if (action.final) return finish(action.final->allocation, action.final->rule);
      if (action.steps.empty())
        throw MmsError(ErrorCode::internal_invariant_violation, "solver made no progress");
    }
  } catch (const MmsError& e) {
    return unresolved(e.what());
  }
}

}  // namespace detail

}  // namespace mmsalloc
