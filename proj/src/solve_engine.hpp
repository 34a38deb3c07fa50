#pragma once

// Shared driver for the goods and chores solvers: keeps the residual
// instance, records the trace in original ids and certifies the result.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mmsalloc/solve_common.hpp"

namespace mmsalloc::detail {

/// Wraps an already ordered instance with identity ranks.
OrderedInstance as_ordered(const Instance& instance);

/// What a solver decides for the current residual. Steps apply in sequence,
/// each in the ids of the residual left by the previous one; the final
/// allocation refers to the residual after all steps.
struct Action {
  std::vector<ReductionStep> steps;
  std::optional<FinalAllocation> final;
  std::optional<std::string> unresolved;

  static Action step(ReductionStep s) { return Action{{std::move(s)}, std::nullopt, std::nullopt}; }
  static Action finish(Allocation a, std::string rule) {
    return Action{{}, FinalAllocation{std::move(a), std::move(rule)}, std::nullopt};
  }
  static Action give_up(std::string why) { return Action{{}, std::nullopt, std::move(why)}; }
};

Action from_step_or_allocation(StepOrAllocation r);

/// Shares of the agents that survive a step, in residual order.
MuVector remaining_mu(const MuVector& mu, const ReductionStep& step);
/// Item j to agent j, everything beyond n (if any) to nobody: requires m <= n.
Allocation singleton_allocation(int n, int m);
/// Largest s such that {1},...,{s} are all bundles of the partition.
int singleton_prefix(const Allocation& partition);

class Engine {
 public:
  Engine(const Instance& original, const SolverOptions& options);

  const Instance& current() const { return residual_.instance; }
  const SolverOptions& options() const { return options_; }
  /// Shares in the original instance of the agents still present.
  MuVector original_mu_of_residual();

  SolveOutcome run(const std::function<Action(Engine&)>& decide);

 private:
  void push(const ReductionStep& local);
  SolveOutcome finish(const Allocation& local_final, const std::string& rule);
  SolveOutcome unresolved(const std::string& diagnostic);

  Instance original_;
  OrderedInstance ordered_;
  SolverOptions options_;
  std::optional<MuVector> original_mu_;
  Residual residual_;
  ReductionTrace trace_;
};

}  // namespace mmsalloc::detail
