#pragma once

#include <optional>

#include "mmsalloc/solve_common.hpp"

namespace mmsalloc {

/// Constructive MMS allocation for goods. Never claims that no allocation
/// exists; an unresolved outcome carries a diagnostic instead.
SolveOutcome solve(const Instance& instance, const SolverOptions& options = {});

/// Goods with m <= n+6 and n != 3 (throws NEqualsThree for n = 3).
SolveOutcome solve_c6(const Instance& instance, const SolverOptions& options = {});
/// Goods with n >= 8 and m <= n+7 (throws TooFewAgents below 8 agents).
SolveOutcome solve_c7(const Instance& instance, const SolverOptions& options = {});

/// One agent and one or two goods, for ordered goods with m <= 2n+2, n >= 3.
ReductionStep reduce_2n2(const OrderedInstance& ordered, const MuVector& mu, const OracleOptions& options = {});

/// Matching step for an agent whose partition has at least n-1 bundles with
/// fewer than three goods: the whole allocation when agents can be matched
/// to bundles, otherwise a batch of matched bundles. Absent if the batch
/// would be empty.
std::optional<StepOrAllocation> efm_step(const OrderedInstance& ordered, AgentId agent,
                                         const StructuredPartition& witness, const MuVector& mu);

/// Structured-partition step for m = n+c goods. Absent when no rule
/// triggers, which can only happen with too few agents.
std::optional<StepOrAllocation> theorem1_step(const OrderedInstance& ordered, int c, const MuVector& mu,
                                              const SolverOptions& options = {});

}  // namespace mmsalloc
