#pragma once

#include "mmsalloc/solve_common.hpp"

namespace mmsalloc {

/// Constructive MMS allocation for chores: structured partitions, the
/// mostly-singleton base, tail-group domination steps, then exhaustive
/// search below the cap. Unresolved beyond it.
SolveOutcome solve_chores(const Instance& instance, const SolverOptions& options = {});

}  // namespace mmsalloc
