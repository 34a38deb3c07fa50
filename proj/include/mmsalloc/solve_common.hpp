#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mmsalloc/bounds.hpp"
#include "mmsalloc/mms.hpp"
#include "mmsalloc/reductions.hpp"

namespace mmsalloc {

enum class SolveStatus { solved, unresolved };

const char* to_string(SolveStatus status);

struct SolverOptions {
  OracleOptions oracle;
  /// Largest n^m for the exhaustive threshold search.
  uint64_t search_cap = kDefaultOracleCap;
  BoundParams bounds;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::unresolved;
  std::optional<Allocation> allocation;  // over the original instance
  std::optional<ReductionTrace> trace;
  std::string diagnostic;
  MuVector mu;                   // shares in the original instance, when computed
  std::vector<Rational> values;  // value of each agent's bundle, when solved
};

/// A complete allocation of the instance a rule was applied to.
struct FinalAllocation {
  Allocation allocation;
  std::string rule;
};

using StepOrAllocation = std::variant<ReductionStep, FinalAllocation>;

struct Certificate {
  bool ok = false;
  MuVector mu;
  std::vector<Rational> values;
  std::string reason;
};

/// Recomputes every share exactly and compares it with the agent's bundle.
Certificate certify(const Instance& instance, const Allocation& allocation, const OracleOptions& options = {});

}  // namespace mmsalloc
