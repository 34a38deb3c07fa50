#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mmsalloc/instance.hpp"

namespace mmsalloc {

/// Injective f from B' into B with f(j) <= j, stored as (j, f(j)) pairs in
/// ascending j.
struct DominationWitness {
  std::vector<std::pair<ItemId, ItemId>> mapping;
};

/// B dominates B' on an ordered item universe (lower id = earlier in order).
std::optional<DominationWitness> dominates(const Bundle& b, const Bundle& b_prime);
bool strictly_dominates(const Bundle& b, const Bundle& b_prime);

/// A bundle from an agent's structured partition lying inside the last c+1
/// items. singleton_prefix records how many leading items that partition
/// holds as singletons.
struct TailBundle {
  AgentId agent = 0;
  Bundle bundle;
  int singleton_prefix = 0;

  friend bool operator==(const TailBundle&, const TailBundle&) = default;
};

using SubsetKey = Bundle;

/// Registers every size-k tail under each of its (k-1)-subsets.
std::map<SubsetKey, std::vector<TailBundle>> group_tail_bundles(const std::vector<TailBundle>& tails, int k, int c,
                                                                int n);

/// Goods: the member dominated by every other member. Chores: the member
/// dominating every other member. Lowest agent id wins ties.
TailBundle pick_dominated(const std::vector<TailBundle>& group, ItemKind kind);

}  // namespace mmsalloc
