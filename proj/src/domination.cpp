#include "mmsalloc/domination.hpp"

#include <algorithm>

#include "mmsalloc/error.hpp"

namespace mmsalloc {

std::optional<DominationWitness> dominates(const Bundle& b, const Bundle& b_prime) {
  if (b.size() < b_prime.size()) return std::nullopt;
  DominationWitness w;
  // Both sides ascending: the i-th smallest of B' takes the i-th smallest of B.
  auto it = b.begin();
  for (ItemId j : b_prime) {
    if (it == b.end() || *it > j) return std::nullopt;
    w.mapping.emplace_back(j, *it);
    ++it;
  }
  return w;
}

bool strictly_dominates(const Bundle& b, const Bundle& b_prime) {
  return b != b_prime && dominates(b, b_prime).has_value();
}

std::map<SubsetKey, std::vector<TailBundle>> group_tail_bundles(const std::vector<TailBundle>& tails, int k, int c,
                                                                int n) {
  if (k < 2) throw MmsError(ErrorCode::precondition_unmet, "grouping needs k >= 2");
  std::map<SubsetKey, std::vector<TailBundle>> groups;
  for (const TailBundle& t : tails) {
    if (!t.bundle.empty() && (t.bundle.min() < n || t.bundle.max() > n + c))
      throw MmsError(ErrorCode::precondition_unmet, "tail bundle " + t.bundle.to_string() + " leaves the tail range");
    if (static_cast<int>(t.bundle.size()) != k) continue;
    for (ItemId drop : t.bundle) groups[t.bundle.without(drop)].push_back(t);
  }
  return groups;
}

TailBundle pick_dominated(const std::vector<TailBundle>& group, ItemKind kind) {
  if (group.empty()) throw MmsError(ErrorCode::empty_group, "no bundles to pick from");
  std::vector<TailBundle> sorted = group;
  std::ranges::stable_sort(sorted, [](const TailBundle& a, const TailBundle& b) { return a.agent < b.agent; });
  for (const TailBundle& cand : sorted) {
    bool extreme = std::ranges::all_of(sorted, [&](const TailBundle& other) {
      return kind == ItemKind::goods ? dominates(other.bundle, cand.bundle).has_value()
                                     : dominates(cand.bundle, other.bundle).has_value();
    });
    if (extreme) return cand;
  }
  throw MmsError(ErrorCode::precondition_unmet, "group has no extreme bundle");
}

}  // namespace mmsalloc
