#pragma once

// Brute-force reference implementations for the tests. They share only the
// data types with the library.

#include <random>
#include <vector>

#include "mmsalloc/instance.hpp"
#include "mmsalloc/matching.hpp"
#include "mmsalloc/reductions.hpp"

namespace oracle {

using mmsalloc::Allocation;
using mmsalloc::Bundle;
using mmsalloc::Instance;
using mmsalloc::ItemKind;
using mmsalloc::Rational;

/// Max over all n^m assignments of the smallest bundle sum.
Rational mms(const std::vector<Rational>& row, int n);
Rational mms(const Instance& inst, int agent);
std::vector<Rational> mms_all(const Instance& inst);

/// Some assignment gives every agent at least its threshold.
bool allocation_exists(const Instance& inst, const std::vector<Rational>& thresholds);

/// Partition of the row into n bundles where every bundle reaches mu.
bool is_mms_partition(const std::vector<Rational>& row, const Rational& mu, const Allocation& a);

/// Tries every injection from b_prime into b with f(j) <= j.
bool dominates(const Bundle& b, const Bundle& b_prime);

int max_matching_size(const mmsalloc::BipartiteGraph& g);
/// Some non-empty matching leaves no unmatched X vertex next to a matched Y vertex.
bool nonempty_envy_free_exists(const mmsalloc::BipartiteGraph& g);
bool envy_free(const mmsalloc::BipartiteGraph& g, const mmsalloc::Matching& m);

/// Residual built by hand: awarded agents and items dropped, order kept.
Instance residual(const Instance& inst, const mmsalloc::ReductionStep& step);
/// Awarded agents reach their shares and no remaining share drops.
bool step_valid(const Instance& inst, const mmsalloc::ReductionStep& step);
/// Every agent's bundle reaches the brute-force share.
bool certified(const Instance& inst, const Allocation& a);

Instance random_instance(std::mt19937_64& rng, ItemKind kind, int n, int m, int max_value);
/// Ordered view: each row sorted, goods descending, chores ascending.
Instance sorted_rows(const Instance& inst);

}  // namespace oracle
