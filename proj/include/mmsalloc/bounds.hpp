#pragma once

#include <map>
#include <vector>

#include "mmsalloc/rational.hpp"

namespace mmsalloc {

struct BoundParams {
  Rational alpha_goods{BigInt(6597), BigInt(10000)};
  Rational alpha_chores{BigInt(7838), BigInt(10000)};
  /// Explicit table entries that replace the formula.
  std::map<int, BigInt> goods_overrides;
  std::map<int, BigInt> chores_overrides;
};

/// Agent-count threshold for n+c goods: 1 up to c=5, 4 at c=6, 8 at c=7,
/// floor(alpha^c * c!) beyond.
BigInt n_c_goods(int c, const BoundParams& params = {});
/// Agent-count threshold for n+c chores: 1 up to c=5, floor(alpha^c * c!) beyond.
BigInt n_c_chores(int c, const BoundParams& params = {});

struct RequiredAgents {
  Rational exact;              // the sum before rounding
  BigInt value;                // rounded up
  std::vector<Rational> terms; // one summand per k, ascending k
  BigInt bound;                // n_c for the same c
  bool within_bound = false;   // value <= bound
};

/// Agents that guarantee some domination group reaches its threshold (c >= 7).
RequiredAgents required_agents_goods(int c, const BoundParams& params = {});
/// Chores counterpart (c >= 6), including the size-2 group term.
RequiredAgents required_agents_chores(int c, const BoundParams& params = {});

BigInt binomial(int n, int k);
BigInt factorial(int n);

}  // namespace mmsalloc
