#include "mmsalloc/bounds.hpp"

#include <algorithm>

#include "mmsalloc/error.hpp"

namespace mmsalloc {

namespace {

BigInt floor_alpha_power(const Rational& alpha, int c) {
  Rational v = Rational(factorial(c));
  for (int i = 0; i < c; ++i) v *= alpha;
  return v.floor();
}

void check_alpha(const Rational& alpha) {
  if (alpha.sign() <= 0 || alpha >= Rational(1))
    throw MmsError(ErrorCode::c_out_of_range, "alpha must lie strictly between 0 and 1");
}

Rational pair_coefficient(int c, int k) {
  return Rational(binomial(c, k - 1), BigInt(k)) + Rational(binomial(c, k - 2), BigInt(k - 1));
}

}  // namespace

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt n_c_goods(int c, const BoundParams& params) {
  if (c < 0) throw MmsError(ErrorCode::negative_c, "c must be non-negative");
  if (auto it = params.goods_overrides.find(c); it != params.goods_overrides.end()) return it->second;
  if (c <= 5) return 1;
  if (c == 6) return 4;
  if (c == 7) return 8;
  check_alpha(params.alpha_goods);
  return floor_alpha_power(params.alpha_goods, c);
}

BigInt n_c_chores(int c, const BoundParams& params) {
  if (c < 0) throw MmsError(ErrorCode::negative_c, "c must be non-negative");
  if (auto it = params.chores_overrides.find(c); it != params.chores_overrides.end()) return it->second;
  if (c <= 5) return 1;
  check_alpha(params.alpha_chores);
  return floor_alpha_power(params.alpha_chores, c);
}

RequiredAgents required_agents_goods(int c, const BoundParams& params) {
  if (c < 7) throw MmsError(ErrorCode::c_out_of_range, "goods agent count is defined for c >= 7");
  RequiredAgents r;
  r.exact = 1;
  for (int k = 3; k <= c - 2; ++k) {
    BigInt weight = std::max(BigInt(c - k), n_c_goods(c - k + 1, params));
    Rational term = pair_coefficient(c, k) * Rational(weight);
    r.terms.push_back(term);
    r.exact += term;
  }
  r.value = r.exact.ceil();
  r.bound = n_c_goods(c, params);
  r.within_bound = r.value <= r.bound;
  return r;
}

RequiredAgents required_agents_chores(int c, const BoundParams& params) {
  if (c < 6) throw MmsError(ErrorCode::c_out_of_range, "chores agent count is defined for c >= 6");
  RequiredAgents r;
  Rational pair_term(std::max(BigInt(c - 1), n_c_chores(c - 1, params)));
  r.terms.push_back(pair_term);
  r.exact = Rational(1) + pair_term;
  for (int k = 3; k <= c - 1; ++k) {
    BigInt weight = std::max(BigInt(c - k + 1), n_c_chores(c - k + 1, params));
    Rational term = pair_coefficient(c, k) * Rational(weight);
    r.terms.push_back(term);
    r.exact += term;
  }
  r.value = r.exact.ceil();
  r.bound = n_c_chores(c, params);
  r.within_bound = r.value <= r.bound;
  return r;
}

}  // namespace mmsalloc
