#pragma once

// Search kernels shared by the MMS oracles and the solvers. All of them work
// on one agent's row rescaled to integers, so every comparison stays exact.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "mmsalloc/rational.hpp"

namespace mmsalloc::detail {

/// Smallest positive integer that makes every value integral.
BigInt common_scale(std::span<const Rational> values, std::span<const Rational> extra = {});

/// Scaled integer copies; returns false when int64 could overflow on sums.
bool scale_to_int64(std::span<const Rational> values, const BigInt& scale, std::vector<int64_t>& out);
std::vector<BigInt> scale_to_big(std::span<const Rational> values, const BigInt& scale);

inline BigInt to_big(int64_t v) { return BigInt(v); }
inline const BigInt& to_big(const BigInt& v) { return v; }

/// n^m <= cap without overflow.
bool power_within(int n, int m, uint64_t cap);

// ---------------------------------------------------------------------------
// Goods: can the items be split into `bins` bundles each worth at least t?
// Values must be sorted non-increasing. assignment[j] receives a bin index.
template <class T>
class CoverSearch {
 public:
  CoverSearch(const std::vector<T>& values, int bins) : w_(values), bins_(bins) {
    suffix_.assign(w_.size() + 1, T(0));
    for (size_t j = w_.size(); j-- > 0;) suffix_[j] = suffix_[j + 1] + w_[j];
  }

  bool feasible(const T& t, std::vector<int>& assignment) {
    t_ = t;
    sum_.assign(bins_, T(0));
    assign_.assign(w_.size(), -1);
    if (!rec(0, T(t) * bins_)) return false;
    for (auto& a : assign_)
      if (a < 0) a = 0;  // leftovers join any (already covered) bin
    assignment = assign_;
    return true;
  }

 private:
  bool rec(size_t j, T deficit) {
    if (deficit <= 0) return true;
    if (j == w_.size() || suffix_[j] < deficit) return false;
    const T& x = w_[j];
    if (x >= t_) {
      // An item covering a bundle alone can always take an empty bundle.
      for (int b = 0; b < bins_; ++b)
        if (sum_[b] == 0) {
          sum_[b] = x;
          assign_[j] = b;
          if (rec(j + 1, deficit - t_)) return true;
          sum_[b] = 0;
          return false;
        }
    }
    T tried[64];
    int ntried = 0;
    for (int b = 0; b < bins_; ++b) {
      if (sum_[b] >= t_) continue;
      bool dup = false;
      for (int k = 0; k < ntried && !dup; ++k) dup = tried[k] == sum_[b];
      if (dup) continue;
      if (ntried < 64) tried[ntried++] = sum_[b];
      T gap = t_ - sum_[b];
      T gain = x < gap ? x : gap;
      sum_[b] += x;
      assign_[j] = b;
      if (rec(j + 1, deficit - gain)) return true;
      sum_[b] -= x;
    }
    assign_[j] = -1;
    if (x < t_ && suffix_[j + 1] >= deficit && rec(j + 1, deficit)) return true;
    return false;
  }

  const std::vector<T>& w_;
  int bins_;
  T t_{};
  std::vector<T> suffix_, sum_;
  std::vector<int> assign_;
};

// ---------------------------------------------------------------------------
// Chores: can the costs (non-negative, sorted non-increasing) be packed into
// `bins` bundles with load at most cap?
template <class T>
class PackSearch {
 public:
  PackSearch(const std::vector<T>& costs, int bins) : w_(costs), bins_(bins) {
    suffix_.assign(w_.size() + 1, T(0));
    for (size_t j = w_.size(); j-- > 0;) suffix_[j] = suffix_[j + 1] + w_[j];
  }

  bool feasible(const T& cap, std::vector<int>& assignment) {
    cap_ = cap;
    load_.assign(bins_, T(0));
    assign_.assign(w_.size(), 0);
    if (!rec(0, T(cap) * bins_)) return false;
    assignment = assign_;
    return true;
  }

 private:
  bool rec(size_t j, T free_total) {
    if (j == w_.size()) return true;
    if (suffix_[j] > free_total) return false;
    const T& x = w_[j];
    T tried[64];
    int ntried = 0;
    for (int b = 0; b < bins_; ++b) {
      if (load_[b] + x > cap_) continue;
      bool dup = false;
      for (int k = 0; k < ntried && !dup; ++k) dup = tried[k] == load_[b];
      if (dup) continue;
      if (ntried < 64) tried[ntried++] = load_[b];
      load_[b] += x;
      assign_[j] = b;
      if (rec(j + 1, free_total - x)) return true;
      load_[b] -= x;
      if (x == 0) break;
    }
    return false;
  }

  const std::vector<T>& w_;
  int bins_;
  T cap_{};
  std::vector<T> suffix_, load_;
  std::vector<int> assign_;
};

template <class T>
T floor_div(const T& a, int b) {
  T q = a / b;
  if (q * b > a) q -= 1;
  return q;
}

template <class T>
T ceil_div(const T& a, int b) {
  T q = a / b;
  if (q * b < a) q += 1;
  return q;
}

/// Max over n-partitions of the minimum bundle sum; values >= 0, any order.
/// Returns the optimum and writes a witness assignment (bin per item).
template <class T>
T max_min_cover(const std::vector<T>& values, int n, std::vector<int>& assignment) {
  const size_t m = values.size();
  std::vector<size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] > values[b]; });
  std::vector<T> w;
  for (size_t j : order) w.push_back(values[j]);

  assignment.assign(m, 0);
  if (n == 1) return std::accumulate(values.begin(), values.end(), T(0));
  if (static_cast<int>(m) < n) {
    for (size_t j = 0; j < m; ++j) assignment[j] = static_cast<int>(j);
    return T(0);
  }

  // Greedy lower bound: next item to the currently poorest bundle.
  std::vector<T> sums(n, T(0));
  std::vector<int> sorted_assign(m);
  for (size_t j = 0; j < m; ++j) {
    int b = static_cast<int>(std::min_element(sums.begin(), sums.end()) - sums.begin());
    sums[b] += w[j];
    sorted_assign[j] = b;
  }
  T lo = *std::min_element(sums.begin(), sums.end());
  T hi = floor_div(std::accumulate(w.begin(), w.end(), T(0)), n);

  CoverSearch<T> search(w, n);
  std::vector<int> candidate;
  while (lo < hi) {
    T mid = lo + ceil_div(T(hi - lo), 2);
    if (search.feasible(mid, candidate)) {
      std::vector<T> s(n, T(0));
      for (size_t j = 0; j < m; ++j) s[candidate[j]] += w[j];
      lo = *std::min_element(s.begin(), s.end());
      sorted_assign = candidate;
    } else {
      hi = mid - 1;
    }
  }
  for (size_t j = 0; j < m; ++j) assignment[order[j]] = sorted_assign[j];
  return lo;
}

/// Min over n-partitions of the maximum bundle cost; costs >= 0.
template <class T>
T min_max_pack(const std::vector<T>& costs, int n, std::vector<int>& assignment) {
  const size_t m = costs.size();
  std::vector<size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return costs[a] > costs[b]; });
  std::vector<T> w;
  for (size_t j : order) w.push_back(costs[j]);

  assignment.assign(m, 0);
  if (m == 0) return T(0);
  if (n == 1) return std::accumulate(costs.begin(), costs.end(), T(0));

  std::vector<T> loads(n, T(0));
  std::vector<int> sorted_assign(m);
  for (size_t j = 0; j < m; ++j) {
    int b = static_cast<int>(std::min_element(loads.begin(), loads.end()) - loads.begin());
    loads[b] += w[j];
    sorted_assign[j] = b;
  }
  T hi = *std::max_element(loads.begin(), loads.end());
  T lo = std::max(w.front(), ceil_div(std::accumulate(w.begin(), w.end(), T(0)), n));

  PackSearch<T> search(w, n);
  std::vector<int> candidate;
  while (lo < hi) {
    T mid = lo + floor_div(T(hi - lo), 2);
    if (search.feasible(mid, candidate)) {
      std::vector<T> l(n, T(0));
      for (size_t j = 0; j < m; ++j) l[candidate[j]] += w[j];
      hi = *std::max_element(l.begin(), l.end());
      sorted_assign = candidate;
    } else {
      lo = mid + 1;
    }
  }
  for (size_t j = 0; j < m; ++j) assignment[order[j]] = sorted_assign[j];
  return hi;
}

/// Plain enumeration of every set partition into at most n blocks
/// (restricted growth strings); signed values, maximizes the minimum block.
template <class T>
T exhaustive_max_min(const std::vector<T>& values, int n, std::vector<int>& assignment) {
  const int m = static_cast<int>(values.size());
  std::vector<int> label(m, 0);
  std::vector<T> sums(n, T(0));
  bool have = false;
  T best{};
  assignment.assign(m, 0);
  // Iterative DFS over labels.
  auto evaluate = [&]() {
    T lo = sums[0];
    for (int b = 1; b < n; ++b) lo = std::min(lo, sums[b]);
    if (!have || lo > best) {
      best = lo;
      have = true;
      assignment = label;
    }
  };
  if (m == 0) {
    evaluate();
    return best;
  }
  std::vector<int> maxlabel(m + 1, -1);
  int j = 0;
  label[0] = -1;
  while (j >= 0) {
    if (label[j] >= 0) sums[label[j]] -= values[j];
    int limit = std::min(maxlabel[j] + 1, n - 1);
    if (label[j] < limit) {
      ++label[j];
      sums[label[j]] += values[j];
      maxlabel[j + 1] = std::max(maxlabel[j], label[j]);
      if (j + 1 == m) {
        evaluate();
      } else {
        ++j;
        label[j] = -1;
      }
    } else {
      label[j] = -1;
      --j;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Partition of the given items into bundles of prescribed sizes, each bundle
// worth at least t. Signed values; items may be given in any order.
template <class T>
class TypedSearch {
 public:
  TypedSearch(std::vector<T> values, std::vector<int> sizes, T t)
      : sizes_(std::move(sizes)), t_(std::move(t)) {
    const size_t m = values.size();
    order_.resize(m);
    std::iota(order_.begin(), order_.end(), 0);
    auto mag = [](const T& v) { return v < 0 ? T(-v) : v; };
    std::stable_sort(order_.begin(), order_.end(),
                     [&](size_t a, size_t b) { return mag(values[a]) > mag(values[b]); });
    for (size_t j : order_) w_.push_back(values[j]);
    // best_[j][r]: largest sum of r items among w_[j..].
    best_.assign(m + 1, {});
    for (size_t j = 0; j <= m; ++j) {
      std::vector<T> rest(w_.begin() + static_cast<long>(j), w_.end());
      std::sort(rest.begin(), rest.end(), std::greater<T>());
      best_[j].assign(rest.size() + 1, T(0));
      for (size_t r = 0; r < rest.size(); ++r) best_[j][r + 1] = best_[j][r] + rest[r];
    }
  }

  /// assignment indexed like the constructor's values.
  bool find(std::vector<int>& assignment) {
    size_t total = 0;
    for (int s : sizes_) total += static_cast<size_t>(s);
    if (total != w_.size()) return false;
    fill_.assign(sizes_.size(), 0);
    sum_.assign(sizes_.size(), T(0));
    assign_.assign(w_.size(), -1);
    for (size_t b = 0; b < sizes_.size(); ++b)
      if (sizes_[b] == 0 && T(0) < t_) return false;
    if (!rec(0)) return false;
    assignment.assign(w_.size(), -1);
    for (size_t j = 0; j < w_.size(); ++j) assignment[order_[j]] = assign_[j];
    return true;
  }

 private:
  bool rec(size_t j) {
    if (j == w_.size()) return true;
    for (size_t b = 0; b < sizes_.size(); ++b) {
      if (fill_[b] >= sizes_[b]) continue;
      bool symmetric = false;
      for (size_t e = 0; e < b && !symmetric; ++e)
        symmetric = sizes_[e] == sizes_[b] && fill_[e] == fill_[b] && sum_[e] == sum_[b];
      if (symmetric) continue;
      sum_[b] += w_[j];
      ++fill_[b];
      assign_[j] = static_cast<int>(b);
      const int need = sizes_[b] - fill_[b];
      bool ok = need == 0 ? !(sum_[b] < t_) : !(sum_[b] + best_[j + 1][static_cast<size_t>(need)] < t_);
      if (ok && rec(j + 1)) return true;
      --fill_[b];
      sum_[b] -= w_[j];
    }
    return false;
  }

  std::vector<int> sizes_;
  T t_;
  std::vector<size_t> order_;
  std::vector<T> w_;
  std::vector<std::vector<T>> best_;
  std::vector<int> fill_;
  std::vector<T> sum_;
  std::vector<int> assign_;
};

// ---------------------------------------------------------------------------
// Exhaustive search for an allocation meeting per-agent thresholds.
// values[a][j] signed, thresholds[a] on the same scale as values[a].
template <class T>
class ThresholdSearch {
 public:
  ThresholdSearch(std::vector<std::vector<T>> values, std::vector<T> thresholds)
      : v_(std::move(values)), x_(std::move(thresholds)) {
    n_ = v_.size();
    m_ = n_ ? v_[0].size() : 0;
    pos_suffix_.assign(n_, std::vector<T>(m_ + 1, T(0)));
    for (size_t a = 0; a < n_; ++a)
      for (size_t j = m_; j-- > 0;) pos_suffix_[a][j] = pos_suffix_[a][j + 1] + (v_[a][j] > 0 ? v_[a][j] : T(0));
  }

  bool find(std::vector<int>& owner) {
    sum_.assign(n_, T(0));
    owner_.assign(m_, 0);
    if (!rec(0)) return false;
    owner = owner_;
    return true;
  }

 private:
  bool rec(size_t j) {
    for (size_t a = 0; a < n_; ++a)
      if (sum_[a] + pos_suffix_[a][j] < x_[a]) return false;
    if (j == m_) return true;
    for (size_t a = 0; a < n_; ++a) {
      sum_[a] += v_[a][j];
      owner_[j] = static_cast<int>(a);
      if (rec(j + 1)) return true;
      sum_[a] -= v_[a][j];
    }
    return false;
  }

  std::vector<std::vector<T>> v_;
  std::vector<T> x_;
  size_t n_ = 0, m_ = 0;
  std::vector<std::vector<T>> pos_suffix_;
  std::vector<T> sum_;
  std::vector<int> owner_;
};

}  // namespace mmsalloc::detail
