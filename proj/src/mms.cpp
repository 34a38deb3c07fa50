#include "mmsalloc/mms.hpp"

#include <algorithm>
#include <numeric>

#include "mmsalloc/error.hpp"
#include "partition_search.hpp"

namespace mmsalloc {

namespace detail {

BigInt common_scale(std::span<const Rational> values, std::span<const Rational> extra) {
  BigInt scale = 1;
  for (const auto* list : {&values, &extra})
    for (const Rational& v : *list) scale = boost::multiprecision::lcm(scale, v.denominator());
  return scale;
}

static BigInt scaled(const Rational& v, const BigInt& scale) { return v.numerator() * (scale / v.denominator()); }

bool scale_to_int64(std::span<const Rational> values, const BigInt& scale, std::vector<int64_t>& out) {
  static const BigInt limit = BigInt(1) << 60;
  out.clear();
  BigInt total = 0;
  for (const Rational& v : values) {
    BigInt s = scaled(v, scale);
    total += boost::multiprecision::abs(s);
    if (total > limit) return false;
    out.push_back(s.convert_to<int64_t>());
  }
  return true;
}

std::vector<BigInt> scale_to_big(std::span<const Rational> values, const BigInt& scale) {
  std::vector<BigInt> out;
  out.reserve(values.size());
  for (const Rational& v : values) out.push_back(scaled(v, scale));
  return out;
}

bool power_within(int n, int m, uint64_t cap) {
  uint64_t p = 1;
  for (int j = 0; j < m; ++j) {
    if (n != 0 && p > cap / static_cast<uint64_t>(n)) return false;
    p *= static_cast<uint64_t>(n);
  }
  return p <= cap;
}

}  // namespace detail

namespace {

using detail::to_big;

// Calls f(values, scale) with the row and trailing extras scaled to a common
// integer type, int64 when sums cannot overflow.
template <class F>
auto with_scaled(std::span<const Rational> row, std::span<const Rational> extra, F&& f) {
  std::vector<Rational> all(row.begin(), row.end());
  all.insert(all.end(), extra.begin(), extra.end());
  BigInt scale = detail::common_scale(all);
  std::vector<int64_t> small;
  if (detail::scale_to_int64(all, scale, small)) return f(small, scale);
  return f(detail::scale_to_big(all, scale), scale);
}

template <class T>
Rational unscale(const T& v, const BigInt& scale) {
  return Rational(to_big(v), scale);
}

Allocation from_assignment(const std::vector<int>& assignment, int n, const std::vector<ItemId>& items) {
  Allocation a;
  a.bundles.resize(n);
  for (size_t j = 0; j < assignment.size(); ++j) a.bundles[assignment[j]].insert(items[j]);
  return a;
}

std::vector<ItemId> iota_items(int m) {
  std::vector<ItemId> items(m);
  std::iota(items.begin(), items.end(), 1);
  return items;
}

}  // namespace

const char* to_string(OracleMethod method) {
  return method == OracleMethod::exhaustive ? "exhaustive" : "branch_and_bound";
}

OracleMethod parse_oracle_method(std::string_view text) {
  if (text == "exhaustive") return OracleMethod::exhaustive;
  if (text == "bnb" || text == "branch_and_bound") return OracleMethod::branch_and_bound;
  throw MmsError(ErrorCode::parse_error, "unknown oracle method '" + std::string(text) + "'");
}

MmsRecord mms_of_row(std::span<const Rational> row, int n, ItemKind kind, const OracleOptions& options) {
  const int m = static_cast<int>(row.size());
  if (n < 1) throw MmsError(ErrorCode::empty_matrix, "no agents");
  if (options.method == OracleMethod::exhaustive && !detail::power_within(n, m, options.cap))
    throw MmsError(ErrorCode::too_large, std::to_string(n) + "^" + std::to_string(m) + " exceeds the oracle cap");

  MmsRecord rec;
  std::vector<int> assignment;
  rec.mu = with_scaled(row, {}, [&](const auto& values, const BigInt& scale) {
    using T = typename std::decay_t<decltype(values)>::value_type;
    if (options.method == OracleMethod::exhaustive) return unscale(detail::exhaustive_max_min(values, n, assignment), scale);
    if (kind == ItemKind::goods) return unscale(detail::max_min_cover(values, n, assignment), scale);
    std::vector<T> costs;
    for (const T& v : values) costs.push_back(-v);
    T c = detail::min_max_pack(costs, n, assignment);
    return unscale(T(-c), scale);
  });
  rec.witness = from_assignment(assignment, n, iota_items(m));
  return rec;
}

MmsRecord mms_value(const Instance& instance, AgentId agent, const OracleOptions& options) {
  MmsRecord rec = mms_of_row(instance.row(agent), instance.n(), instance.kind(), options);
  rec.agent = agent;
  return rec;
}

MuVector mms_values(const Instance& instance, const OracleOptions& options) {
  MuVector mu;
  mu.reserve(instance.n());
  for (AgentId i = 1; i <= instance.n(); ++i) {
    // Identical rows share their share.
    bool reused = false;
    for (AgentId p = 1; p < i && !reused; ++p)
      if (std::ranges::equal(instance.row(p), instance.row(i))) {
        mu.push_back(mu[p - 1]);
        reused = true;
      }
    if (!reused) mu.push_back(mms_value(instance, i, options).mu);
  }
  return mu;
}

Rational min_bundle_value(const Instance& instance, AgentId agent, const Allocation& partition) {
  Rational lo;
  bool first = true;
  for (const Bundle& b : partition.bundles) {
    Rational v = bundle_value(instance, agent, b);
    if (first || v < lo) lo = v;
    first = false;
  }
  return lo;
}

bool is_mms_partition(const Instance& instance, AgentId agent, const Rational& mu, const Allocation& partition) {
  if (static_cast<int>(partition.bundles.size()) != instance.n() || !partition.is_partition_of(instance.m()))
    return false;
  for (const Bundle& b : partition.bundles)
    if (bundle_value(instance, agent, b) < mu) return false;
  return true;
}

int count_singletons(const Allocation& partition) {
  return static_cast<int>(std::ranges::count_if(partition.bundles, [](const Bundle& b) { return b.size() == 1; }));
}

int count_high_items(const OrderedInstance& ordered, AgentId agent, const Rational& mu) {
  const Instance& inst = ordered.instance;
  int k = 0;
  while (k < inst.m() && inst.value(agent, k + 1) >= mu) ++k;
  const int n = inst.n(), c = inst.m() - inst.n();
  if (inst.kind() == ItemKind::goods && n > c && c > 0 && k < n - c)
    throw MmsError(ErrorCode::internal_invariant_violation,
                   "only " + std::to_string(k) + " goods reach the share of agent " + std::to_string(agent));
  return k;
}

Allocation repair_singletons_goods(const Instance& instance, AgentId agent, const Rational& mu, Allocation partition,
                                   int s) {
  const int n = static_cast<int>(partition.bundles.size());
  if (s > n - 1 && s > 0 && instance.m() > n) s = n - 1;
  for (int guard = 0; guard <= s; ++guard) {
    int g = 0;
    for (int x = 1; x <= s && !g; ++x)
      if (partition.bundles[partition.bundle_of(x)].size() > 1) g = x;
    if (!g) return partition;
    if (instance.value(agent, g) < mu)
      throw MmsError(ErrorCode::precondition_unmet, "good " + std::to_string(g) + " is below the share");
    const int from = partition.bundle_of(g);
    int to = -1;
    for (int b = 0; b < n && to < 0; ++b) {
      if (b == from) continue;
      bool clean = std::ranges::none_of(partition.bundles[b], [&](ItemId x) { return x <= s; });
      if (clean) to = b;
    }
    if (to < 0) throw MmsError(ErrorCode::internal_invariant_violation, "no bundle free of the leading goods");
    Bundle rest = partition.bundles[from].without(g);
    partition.bundles[to] = partition.bundles[to].united(rest);
    partition.bundles[from] = Bundle{g};
  }
  throw MmsError(ErrorCode::internal_invariant_violation, "singleton repair did not converge");
}

Allocation repair_singletons_chores(Allocation partition, int s) {
  const int n = static_cast<int>(partition.bundles.size());
  for (int guard = 0; guard <= s; ++guard) {
    int g = 0;
    for (int x = 1; x <= s && !g; ++x)
      if (partition.bundles[partition.bundle_of(x)].size() > 1) g = x;
    if (!g) return partition;
    int single = -1;
    for (int b = 0; b < n && single < 0; ++b)
      if (partition.bundles[b].size() == 1 && partition.bundles[b].min() > s) single = b;
    if (single < 0) throw MmsError(ErrorCode::precondition_unmet, "not enough singleton bundles to repair");
    const int from = partition.bundle_of(g);
    ItemId other = partition.bundles[single].min();
    partition.bundles[from] = partition.bundles[from].without(g).with(other);
    partition.bundles[single] = Bundle{g};
  }
  throw MmsError(ErrorCode::internal_invariant_violation, "singleton repair did not converge");
}

bool normalize_pair_chores(Allocation& partition, int n) {
  for (size_t b = 0; b < partition.bundles.size(); ++b) {
    const Bundle& pair = partition.bundles[b];
    if (pair.size() != 2 || pair.min() < n) continue;
    const ItemId x = pair.min(), y = pair.max();
    auto swap_items = [&](ItemId a, ItemId target) {
      if (a == target) return;
      const int ba = partition.bundle_of(a), bt = partition.bundle_of(target);
      partition.bundles[ba] = partition.bundles[ba].without(a).with(target);
      partition.bundles[bt] = partition.bundles[bt].without(target).with(a);
    };
    swap_items(x, n);
    swap_items(y, n + 1);
    return true;
  }
  return false;
}

Allocation singleton_surgery_chores(const Allocation& partition, int n, int m, int anchor) {
  const int c = m - n;
  const int k = static_cast<int>(partition.bundles[anchor].size());
  if (!(n > c && c > 0) || k < 2)
    throw MmsError(ErrorCode::precondition_unmet, "surgery needs n > c > 0 and an anchor of size at least 2");
  const int keep = c - k + 2;
  const int target = n - keep;
  if (keep < 1 || count_singletons(partition) >= target) return partition;

  std::vector<int> order;
  for (int b = 0; b < n; ++b)
    if (b != anchor) order.push_back(b);
  std::ranges::stable_sort(order, [&](int a, int b) { return partition.bundles[a].size() > partition.bundles[b].size(); });
  std::vector<int> kept{anchor};
  kept.insert(kept.end(), order.begin(), order.begin() + (keep - 1));

  std::vector<bool> is_kept(n, false);
  size_t kept_items = 0;
  for (int b : kept) {
    is_kept[b] = true;
    kept_items += partition.bundles[b].size();
  }
  if (kept_items < static_cast<size_t>(2 * (c - k + 1) + k))
    throw MmsError(ErrorCode::internal_invariant_violation, "kept bundles hold too few chores");

  Allocation out;
  out.bundles.resize(n);
  std::vector<ItemId> pool;
  for (int b = 0; b < n; ++b) {
    if (is_kept[b])
      out.bundles[b] = partition.bundles[b];
    else
      pool.insert(pool.end(), partition.bundles[b].begin(), partition.bundles[b].end());
  }
  while (static_cast<int>(pool.size()) < target) {
    int from = -1;
    for (int b : kept)
      if (from < 0 || out.bundles[b].size() > out.bundles[from].size()) from = b;
    ItemId x = out.bundles[from].max();
    out.bundles[from].erase(x);
    pool.push_back(x);
  }
  std::ranges::sort(pool);
  size_t next = 0;
  for (int b = 0; b < n; ++b)
    if (!is_kept[b]) out.bundles[b] = Bundle{pool[next++]};
  return out;
}

StructuredPartition structured_partition_goods(const OrderedInstance& ordered, AgentId agent,
                                               const OracleOptions& options) {
  return structured_partition_goods(ordered, agent, mms_value(ordered.instance, agent, options));
}

StructuredPartition structured_partition_goods(const OrderedInstance& ordered, AgentId agent, const MmsRecord& mms) {
  const Instance& inst = ordered.instance;
  const int n = inst.n(), m = inst.m();
  StructuredPartition out;
  if (m <= n) {
    out.partition.bundles.resize(n);
    for (int j = 1; j <= m; ++j) out.partition.bundles[j - 1] = Bundle{j};
  } else if (mms.mu.sign() == 0) {
    out.partition.bundles.resize(n);
    for (int j = 1; j < n; ++j) out.partition.bundles[j - 1] = Bundle{j};
    for (int j = n; j <= m; ++j) out.partition.bundles[n - 1].insert(j);
  } else {
    const int k = count_high_items(ordered, agent, mms.mu);
    out.partition = repair_singletons_goods(inst, agent, mms.mu, mms.witness, std::min(n - 1, k));
  }
  out.singleton_count = count_singletons(out.partition);
  return out;
}

StructuredPartition structured_partition_chores(const OrderedInstance& ordered, AgentId agent,
                                                const OracleOptions& options) {
  return structured_partition_chores(ordered, agent, mms_value(ordered.instance, agent, options).mu);
}

StructuredPartition structured_partition_chores(const OrderedInstance& ordered, AgentId agent, const Rational& mu) {
  const Instance& inst = ordered.instance;
  const int n = inst.n(), m = inst.m();
  StructuredPartition out;
  out.partition.bundles.resize(n);
  if (m <= n) {
    for (int j = 1; j <= m; ++j) out.partition.bundles[j - 1] = Bundle{j};
    out.singleton_count = m;
    return out;
  }
  // Largest s such that chores s+1..m pack into n-s bundles each worth >= mu.
  auto row = inst.row(agent);
  std::vector<int> best_assign;
  int best_s = -1;
  for (int s = n - 1; s >= 0 && best_s < 0; --s) {
    std::span<const Rational> tail = row.subspan(static_cast<size_t>(s));
    std::vector<Rational> extra{mu};
    bool ok = with_scaled(tail, extra, [&](const auto& values, const BigInt&) {
      using T = typename std::decay_t<decltype(values)>::value_type;
      std::vector<T> costs;
      for (size_t j = 0; j + 1 < values.size(); ++j) costs.push_back(-values[j]);
      const T cap = -values.back();
      // Costs are already non-increasing on an ordered chores row.
      detail::PackSearch<T> search(costs, n - s);
      return search.feasible(cap, best_assign);
    });
    if (ok) best_s = s;
  }
  if (best_s < 0) throw MmsError(ErrorCode::internal_invariant_violation, "share is not attainable");
  for (int j = 1; j <= best_s; ++j) out.partition.bundles[j - 1] = Bundle{j};
  for (size_t t = 0; t < best_assign.size(); ++t)
    out.partition.bundles[best_s + best_assign[t]].insert(best_s + 1 + static_cast<int>(t));
  normalize_pair_chores(out.partition, n);
  out.singleton_count = count_singletons(out.partition);
  return out;
}

std::optional<Allocation> find_typed_partition(const Instance& ordered, AgentId agent, const Rational& mu,
                                               const PartitionType& type) {
  const int n = ordered.n(), m = ordered.m();
  if (static_cast<int>(type.cardinalities.size()) != n) return std::nullopt;
  if (std::accumulate(type.cardinalities.begin(), type.cardinalities.end(), 0) != m) return std::nullopt;
  const int s = static_cast<int>(std::ranges::count(type.cardinalities, 1));
  for (int j = 1; j <= s; ++j)
    if (ordered.value(agent, j) < mu) return std::nullopt;
  std::vector<int> sizes;
  for (int card : type.cardinalities)
    if (card != 1) sizes.push_back(card);

  auto row = ordered.row(agent).subspan(static_cast<size_t>(s));
  std::vector<Rational> extra{mu};
  std::vector<int> assign;
  bool ok = with_scaled(row, extra, [&](const auto& values, const BigInt&) {
    using T = typename std::decay_t<decltype(values)>::value_type;
    std::vector<T> items(values.begin(), values.end() - 1);
    detail::TypedSearch<T> search(std::move(items), sizes, values.back());
    return search.find(assign);
  });
  if (!ok) return std::nullopt;
  Allocation a;
  a.bundles.resize(n);
  for (int j = 1; j <= s; ++j) a.bundles[j - 1] = Bundle{j};
  for (size_t t = 0; t < assign.size(); ++t) a.bundles[s + assign[t]].insert(s + 1 + static_cast<int>(t));
  return a;
}

std::optional<Allocation> find_allocation_meeting(const Instance& instance, const ThresholdVector& thresholds,
                                                  uint64_t cap) {
  const int n = instance.n(), m = instance.m();
  if (static_cast<int>(thresholds.size()) != n)
    throw MmsError(ErrorCode::shape_mismatch, "threshold vector length differs from agent count");
  if (!detail::power_within(n, m, cap))
    throw MmsError(ErrorCode::too_large, std::to_string(n) + "^" + std::to_string(m) + " exceeds the search cap");

  std::vector<std::vector<int64_t>> small(n);
  std::vector<int64_t> small_x(n);
  std::vector<std::vector<BigInt>> big(n);
  std::vector<BigInt> big_x(n);
  bool fits = true;
  for (AgentId i = 1; i <= n; ++i) {
    std::vector<Rational> all(instance.row(i).begin(), instance.row(i).end());
    all.push_back(thresholds[i - 1]);
    BigInt scale = detail::common_scale(all);
    std::vector<BigInt> b = detail::scale_to_big(all, scale);
    big_x[i - 1] = b.back();
    b.pop_back();
    big[i - 1] = std::move(b);
    std::vector<int64_t> s;
    if (fits && detail::scale_to_int64(all, scale, s)) {
      small_x[i - 1] = s.back();
      s.pop_back();
      small[i - 1] = std::move(s);
    } else {
      fits = false;
    }
  }
  std::vector<int> owner;
  bool found = fits ? detail::ThresholdSearch<int64_t>(small, small_x).find(owner)
                    : detail::ThresholdSearch<BigInt>(big, big_x).find(owner);
  if (!found) return std::nullopt;
  return from_assignment(owner, n, iota_items(m));
}

}  // namespace mmsalloc
