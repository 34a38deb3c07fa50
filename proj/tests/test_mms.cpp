#include <algorithm>
#include <random>

#include "doctest.h"
#include "mmsalloc/error.hpp"
#include "mmsalloc/mms.hpp"
#include "oracles.hpp"

using namespace mmsalloc;

namespace {

std::vector<Rational> row_of(const Instance& inst, AgentId i) {
  auto r = inst.row(i);
  return {r.begin(), r.end()};
}

const OracleOptions kExhaustive{OracleMethod::exhaustive, kDefaultOracleCap};
const OracleOptions kBnb{OracleMethod::branch_and_bound, kDefaultOracleCap};

}  // namespace

TEST_CASE("share of a small goods row") {
  Instance inst = make_instance(ItemKind::goods, {{3, 2, 1, 1}, {1, 1, 1, 1}});
  for (const auto& opt : {kExhaustive, kBnb}) {
    MmsRecord r = mms_value(inst, 1, opt);
    CHECK(r.mu == 3);
    CHECK(oracle::is_mms_partition(row_of(inst, 1), 3, r.witness));
    CHECK(mms_value(inst, 2, opt).mu == 2);
  }
  CHECK(min_bundle_value(inst, 1, Allocation{{Bundle{1}, Bundle{2, 3, 4}}}) == 3);
  CHECK(is_mms_partition(inst, 1, 3, Allocation{{Bundle{1}, Bundle{2, 3, 4}}}));
}

TEST_CASE("oracle method names") {
  CHECK(parse_oracle_method("bnb") == OracleMethod::branch_and_bound);
  CHECK(parse_oracle_method("exhaustive") == OracleMethod::exhaustive);
  CHECK_THROWS_AS(parse_oracle_method("magic"), MmsError);
}

TEST_CASE("exhaustive oracle refuses oversized enumerations") {
  std::vector<Rational> row(30, Rational(1));
  try {
    mms_of_row(row, 4, ItemKind::goods, OracleOptions{OracleMethod::exhaustive, 1000});
    FAIL("no TooLarge");
  } catch (const MmsError& e) {
    CHECK(e.code() == ErrorCode::too_large);
  }
  CHECK(mms_of_row(row, 4, ItemKind::goods, kBnb).mu == 7);
}

TEST_CASE("both oracles agree with brute force") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const ItemKind kind = t % 2 ? ItemKind::chores : ItemKind::goods;
    const int n = 1 + static_cast<int>(rng() % 3), m = static_cast<int>(rng() % 9);
    Instance inst = oracle::random_instance(rng, kind, n, m, t % 3 ? 12 : 1000);
    for (AgentId i = 1; i <= n; ++i) {
      const Rational want = oracle::mms(inst, i);
      MmsRecord a = mms_value(inst, i, kExhaustive), b = mms_value(inst, i, kBnb);
      CHECK(a.mu == want);
      CHECK(b.mu == want);
      CHECK(oracle::is_mms_partition(row_of(inst, i), want, a.witness));
      CHECK(oracle::is_mms_partition(row_of(inst, i), want, b.witness));
    }
    CHECK(mms_values(inst) == oracle::mms_all(inst));
  }
}

TEST_CASE("rational valuations use the big-integer path") {
  Instance inst = make_instance(ItemKind::goods, {{Rational::parse("1/3"), Rational::parse("1/3"), Rational::parse("2/3")},
                                                  {Rational::parse("1000000000000000000000"), 1, 1}});
  CHECK(mms_value(inst, 1).mu == Rational::parse("2/3"));
  CHECK(mms_value(inst, 2).mu == 2);
}

TEST_CASE("structured goods partition of a short row") {
  OrderedInstance o = to_ordered(make_instance(ItemKind::goods, {{4, 3, 2, 1}, {4, 3, 2, 1}, {4, 3, 2, 1}}));
  StructuredPartition sp = structured_partition_goods(o, 1);
  CHECK(sp.partition.bundles == std::vector<Bundle>{Bundle{1}, Bundle{2}, Bundle{3, 4}});
  CHECK(sp.singleton_count == 2);
}

TEST_CASE("structured chores partition of a short row") {
  OrderedInstance o = to_ordered(make_instance(ItemKind::chores, {{-4, -3, -2, -1}, {-4, -3, -2, -1}, {-4, -3, -2, -1}}));
  CHECK(mms_value(o.instance, 1).mu == -4);
  StructuredPartition sp = structured_partition_chores(o, 1);
  CHECK(sp.partition.bundles == std::vector<Bundle>{Bundle{1}, Bundle{2}, Bundle{3, 4}});
  CHECK(sp.singleton_count == 2);
}

TEST_CASE("leading goods worth the share number at least n-c") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    const int n = 3, c = 1 + static_cast<int>(rng() % 2);
    OrderedInstance o = to_ordered(oracle::random_instance(rng, ItemKind::goods, n, n + c, 15));
    for (AgentId i = 1; i <= n; ++i) CHECK(count_high_items(o, i, oracle::mms(o.instance, i)) >= n - c);
  }
}

TEST_CASE("structured goods partitions keep leading singletons") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 3), m = n + 1 + static_cast<int>(rng() % 3);
    OrderedInstance o = to_ordered(oracle::random_instance(rng, ItemKind::goods, n, m, 20));
    for (AgentId i = 1; i <= n; ++i) {
      const Rational mu = oracle::mms(o.instance, i);
      StructuredPartition sp = structured_partition_goods(o, i);
      CHECK(oracle::is_mms_partition(row_of(o.instance, i), mu, sp.partition));
      int high = 0;
      while (high < m && o.instance.value(i, high + 1) >= mu) ++high;
      CHECK(sp.singleton_count >= std::min(n - 1, high));
      for (int j = 1; j <= sp.singleton_count; ++j) CHECK(sp.partition.bundles[j - 1] == Bundle{j});
    }
  }
}

TEST_CASE("structured chores partitions maximize leading singletons") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 3), m = n + 1 + static_cast<int>(rng() % 3);
    OrderedInstance o = to_ordered(oracle::random_instance(rng, ItemKind::chores, n, m, 20));
    for (AgentId i = 1; i <= n; ++i) {
      const auto row = row_of(o.instance, i);
      const Rational mu = oracle::mms(row, n);
      for (const Rational& v : row) CHECK(v >= mu);
      StructuredPartition sp = structured_partition_chores(o, i);
      CHECK(oracle::is_mms_partition(row, mu, sp.partition));
      const int s = sp.singleton_count;
      for (int j = 1; j <= s; ++j) CHECK(sp.partition.bundles[j - 1] == Bundle{j});
      if (s + 1 < n) {
        std::vector<Rational> rest(row.begin() + s + 1, row.end());
        CHECK(oracle::mms(rest, n - s - 1) < mu);
      }
    }
  }
}

TEST_CASE("pair normalization for chores") {
  std::mt19937_64 rng(23);
  int normalized = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = 3 + static_cast<int>(rng() % 2), m = n + 1 + static_cast<int>(rng() % 3);
    OrderedInstance o = to_ordered(oracle::random_instance(rng, ItemKind::chores, n, m, 20));
    const auto row = row_of(o.instance, 1);
    const Rational mu = oracle::mms(row, n);
    Allocation p = mms_value(o.instance, 1).witness;
    Allocation q = p;
    if (!normalize_pair_chores(q, n)) continue;
    ++normalized;
    CHECK(oracle::is_mms_partition(row, mu, q));
    auto sizes = [](const Allocation& a) {
      std::vector<size_t> s;
      for (const Bundle& b : a.bundles) s.push_back(b.size());
      return s;
    };
    CHECK(sizes(p) == sizes(q));
    for (ItemId j = 1; j < n; ++j) CHECK(p.bundle_of(j) == q.bundle_of(j));
    CHECK(std::find(q.bundles.begin(), q.bundles.end(), Bundle{n, n + 1}) != q.bundles.end());
  }
  CHECK(normalized > 0);
}

TEST_CASE("singleton surgery for chores") {
  std::mt19937_64 rng(24);
  int operated = 0;
  for (int t = 0; t < 400; ++t) {
    const int n = 5, c = 1 + static_cast<int>(rng() % 4), m = n + c;
    std::vector<Rational> row;
    for (int j = 0; j < m; ++j) row.emplace_back(-1 - static_cast<int>(rng() % 3));
    std::sort(row.begin(), row.end());
    const Rational mu = mms_of_row(row, n, ItemKind::chores).mu;
    // Random MMS partitions, most of them with few singletons.
    for (int tries = 0; tries < 200; ++tries) {
      Allocation p;
      p.bundles.resize(n);
      for (ItemId j = 1; j <= m; ++j) p.bundles[rng() % n].insert(j);
      if (!oracle::is_mms_partition(row, mu, p)) continue;
      for (int b = 0; b < n; ++b) {
        const int k = static_cast<int>(p.bundles[b].size());
        if (k < 2 || c - k + 2 < 1) continue;
        Allocation q = singleton_surgery_chores(p, n, m, b);
        CHECK(oracle::is_mms_partition(row, mu, q));
        CHECK(count_singletons(q) >= n - (c - k + 2));
        operated += count_singletons(p) < n - (c - k + 2);
      }
      break;
    }
  }
  CHECK(operated > 20);
}

TEST_CASE("typed partitions match a brute-force scan") {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 120; ++t) {
    const int n = 3, m = 6 + static_cast<int>(rng() % 2);
    OrderedInstance o = to_ordered(oracle::random_instance(rng, ItemKind::goods, n, m, 12));
    const auto row = row_of(o.instance, 1);
    const Rational mu = oracle::mms(row, n);
    for (const PartitionType& type :
         {PartitionType{{1, 2, 3}}, PartitionType{{2, 2, 2}}, PartitionType{{1, 1, 4}}, PartitionType{{1, 2, 4}},
          PartitionType{{2, 2, 3}}, PartitionType{{1, 3, 3}}}) {
      bool brute = false;
      std::vector<int> owner(m, 0);
      while (!brute) {
        Allocation a;
        a.bundles.resize(n);
        for (int j = 0; j < m; ++j) a.bundles[owner[j]].insert(j + 1);
        brute = partition_type(a) == type && oracle::is_mms_partition(row, mu, a);
        int pos = 0;
        while (pos < m && ++owner[pos] == n) owner[pos++] = 0;
        if (pos == m) break;
      }
      auto found = find_typed_partition(o.instance, 1, mu, type);
      CHECK(found.has_value() == brute);
      if (found) {
        CHECK(partition_type(*found) == type);
        CHECK(oracle::is_mms_partition(row, mu, *found));
      }
    }
  }
}

TEST_CASE("threshold allocation search") {
  Instance two = make_instance(ItemKind::goods, {{3, 2, 1, 1}, {3, 2, 1, 1}});
  auto a = find_allocation_meeting(two, {3, 3});
  REQUIRE(a);
  CHECK(bundle_value(two, 1, a->bundles[0]) >= 3);
  CHECK(bundle_value(two, 2, a->bundles[1]) >= 3);
  CHECK_FALSE(find_allocation_meeting(two, {4, 4}));
  CHECK_THROWS_AS(find_allocation_meeting(two, {1}), MmsError);

  std::mt19937_64 rng(26);
  for (int t = 0; t < 200; ++t) {
    const ItemKind kind = t % 2 ? ItemKind::chores : ItemKind::goods;
    const int n = 2 + static_cast<int>(rng() % 2), m = static_cast<int>(rng() % 7);
    Instance inst = oracle::random_instance(rng, kind, n, m, 10);
    std::vector<Rational> x;
    for (AgentId i = 1; i <= n; ++i) x.push_back(oracle::mms(inst, i) + static_cast<int>(rng() % 3) - 1);
    auto found = find_allocation_meeting(inst, x);
    CHECK(found.has_value() == oracle::allocation_exists(inst, x));
    if (found)
      for (AgentId i = 1; i <= n; ++i) CHECK(bundle_value(inst, i, found->bundles[i - 1]) >= x[i - 1]);
  }
}
