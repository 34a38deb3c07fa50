#include "mmsalloc/instance.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mmsalloc/error.hpp"

namespace mmsalloc {

const char* to_string(ItemKind kind) { return kind == ItemKind::goods ? "goods" : "chores"; }

ItemKind parse_item_kind(std::string_view text) {
  if (text == "goods") return ItemKind::goods;
  if (text == "chores") return ItemKind::chores;
  throw MmsError(ErrorCode::parse_error, "unknown item kind '" + std::string(text) + "'");
}

Bundle::Bundle(std::initializer_list<ItemId> items) : Bundle(std::vector<ItemId>(items)) {}

Bundle::Bundle(std::vector<ItemId> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  if (std::adjacent_find(items_.begin(), items_.end()) != items_.end())
    throw MmsError(ErrorCode::shape_mismatch, "duplicate item in bundle");
}

bool Bundle::contains(ItemId item) const { return std::binary_search(items_.begin(), items_.end(), item); }

void Bundle::insert(ItemId item) {
  auto it = std::lower_bound(items_.begin(), items_.end(), item);
  if (it != items_.end() && *it == item) return;
  items_.insert(it, item);
}

void Bundle::erase(ItemId item) {
  auto it = std::lower_bound(items_.begin(), items_.end(), item);
  if (it != items_.end() && *it == item) items_.erase(it);
}

Bundle Bundle::with(ItemId item) const {
  Bundle b = *this;
  b.insert(item);
  return b;
}

Bundle Bundle::without(ItemId item) const {
  Bundle b = *this;
  b.erase(item);
  return b;
}

Bundle Bundle::united(const Bundle& other) const {
  std::vector<ItemId> out;
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(), std::back_inserter(out));
  Bundle b;
  b.items_ = std::move(out);
  return b;
}

std::string Bundle::to_string() const {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < items_.size(); ++i) os << (i ? "," : "") << items_[i];
  os << '}';
  return os.str();
}

bool Allocation::is_partition_of(int m) const {
  std::vector<char> seen(static_cast<size_t>(m) + 1, 0);
  int count = 0;
  for (const auto& b : bundles) {
    for (ItemId j : b) {
      if (j < 1 || j > m || seen[j]) return false;
      seen[j] = 1;
      ++count;
    }
  }
  return count == m;
}

void Allocation::require_partition_of(int m) const {
  if (!is_partition_of(m))
    throw MmsError(ErrorCode::shape_mismatch, "allocation is not a partition of " + std::to_string(m) + " items");
}

int Allocation::bundle_of(ItemId item) const {
  for (size_t i = 0; i < bundles.size(); ++i)
    if (bundles[i].contains(item)) return static_cast<int>(i);
  return -1;
}

PartitionType partition_type(const Allocation& a) {
  PartitionType t;
  for (const auto& b : a.bundles) t.cardinalities.push_back(static_cast<int>(b.size()));
  std::sort(t.cardinalities.begin(), t.cardinalities.end());
  return t;
}

Instance make_instance(ItemKind kind, std::vector<std::vector<Rational>> valuations) {
  if (valuations.empty()) throw MmsError(ErrorCode::empty_matrix, "instance needs at least one agent");
  const size_t m = valuations.front().size();
  for (const auto& row : valuations) {
    if (row.size() != m) throw MmsError(ErrorCode::ragged_matrix, "valuation rows differ in length");
    for (const auto& v : row) {
      if ((kind == ItemKind::goods && v.sign() < 0) || (kind == ItemKind::chores && v.sign() > 0))
        throw MmsError(ErrorCode::sign_violation,
                       "value " + v.to_string() + " not allowed for " + std::string(to_string(kind)));
    }
  }
  Instance inst;
  inst.kind_ = kind;
  inst.m_ = static_cast<int>(m);
  inst.rows_ = std::move(valuations);
  return inst;
}

Instance sub_instance(const Instance& instance, const std::vector<AgentId>& agents, const std::vector<ItemId>& items) {
  Instance inst;
  inst.kind_ = instance.kind();
  inst.m_ = agents.empty() ? 0 : static_cast<int>(items.size());
  for (AgentId i : agents) {
    std::vector<Rational> row;
    row.reserve(items.size());
    for (ItemId j : items) row.push_back(instance.value(i, j));
    inst.rows_.push_back(std::move(row));
  }
  return inst;
}

Rational bundle_value(const Instance& instance, AgentId agent, const Bundle& bundle) {
  Rational sum;
  for (ItemId j : bundle) sum += instance.value(agent, j);
  return sum;
}

OrderedInstance to_ordered(const Instance& instance) {
  OrderedInstance out;
  std::vector<std::vector<Rational>> rows;
  for (AgentId i = 1; i <= instance.n(); ++i) {
    std::vector<ItemId> perm(instance.m());
    std::iota(perm.begin(), perm.end(), 1);
    auto row = instance.row(i);
    if (instance.kind() == ItemKind::goods) {
      std::stable_sort(perm.begin(), perm.end(), [&](ItemId a, ItemId b) { return row[a - 1] > row[b - 1]; });
    } else {
      std::stable_sort(perm.begin(), perm.end(), [&](ItemId a, ItemId b) { return row[a - 1] < row[b - 1]; });
    }
    std::vector<Rational> sorted;
    sorted.reserve(perm.size());
    for (ItemId j : perm) sorted.push_back(row[j - 1]);
    rows.push_back(std::move(sorted));
    out.source_ranks.push_back(std::move(perm));
  }
  out.instance = make_instance(instance.kind(), std::move(rows));
  return out;
}

bool is_ordered(const Instance& instance) {
  for (AgentId i = 1; i <= instance.n(); ++i) {
    for (ItemId j = 1; j < instance.m(); ++j) {
      const auto& a = instance.value(i, j);
      const auto& b = instance.value(i, j + 1);
      if (instance.kind() == ItemKind::goods ? a < b : a > b) return false;
    }
  }
  return true;
}

Allocation lift_allocation(const OrderedInstance& ordered, const Allocation& ordered_alloc, const Instance& original) {
  const int m = original.m();
  if (ordered.instance.m() != m || ordered.instance.n() != original.n())
    throw MmsError(ErrorCode::shape_mismatch, "ordered instance does not match original");
  ordered_alloc.require_partition_of(m);
  if (static_cast<int>(ordered_alloc.bundles.size()) != original.n())
    throw MmsError(ErrorCode::shape_mismatch, "allocation has wrong number of bundles");

  std::vector<int> holder(static_cast<size_t>(m) + 1, 0);
  for (size_t a = 0; a < ordered_alloc.bundles.size(); ++a)
    for (ItemId j : ordered_alloc.bundles[a]) holder[j] = static_cast<int>(a) + 1;

  std::vector<char> taken(static_cast<size_t>(m) + 1, 0);
  Allocation lifted;
  lifted.bundles.resize(ordered_alloc.bundles.size());
  // Goods go best position first; chores go from the least costly position.
  const bool goods = original.kind() == ItemKind::goods;
  for (int step = 1; step <= m; ++step) {
    const ItemId j = goods ? step : m + 1 - step;
    const AgentId agent = holder[j];
    ItemId best = 0;
    for (ItemId g = 1; g <= m; ++g) {
      if (taken[g]) continue;
      // Both kinds pick the highest value; for chores that is the least negative.
      if (best == 0 || original.value(agent, g) > original.value(agent, best)) best = g;
    }
    taken[best] = 1;
    lifted.bundles[agent - 1].insert(best);
  }
  return lifted;
}

}  // namespace mmsalloc
