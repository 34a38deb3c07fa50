#pragma once

#include <compare>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "mmsalloc/rational.hpp"

namespace mmsalloc {

enum class ItemKind { goods, chores };

const char* to_string(ItemKind kind);
ItemKind parse_item_kind(std::string_view text);

/// Agents and items are numbered from 1.
using AgentId = int;
using ItemId = int;

/// Sorted set of item ids.
class Bundle {
 public:
  Bundle() = default;
  Bundle(std::initializer_list<ItemId> items);
  explicit Bundle(std::vector<ItemId> items);

  const std::vector<ItemId>& items() const { return items_; }
  size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(ItemId item) const;
  ItemId min() const { return items_.front(); }
  ItemId max() const { return items_.back(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  void insert(ItemId item);
  void erase(ItemId item);

  Bundle with(ItemId item) const;
  Bundle without(ItemId item) const;
  Bundle united(const Bundle& other) const;

  std::string to_string() const;

  friend bool operator==(const Bundle&, const Bundle&) = default;
  friend auto operator<=>(const Bundle&, const Bundle&) = default;

 private:
  std::vector<ItemId> items_;
};

/// n bundles; bundles_[i] belongs to agent i+1 when used as an allocation.
struct Allocation {
  std::vector<Bundle> bundles;

  /// Bundles pairwise disjoint and covering {1..m}.
  bool is_partition_of(int m) const;
  /// Throws ShapeMismatch unless is_partition_of(m).
  void require_partition_of(int m) const;
  /// Index (0-based) of the bundle containing the item, or -1.
  int bundle_of(ItemId item) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Sorted cardinalities of a partition.
struct PartitionType {
  std::vector<int> cardinalities;
  friend bool operator==(const PartitionType&, const PartitionType&) = default;
};

PartitionType partition_type(const Allocation& a);

/// n x m additive valuation matrix with a uniform sign per kind.
class Instance {
 public:
  ItemKind kind() const { return kind_; }
  int n() const { return static_cast<int>(rows_.size()); }
  int m() const { return m_; }
  /// 1-based agent and item.
  const Rational& value(AgentId agent, ItemId item) const { return rows_[agent - 1][item - 1]; }
  std::span<const Rational> row(AgentId agent) const { return rows_[agent - 1]; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  friend Instance make_instance(ItemKind kind, std::vector<std::vector<Rational>> valuations);
  friend Instance sub_instance(const Instance& instance, const std::vector<AgentId>& agents,
                               const std::vector<ItemId>& items);
  ItemKind kind_ = ItemKind::goods;
  int m_ = 0;
  std::vector<std::vector<Rational>> rows_;
};

/// Validates shape and sign.
Instance make_instance(ItemKind kind, std::vector<std::vector<Rational>> valuations);

/// Rows of the listed agents restricted to the listed items, in the given
/// order. An empty agent list yields an instance with no agents and no items.
Instance sub_instance(const Instance& instance, const std::vector<AgentId>& agents, const std::vector<ItemId>& items);

Rational bundle_value(const Instance& instance, AgentId agent, const Bundle& bundle);

struct OrderedInstance {
  Instance instance;
  /// source_ranks[i][j-1] is the original item whose value sits at ordered position j for agent i+1.
  std::vector<std::vector<ItemId>> source_ranks;
};

/// Every agent's row sorted (goods: non-increasing, chores: non-decreasing);
/// ties keep original item order.
OrderedInstance to_ordered(const Instance& instance);

bool is_ordered(const Instance& instance);

/// Picking-sequence lift: ordered positions are processed from the most to
/// the least valuable (goods 1..m, chores m..1) and the holder of each takes
/// their most valuable remaining original item.
Allocation lift_allocation(const OrderedInstance& ordered, const Allocation& ordered_alloc, const Instance& original);

}  // namespace mmsalloc
