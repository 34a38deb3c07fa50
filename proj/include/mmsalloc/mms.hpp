#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mmsalloc/instance.hpp"

namespace mmsalloc {

enum class OracleMethod { exhaustive, branch_and_bound };

const char* to_string(OracleMethod method);
/// Accepts "exhaustive", "bnb" and "branch_and_bound".
OracleMethod parse_oracle_method(std::string_view text);

/// Largest n^m the exhaustive oracle will enumerate.
inline constexpr uint64_t kDefaultOracleCap = 100'000'000;

struct OracleOptions {
  OracleMethod method = OracleMethod::branch_and_bound;
  uint64_t cap = kDefaultOracleCap;
};

struct MmsRecord {
  AgentId agent = 0;
  Rational mu;
  Allocation witness;
};

using MuVector = std::vector<Rational>;
using ThresholdVector = std::vector<Rational>;

/// Exact maximin share of one row split into n bundles.
MmsRecord mms_of_row(std::span<const Rational> row, int n, ItemKind kind, const OracleOptions& options = {});
MmsRecord mms_value(const Instance& instance, AgentId agent, const OracleOptions& options = {});
MuVector mms_values(const Instance& instance, const OracleOptions& options = {});

/// Smallest bundle value of a partition for one agent.
Rational min_bundle_value(const Instance& instance, AgentId agent, const Allocation& partition);
bool is_mms_partition(const Instance& instance, AgentId agent, const Rational& mu, const Allocation& partition);

struct StructuredPartition {
  Allocation partition;
  int singleton_count = 0;
};

int count_singletons(const Allocation& partition);

/// Number of leading goods worth at least mu. For m = n+c with n > c > 0 the
/// result is at least n-c; anything less means mu was wrong.
int count_high_items(const OrderedInstance& ordered, AgentId agent, const Rational& mu);

/// Moves the rest of each bundle holding one of the goods 1..s into a bundle
/// free of 1..s until those goods are all singletons. Requires v(s) >= mu.
Allocation repair_singletons_goods(const Instance& instance, AgentId agent, const Rational& mu,
                                   Allocation partition, int s);

/// Swaps chores 1..s with foreign singletons until 1..s are singletons.
/// Requires at least s singleton bundles.
Allocation repair_singletons_chores(Allocation partition, int s);

/// Rewrites one size-2 bundle that avoids chores 1..n-1 to {n, n+1} by
/// position swaps. Returns false when no such bundle exists.
bool normalize_pair_chores(Allocation& partition, int n);

/// Rebuilds a chores partition so that it has at least n-(c-k+2) singleton
/// bundles, where k is the size of bundle `anchor`. Bundles kept from the
/// input only lose chores.
Allocation singleton_surgery_chores(const Allocation& partition, int n, int m, int anchor);

StructuredPartition structured_partition_goods(const OrderedInstance& ordered, AgentId agent,
                                               const OracleOptions& options = {});
StructuredPartition structured_partition_goods(const OrderedInstance& ordered, AgentId agent,
                                               const MmsRecord& mms);
StructuredPartition structured_partition_chores(const OrderedInstance& ordered, AgentId agent,
                                                const OracleOptions& options = {});
StructuredPartition structured_partition_chores(const OrderedInstance& ordered, AgentId agent,
                                                const Rational& mu);

/// Partition of the given type with every bundle worth at least mu, with the
/// singletons placed on items 1..s (no loss of generality on ordered rows).
std::optional<Allocation> find_typed_partition(const Instance& ordered, AgentId agent, const Rational& mu,
                                               const PartitionType& type);

/// Allocation with v_i(A_i) >= x_i for all i, found by exhaustive search.
/// Absence is a proof that none exists. Throws TooLarge when n^m > cap.
std::optional<Allocation> find_allocation_meeting(const Instance& instance, const ThresholdVector& thresholds,
                                                  uint64_t cap = kDefaultOracleCap);

}  // namespace mmsalloc
