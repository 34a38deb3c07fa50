#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmsalloc/domination.hpp"
#include "mmsalloc/instance.hpp"
#include "mmsalloc/mms.hpp"

namespace mmsalloc {

enum class RuleId {
  single_item,
  pair_blockable,
  pigeonhole_pair,
  pair_from_high,
  domination,
  efm_batch,
  identical_partition_base,
  two_agent_base,
};

const char* to_string(RuleId rule);
RuleId parse_rule_id(std::string_view text);

struct Award {
  AgentId agent = 0;
  Bundle bundle;
  friend bool operator==(const Award&, const Award&) = default;
};

/// Removes the awarded agents together with their bundles.
struct ReductionStep {
  RuleId rule = RuleId::single_item;
  std::string branch;  // finer label inside a case analysis, may be empty
  std::vector<Award> awards;
  friend bool operator==(const ReductionStep&, const ReductionStep&) = default;
};

/// Steps and final allocation use original agent ids and item ids of the
/// ordered view of the original instance.
struct ReductionTrace {
  std::vector<ReductionStep> steps;
  std::vector<AgentId> final_agents;
  Allocation final;  // final.bundles[i] goes to final_agents[i]
  std::string final_rule;
};

// Rule preconditions are evaluated on the instance given; agent and item ids
// in returned steps are local to it.

std::optional<ReductionStep> reduce_single_item(const Instance& instance, const MuVector& mu);
std::optional<ReductionStep> reduce_pair_blockable(const Instance& instance, const MuVector& mu);
std::optional<ReductionStep> reduce_pigeonhole_pair(const OrderedInstance& ordered, const MuVector& mu);
std::optional<ReductionStep> reduce_pair_from_high(const OrderedInstance& ordered, const MuVector& mu);

/// The picked bundle of the group goes to its owner, `keep - 1` further group
/// members stay, and every other agent receives one of the leading items
/// 1..n-keep. Throws PreconditionUnmet when the staying agents do not hold
/// those items as singletons or the leading items cannot be matched.
ReductionStep reduce_by_domination(const OrderedInstance& ordered, const std::vector<TailBundle>& group,
                                   ItemKind kind, const MuVector& mu, int keep);

/// Allocation from a partition that is an MMS partition for at least n-1
/// agents; the remaining agent picks first.
std::optional<Allocation> base_identical_partitions(const Instance& instance, const MuVector& mu,
                                                    const OracleOptions& options = {});

/// Residual instance with the awarded agents and items removed; surviving ids
/// are renumbered keeping their order.
Instance apply(const Instance& instance, const ReductionStep& step);

struct StepVerdict {
  bool valid = false;
  std::string reason;
};

StepVerdict check_step(const Instance& instance, const ReductionStep& step, const OracleOptions& options = {});
bool verify_step(const Instance& instance, const ReductionStep& step, const OracleOptions& options = {});

/// Instance plus the original ids of its surviving agents and items.
struct Residual {
  Instance instance;
  std::vector<AgentId> agents;
  std::vector<ItemId> items;
};

Residual make_residual(const Instance& instance);
Residual apply(const Residual& residual, const ReductionStep& local_step);
ReductionStep to_global(const Residual& residual, const ReductionStep& local_step);
/// Translates a step in original ids into the residual's local ids.
ReductionStep to_local(const Residual& residual, const ReductionStep& global_step);

struct ReplayReport {
  bool partition_ok = false;
  std::vector<StepVerdict> steps;  // empty unless step checks were requested
  Allocation allocation;           // over the ordered view, indexed by original agent
  std::string error;
};

/// Replays a trace on the ordered view of `ordered`; optionally checks every
/// step against exact shares.
ReplayReport replay_trace(const Instance& ordered, const ReductionTrace& trace, bool check_steps,
                          const OracleOptions& options = {});

}  // namespace mmsalloc
