#ifndef STABSET_ENGINE_HPP
#define STABSET_ENGINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabset/graph.hpp"
#include "stabset/protocols.hpp"
#include "stabset/rng.hpp"

namespace stabset {

// Numeric priority of an algorithm instance; lower value = higher priority.
// The gating clause of every rule quantifies over instances with a smaller
// priority than the executing one.
struct AlgorithmId {
    int priority = 0;
    Kind kind = Kind::BW;
    std::string label;
};

// One protocol instance bound to its substrate: the nodes it runs on, the
// edge relation its neighborhood guards read, its designation (BW only) and
// the gate links that connect it to lower tiers. A gate link says: this node
// counts as gated when the linked lower-tier nodes are in an out state (any
// one of them, or all of them, per `require_all`). Identity links (same
// node, any) are the common case; compacted supplier tiers link group nodes
// to column sets and vice versa.
struct GateLink {
    std::size_t lower_tier = 0;    // index into AlgorithmStack::tiers()
    std::vector<NodeId> nodes;
    bool require_all = false;
};

class ProtocolInstance {
public:
    AlgorithmId id;
    std::vector<NodeId> active;                        // ascending
    std::map<NodeId, std::vector<NodeId>> adjacency;   // within active, ascending
    BwDesignation designation;                         // BW only
    std::map<NodeId, std::vector<GateLink>> gates;

    bool is_active(NodeId node) const;
};

// Ordered list of protocol instances. Hierarchical stacks require strictly
// increasing priorities; the equal-priority contention mode makes every
// instance share one four-valued variable per node and disables gating.
class AlgorithmStack {
public:
    static AlgorithmStack hierarchical(std::vector<ProtocolInstance> tiers);
    static AlgorithmStack shared_variable(std::vector<ProtocolInstance> tiers);

    const std::vector<ProtocolInstance>& tiers() const { return tiers_; }
    bool shares_variable() const { return shared_; }
    std::size_t variable_group(std::size_t tier) const { return shared_ ? 0 : tier; }
    std::size_t variable_group_count() const { return shared_ ? 1 : tiers_.size(); }

    std::size_t tier_by_priority(int priority) const;
    const ProtocolInstance& tier(std::size_t i) const { return tiers_.at(i); }

private:
    AlgorithmStack(std::vector<ProtocolInstance> tiers, bool shared);
    std::vector<ProtocolInstance> tiers_;
    bool shared_ = false;
};

// Convenience builder for the common case: every tier runs on the same
// graph with identity gate links.
class StackBuilder {
public:
    explicit StackBuilder(const Graph& g) : graph_(&g) {}
    StackBuilder& add_bw(const std::string& label, BwDesignation designation);
    StackBuilder& add_mis(const std::string& label);
    StackBuilder& add_mds(const std::string& label);
    AlgorithmStack build() const;          // hierarchical, priorities 1..k
    AlgorithmStack build_shared() const;   // equal-priority shared variable

private:
    ProtocolInstance make(Kind k, const std::string& label) const;
    const Graph* graph_;
    std::vector<ProtocolInstance> tiers_;
};

// Total map (tier-variable-group, node) -> state.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<std::map<NodeId, State>> groups)
        : groups_(std::move(groups)) {}

    State get(std::size_t group, NodeId node) const;
    void set(std::size_t group, NodeId node, State s);
    const std::vector<std::map<NodeId, State>>& groups() const { return groups_; }

    std::string packed() const;  // deterministic byte string (revisit detection)
    bool operator==(const Configuration&) const = default;

private:
    std::vector<std::map<NodeId, State>> groups_;
};

Configuration all_out_configuration(const AlgorithmStack& stack);
Configuration random_configuration(const AlgorithmStack& stack, std::uint64_t seed);

struct MoveRecord {
    std::uint64_t index = 0;   // 0-based position in the trace
    std::uint64_t round = 0;   // scheduler step this move belongs to
    NodeId node = 0;
    int priority = 0;
    Kind kind = Kind::BW;
    std::string alg_label;
    Rule rule = Rule::RWait;
    State before = State::Out;
    State after = State::Out;
};

using Trace = std::vector<MoveRecord>;

struct SchedulerPolicy {
    enum class Kind {
        CentralRandom,
        CentralAdversarialMinId,
        CentralAdversarialMaxId,
        DistributedRandomSubset,
        DistributedAdversarial,
        Synchronous,
    };
    Kind kind = Kind::CentralRandom;
    std::uint64_t seed = 0;
};

SchedulerPolicy::Kind parse_scheduler_kind(const std::string& name);
const char* to_string(SchedulerPolicy::Kind k);
bool is_deterministic(SchedulerPolicy::Kind k);
const std::vector<SchedulerPolicy::Kind>& all_scheduler_kinds();

// An enabled process: one (node, tier) pair together with the rule it would
// fire (first enabled rule in listing order).
struct EnabledProcess {
    NodeId node = 0;
    std::size_t tier = 0;
    RuleFire fire{Rule::RWait, State::Out};
};

// True when some lower-priority tier holds node `node` of tier `tier` in an
// out state, per the tier's gate links.
bool gate_active(const AlgorithmStack& stack, const Configuration& c,
                 std::size_t tier, NodeId node);

// All rules of tier `tier` whose guards hold at `node` under `c`, in listing
// order. Usually at most one in reachable states.
std::vector<Rule> enabled_rules(const AlgorithmStack& stack, const Configuration& c,
                                std::size_t tier, NodeId node);

// Enabled processes over the whole system, ordered by (node, priority).
std::vector<EnabledProcess> enabled_processes(const AlgorithmStack& stack,
                                              const Configuration& c);

// One scheduler step: the policy picks a nonempty subset of the enabled
// processes (exactly one for central kinds, every one for synchronous); each
// selected process fires the rule chosen against the pre-step configuration.
// Throws std::logic_error("already stable") when nothing is enabled.
Trace step(const AlgorithmStack& stack, Configuration& c,
           SchedulerPolicy::Kind kind, Rng& rng, std::uint64_t round);

struct RunResult {
    Configuration final_config;
    Trace trace;
    bool stabilized = false;
    bool livelock_detected = false;  // a configuration repeated under a deterministic policy
    std::uint64_t rounds = 0;
};

// Runs until no rule is enabled, the move budget is exhausted, or (for
// deterministic policies on systems with at most `revisit_node_limit`
// variables) a configuration repeats, which proves a livelock.
RunResult run_to_stabilization(const AlgorithmStack& stack, Configuration initial,
                               const SchedulerPolicy& policy, std::uint64_t max_moves,
                               std::size_t revisit_node_limit = 20);

std::uint64_t default_max_moves(const AlgorithmStack& stack);

// Replays a trace from `initial`: every move's rule must be the first
// enabled rule of its (node, tier) against the configuration at the start of
// its round, and the final configuration must match. Returns false otherwise.
bool verify_trace(const AlgorithmStack& stack, Configuration initial,
                  const RunResult& result);

// Moves of the given tier recorded after the last move of any
// lower-priority tier (all of them when no lower tier ever moved).
std::uint64_t moves_after_lower_stable(const AlgorithmStack& stack, const Trace& trace,
                                       int priority);

// Exact single-run move ceilings, evaluated on the order of the (sub)graph
// the tier effectively runs on.
std::int64_t bound_for(Kind k, std::int64_t n);

// Worst-case combined ceiling of a hierarchical stack on an n-node graph:
// sum over prefixes of the product of the tiers' bounds.
std::int64_t combined_bound(const AlgorithmStack& stack, std::int64_t n);

// Per-tier accounting of observed moves against the ceilings. `counted`
// restricts to moves at finally-ungated nodes in rounds strictly after both
// the last lower-tier move and the last move at a finally-gated node of the
// tier: past that point the tier runs exactly as the standalone algorithm on
// its induced subgraph, which is what the ceiling covers. `after_lower` is
// the raw count from moves_after_lower_stable.
struct TierBoundCheck {
    std::string label;
    Kind kind = Kind::BW;
    int priority = 0;
    std::uint64_t total_moves = 0;
    std::uint64_t after_lower = 0;
    std::uint64_t counted = 0;
    std::int64_t subgraph_n = 0;
    std::int64_t bound = 0;
    bool pass = false;
};

struct BoundReport {
    std::vector<TierBoundCheck> tiers;
    std::uint64_t total_moves = 0;
    std::int64_t combined = 0;
    bool combined_pass = false;
    bool stabilized = false;
};

BoundReport make_bound_report(const AlgorithmStack& stack, const RunResult& result);

// Final in-set of one tier; for stabilized configurations this is the set
// the correctness statements speak about.
NodeSet in_set(const AlgorithmStack& stack, const Configuration& c, std::size_t tier);

// Line-delimited trace export (one JSON object per move).
std::string trace_to_jsonl(const AlgorithmStack& stack, const Graph& g, const Trace& trace);
std::string bound_report_to_json(const BoundReport& report);

} // namespace stabset

#endif
