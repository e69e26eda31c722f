#ifndef STABSET_SCENARIO_HPP
#define STABSET_SCENARIO_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabset/engine.hpp"
#include "stabset/graph.hpp"
#include "stabset/oracles.hpp"

namespace stabset {

// The manufacturing-hall input model: columns (grid locations), per-column
// white/blacklists, which suppliers are visible at which columns, the parts
// flow between columns, and the prioritized protocol stack to run.

struct BwListDecl {
    std::string name;
    std::map<std::string, bool> designation;  // column label -> in?; unlisted = in
};

struct SupplierGroup {
    std::string name;
    std::vector<std::string> columns;  // declaration order
};

struct FlowEdgeDecl {
    std::string from;
    std::string to;
    bool directed = true;
};

// Substrate the MIS tier runs on: one node per supplier group (edges between
// groups sharing a column) or the per-column clique expansion.
enum class MisSubstrate { Compacted, FullCliques };

// How group-tier results map back onto columns. AllGroups: a column is in
// only when every group it hosts is in (conservative; hiding a supplier
// hides all its columns). AnyGroup: one in group suffices.
enum class Projection { AllGroups, AnyGroup };

struct StackEntryDecl {
    Kind kind = Kind::BW;
    std::string ref;  // BW: list name; MIS: "suppliers"|"edges"; MDS: "flow"|"edges"
    MisSubstrate substrate = MisSubstrate::Compacted;
    std::string label;  // defaults to ref (BW) or upper-case kind
};

struct Scenario {
    std::vector<std::string> columns;  // declaration order = node id order
    std::vector<std::pair<std::string, std::string>> edges;  // plain adjacencies
    std::vector<SupplierGroup> suppliers;
    std::vector<std::string> public_suppliers;  // contribute no edges
    std::vector<BwListDecl> lists;
    std::vector<FlowEdgeDecl> flow;
    std::vector<StackEntryDecl> stack;
    Projection projection = Projection::AllGroups;

    bool supplier_public(const std::string& name) const;
    const SupplierGroup* find_supplier(const std::string& name) const;
    const BwListDecl* find_list(const std::string& name) const;
};

// Sectioned text format: [columns] [edges] [suppliers] [lists] [flow]
// [stack] with '#' comments. Errors carry <name>:<line>.
Scenario parse_scenario(std::istream& in, const std::string& name);
Scenario parse_scenario_text(const std::string& text, const std::string& name = "<string>");
Scenario parse_scenario_file(const std::string& path);
std::string serialize_scenario(const Scenario& s);

// Columns only, ids 1..k in declaration order, plain [edges] applied.
Graph build_column_graph(const Scenario& s);

// One clique per non-public supplier over the columns it appears at.
Graph build_full_supplier_graph(const Scenario& s);

// One node per supplier group (labelled with its column letters); groups are
// adjacent when their column sets intersect, except that public suppliers
// contribute no edges. Also returns group node -> column labels.
struct CompactedSupplierGraph {
    Graph graph;
    std::map<NodeId, std::vector<std::string>> columns_of;
};
CompactedSupplierGraph build_compacted_supplier_graph(const Scenario& s);

// Undirected adjacency over the columns referenced by flow edges; the
// direction flags survive for export only.
Graph build_flow_graph(const Scenario& s);

// The runnable system: a merged graph holding every substrate node (columns
// first, then group nodes when a compacted MIS tier exists) and the
// prioritized stack wired with per-tier adjacency and cross-substrate gate
// links per the scenario's projection convention.
struct AssembledSystem {
    Graph merged;
    AlgorithmStack stack;
    std::vector<NodeId> columns;                       // merged-graph ids
    std::map<std::size_t, oracles::GroupMapping> group_tiers;  // tier -> mapping (merged ids)
    Projection projection = Projection::AllGroups;
};
AssembledSystem assemble(const Scenario& s);

// Equal-priority contention system: MIS over the full supplier cliques and
// MDS over the flow adjacency, sharing one four-valued variable per column.
AssembledSystem assemble_contention(const Scenario& s);

struct TierOutcome {
    std::string label;
    Kind kind = Kind::BW;
    int priority = 0;
    NodeSet in_nodes;          // tier substrate ids
    NodeSet in_columns;        // projected onto columns
    bool empty_on_subgraph = false;  // unresolved dimension: nothing in on the non-gated part
};

struct RiskReport {
    bool stabilized = false;
    bool livelock_detected = false;
    std::vector<TierOutcome> tiers;
    NodeSet intersection;      // columns in under every tier
    BoundReport bounds;
    std::vector<std::string> warnings;
};

RiskReport make_risk_report(const AssembledSystem& sys, const RunResult& run);
std::string risk_report_text(const AssembledSystem& sys, const RiskReport& r);
std::string risk_report_json(const AssembledSystem& sys, const RiskReport& r);

// Per-tier DOT export of the final configuration (in/wait/out color-coded).
std::string tier_dot(const AssembledSystem& sys, const Configuration& c, std::size_t tier);

// Built-in scenarios: the six-column hall (supplier table, parts flow,
// MIS-over-suppliers below MDS-over-flow) and the five-column two-list
// whitelist/blacklist example.
Scenario builtin_hall_scenario();
Scenario builtin_multilist_scenario();

} // namespace stabset

#endif
