#ifndef STABSET_GRAPH_HPP
#define STABSET_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace stabset {

using NodeId = std::uint32_t;
using NodeSet = std::set<NodeId>;

// Undirected simple graph with unique positive node ids and optional display
// labels. Edges may carry a direction flag (kept for export only; every
// adjacency query is undirected). Instances are built once and then treated
// as immutable; const access is safe to share across threads.
class Graph {
public:
    struct Edge {
        NodeId a = 0;
        NodeId b = 0;
        bool directed = false;
    };

    // Ids are assigned in first-seen order starting at 1 unless an explicit
    // id is supplied. Labels must be unique when non-empty.
    NodeId add_node(const std::string& label = "");
    NodeId add_node(const std::string& label, NodeId id);

    // Rejects self-loops; duplicate edges collapse (simple graph). A repeated
    // edge keeps the first direction flag.
    void add_edge(NodeId a, NodeId b, bool directed = false);
    void add_edge(const std::string& a, const std::string& b, bool directed = false);

    std::size_t order() const { return nodes_.size(); }   // n = |V|
    std::size_t size() const { return edges_.size(); }    // m = |E|

    const std::vector<NodeId>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_node(NodeId id) const;
    bool has_edge(NodeId a, NodeId b) const;

    // Sorted ascending; throws on unknown id.
    const std::vector<NodeId>& neighbors(NodeId id) const;

    NodeSet open_neighborhood(NodeId id) const;    // N(i)
    NodeSet closed_neighborhood(NodeId id) const;  // N[i]

    Graph induced_subgraph(const NodeSet& keep) const;

    bool is_connected() const;  // empty graph counts as connected

    const std::string& label(NodeId id) const;      // "" when unset
    std::string display(NodeId id) const;           // label or decimal id
    std::optional<NodeId> find_label(const std::string& label) const;
    NodeId require_label(const std::string& label) const;

    bool operator==(const Graph& other) const;

private:
    void check_node(NodeId id) const;

    std::vector<NodeId> nodes_;                   // ascending
    std::vector<Edge> edges_;                     // insertion order
    std::map<NodeId, std::vector<NodeId>> adj_;   // ascending neighbor lists
    std::map<NodeId, std::string> labels_;
    std::map<std::string, NodeId> by_label_;
    NodeId next_id_ = 1;
};

// Text listing: `node <label> [id=<n>]` / `edge <label> <label> [directed]`,
// one per line, '#' comments. Errors carry <name>:<line>.
Graph parse_graph(std::istream& in, const std::string& name);
Graph parse_graph_file(const std::string& path);
std::string serialize_graph(const Graph& g);

// Graphviz export. `fill` maps node -> fillcolor, `extra` appends raw
// per-node attributes (e.g. state labels). Directed edges render as arrows.
std::string to_dot(const Graph& g,
                   const std::map<NodeId, std::string>& fill = {},
                   const std::map<NodeId, std::string>& extra = {},
                   const std::string& name = "g");

// Random connected graph: spanning tree plus independent extra edges with
// probability `extra_p`. Deterministic per seed; ids 1..n.
Graph random_connected_graph(std::size_t n, double extra_p, std::uint64_t seed);

} // namespace stabset

#endif
