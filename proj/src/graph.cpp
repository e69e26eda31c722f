#include "stabset/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stabset/rng.hpp"

namespace stabset {

namespace {

std::string quote_dot(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

NodeId Graph::add_node(const std::string& label) {
    return add_node(label, next_id_);
}

NodeId Graph::add_node(const std::string& label, NodeId id) {
    if (id == 0)
        throw std::invalid_argument("graph: node ids must be positive");
    if (has_node(id))
        throw std::invalid_argument("graph: duplicate node id " + std::to_string(id));
    if (!label.empty()) {
        if (by_label_.count(label))
            throw std::invalid_argument("graph: duplicate node label '" + label + "'");
        by_label_[label] = id;
    }
    nodes_.insert(std::lower_bound(nodes_.begin(), nodes_.end(), id), id);
    labels_[id] = label;
    adj_[id];
    if (id >= next_id_) next_id_ = id + 1;
    return id;
}

void Graph::add_edge(NodeId a, NodeId b, bool directed) {
    check_node(a);
    check_node(b);
    if (a == b)
        throw std::invalid_argument("graph: self-loop on node " + std::to_string(a));
    if (has_edge(a, b)) return;
    edges_.push_back({a, b, directed});
    auto& na = adj_[a];
    na.insert(std::lower_bound(na.begin(), na.end(), b), b);
    auto& nb = adj_[b];
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
}

void Graph::add_edge(const std::string& a, const std::string& b, bool directed) {
    add_edge(require_label(a), require_label(b), directed);
}

bool Graph::has_node(NodeId id) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), id);
}

bool Graph::has_edge(NodeId a, NodeId b) const {
    auto it = adj_.find(a);
    if (it == adj_.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), b);
}

const std::vector<NodeId>& Graph::neighbors(NodeId id) const {
    check_node(id);
    return adj_.at(id);
}

NodeSet Graph::open_neighborhood(NodeId id) const {
    const auto& nb = neighbors(id);
    return NodeSet(nb.begin(), nb.end());
}

NodeSet Graph::closed_neighborhood(NodeId id) const {
    NodeSet s = open_neighborhood(id);
    s.insert(id);
    return s;
}

Graph Graph::induced_subgraph(const NodeSet& keep) const {
    Graph out;
    for (NodeId id : keep)
        check_node(id);
    for (NodeId id : nodes_)
        if (keep.count(id))
            out.add_node(labels_.at(id), id);
    for (const Edge& e : edges_)
        if (keep.count(e.a) && keep.count(e.b))
            out.add_edge(e.a, e.b, e.directed);
    return out;
}

bool Graph::is_connected() const {
    if (nodes_.empty()) return true;
    NodeSet seen{nodes_.front()};
    std::vector<NodeId> stack{nodes_.front()};
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : adj_.at(v)) {
            if (seen.insert(w).second)
                stack.push_back(w);
        }
    }
    return seen.size() == nodes_.size();
}

const std::string& Graph::label(NodeId id) const {
    check_node(id);
    return labels_.at(id);
}

std::string Graph::display(NodeId id) const {
    const std::string& l = label(id);
    return l.empty() ? std::to_string(id) : l;
}

std::optional<NodeId> Graph::find_label(const std::string& label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

NodeId Graph::require_label(const std::string& label) const {
    auto id = find_label(label);
    if (!id)
        throw std::invalid_argument("graph: unknown node label '" + label + "'");
    return *id;
}

bool Graph::operator==(const Graph& other) const {
    if (nodes_ != other.nodes_ || labels_ != other.labels_) return false;
    if (adj_ != other.adj_) return false;
    return true;  // edge direction flags are cosmetic
}

void Graph::check_node(NodeId id) const {
    if (!has_node(id))
        throw std::invalid_argument("graph: unknown node id " + std::to_string(id));
}

Graph parse_graph(std::istream& in, const std::string& name) {
    Graph g;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw std::runtime_error(name + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "node") {
            std::string label, opt;
            if (!(ls >> label)) fail("node requires a label");
            NodeId id = 0;
            if (ls >> opt) {
                if (opt.rfind("id=", 0) != 0) fail("unexpected token '" + opt + "'");
                try {
                    id = static_cast<NodeId>(std::stoul(opt.substr(3)));
                } catch (const std::exception&) {
                    fail("bad id in '" + opt + "'");
                }
            }
            try {
                if (id)
                    g.add_node(label, id);
                else
                    g.add_node(label);
            } catch (const std::exception& e) {
                fail(e.what());
            }
        } else if (kw == "edge") {
            std::string a, b, opt;
            if (!(ls >> a >> b)) fail("edge requires two labels");
            bool directed = false;
            if (ls >> opt) {
                if (opt != "directed") fail("unexpected token '" + opt + "'");
                directed = true;
            }
            try {
                g.add_edge(a, b, directed);
            } catch (const std::exception& e) {
                fail(e.what());
            }
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }
    return g;
}

Graph parse_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open graph file " + path);
    return parse_graph(in, path);
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    for (NodeId id : g.nodes()) {
        out << "node " << (g.label(id).empty() ? g.display(id) : g.label(id))
            << " id=" << id << "\n";
    }
    for (const auto& e : g.edges()) {
        out << "edge " << g.display(e.a) << " " << g.display(e.b);
        if (e.directed) out << " directed";
        out << "\n";
    }
    return out.str();
}

std::string to_dot(const Graph& g, const std::map<NodeId, std::string>& fill,
                   const std::map<NodeId, std::string>& extra, const std::string& name) {
    bool any_directed = std::any_of(g.edges().begin(), g.edges().end(),
                                    [](const Graph::Edge& e) { return e.directed; });
    std::ostringstream out;
    out << (any_directed ? "digraph " : "graph ") << quote_dot(name) << " {\n";
    for (NodeId id : g.nodes()) {
        out << "  " << id << " [label=" << quote_dot(g.display(id));
        if (auto it = fill.find(id); it != fill.end())
            out << ", style=filled, fillcolor=" << quote_dot(it->second);
        if (auto it = extra.find(id); it != extra.end())
            out << ", " << it->second;
        out << "]\n";
    }
    const char* link = any_directed ? " -> " : " -- ";
    for (const auto& e : g.edges()) {
        out << "  " << e.a << link << e.b;
        if (any_directed && !e.directed)
            out << " [dir=none]";
        out << "\n";
    }
    out << "}\n";
    return out.str();
}

Graph random_connected_graph(std::size_t n, double extra_p, std::uint64_t seed) {
    Rng rng(seed);
    Graph g;
    for (std::size_t i = 1; i <= n; ++i)
        g.add_node("n" + std::to_string(i));
    for (std::size_t i = 2; i <= n; ++i)
        g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(1 + rng.below(i - 1)));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            double draw = rng.unit();  // one draw per pair, tree edge or not
            if (draw < extra_p && !g.has_edge(static_cast<NodeId>(i), static_cast<NodeId>(j)))
                g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
        }
    return g;
}

} // namespace stabset
