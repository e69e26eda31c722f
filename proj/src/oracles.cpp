#include "stabset/oracles.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace stabset::oracles {

namespace {

// Dense index + closed-neighborhood bitmasks; everything below enumerates
// over these.
struct MaskGraph {
    std::vector<NodeId> ids;             // ascending
    std::map<NodeId, int> index;
    std::vector<std::uint64_t> closed;   // closed[i] = N[ids[i]] as mask
    std::uint64_t all = 0;

    explicit MaskGraph(const Graph& g) {
        ids = g.nodes();
        if (ids.size() > 64)
            throw std::invalid_argument("oracle: graphs above 64 nodes are not supported");
        for (std::size_t i = 0; i < ids.size(); ++i)
            index[ids[i]] = static_cast<int>(i);
        closed.resize(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            std::uint64_t m = 1ull << i;
            for (NodeId j : g.neighbors(ids[i]))
                m |= 1ull << index.at(j);
            closed[i] = m;
            all |= 1ull << i;
        }
    }

    std::uint64_t to_mask(const NodeSet& s) const {
        std::uint64_t m = 0;
        for (NodeId v : s) {
            auto it = index.find(v);
            if (it == index.end())
                throw std::invalid_argument("oracle: set contains node " + std::to_string(v) +
                                            " outside the graph");
            m |= 1ull << it->second;
        }
        return m;
    }

    NodeSet to_set(std::uint64_t m) const {
        NodeSet s;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (m >> i & 1)
                s.insert(ids[i]);
        return s;
    }

    std::uint64_t closure(std::uint64_t s) const {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (s >> i & 1)
                out |= closed[i];
        return out;
    }

    bool independent(std::uint64_t s) const {
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (s >> i & 1)
                if ((closed[i] & ~(1ull << i)) & s)
                    return false;
        return true;
    }

    bool dominating(std::uint64_t s) const { return closure(s) == all; }

    bool irredundant(std::uint64_t s) const {
        // every member has a private neighbor
        for (std::size_t v = 0; v < ids.size(); ++v) {
            if (!(s >> v & 1)) continue;
            bool has_private = false;
            std::uint64_t candidates = closed[v];
            while (candidates) {
                int u = std::countr_zero(candidates);
                candidates &= candidates - 1;
                if ((closed[u] & s) == (1ull << v)) {
                    has_private = true;
                    break;
                }
            }
            if (!has_private) return false;
        }
        return true;
    }

    bool maximal_independent(std::uint64_t s) const {
        if (!independent(s)) return false;
        // every outside node has a neighbor in s
        return (closure(s) == all);
    }

    bool minimal_dominating(std::uint64_t s) const {
        if (!dominating(s)) return false;
        std::uint64_t rest = s;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            if (dominating(s & ~(1ull << v)))
                return false;
        }
        return true;
    }

    bool maximal_irredundant(std::uint64_t s) const {
        if (!irredundant(s)) return false;
        std::uint64_t outside = all & ~s;
        while (outside) {
            int v = std::countr_zero(outside);
            outside &= outside - 1;
            if (irredundant(s | (1ull << v)))
                return false;
        }
        return true;
    }
};

void check_cap(const Graph& g, std::size_t cap) {
    if (g.order() > cap)
        throw std::invalid_argument("oracle: graph has " + std::to_string(g.order()) +
                                    " nodes, above the enumeration cap of " +
                                    std::to_string(cap));
}

} // namespace

bool is_independent(const Graph& g, const NodeSet& s) {
    MaskGraph mg(g);
    return mg.independent(mg.to_mask(s));
}

bool is_maximal_independent(const Graph& g, const NodeSet& s) {
    MaskGraph mg(g);
    return mg.maximal_independent(mg.to_mask(s));
}

bool is_dominating(const Graph& g, const NodeSet& s) {
    MaskGraph mg(g);
    return mg.dominating(mg.to_mask(s));
}

bool is_minimal_dominating(const Graph& g, const NodeSet& s) {
    MaskGraph mg(g);
    return mg.minimal_dominating(mg.to_mask(s));
}

bool is_irredundant(const Graph& g, const NodeSet& s) {
    MaskGraph mg(g);
    return mg.irredundant(mg.to_mask(s));
}

DominationChain domination_chain(const Graph& g, std::size_t cap) {
    check_cap(g, cap);
    MaskGraph mg(g);
    const std::size_t n = g.order();
    DominationChain chain;
    int ir = -1, IR = -1, gmin = -1, gmax = -1, imin = -1, imax = -1;
    for (std::uint64_t s = 0; s < (1ull << n); ++s) {
        int size = std::popcount(s);
        if (mg.minimal_dominating(s)) {
            if (gmin < 0 || size < gmin) gmin = size;
            if (size > gmax) gmax = size;
        }
        if (mg.maximal_independent(s)) {
            if (imin < 0 || size < imin) imin = size;
            if (size > imax) imax = size;
        }
        if (mg.maximal_irredundant(s)) {
            if (ir < 0 || size < ir) ir = size;
            if (size > IR) IR = size;
        }
    }
    chain.ir = std::max(ir, 0);
    chain.gamma = std::max(gmin, 0);
    chain.i = std::max(imin, 0);
    chain.beta0 = std::max(imax, 0);
    chain.Gamma = std::max(gmax, 0);
    chain.IR = std::max(IR, 0);
    return chain;
}

std::vector<NodeSet> maximal_independent_sets(const Graph& g, std::size_t cap) {
    check_cap(g, cap);
    MaskGraph mg(g);
    std::vector<NodeSet> out;
    for (std::uint64_t s = 0; s < (1ull << g.order()); ++s)
        if (mg.maximal_independent(s))
            out.push_back(mg.to_set(s));
    return out;
}

std::vector<NodeSet> minimal_dominating_sets(const Graph& g, std::size_t cap) {
    check_cap(g, cap);
    MaskGraph mg(g);
    std::vector<NodeSet> out;
    for (std::uint64_t s = 0; s < (1ull << g.order()); ++s)
        if (mg.minimal_dominating(s))
            out.push_back(mg.to_set(s));
    return out;
}

std::vector<NodeId> GroupMapping::groups_of(NodeId column) const {
    std::vector<NodeId> out;
    for (const auto& [group, cols] : columns_of)
        if (cols.count(column))
            out.push_back(group);
    return out;
}

FeasibilityVerdict joint_feasibility(const Graph& mis_g, const Graph& mds_g,
                                     const std::optional<GroupMapping>& mapping,
                                     GroupSelection convention, std::size_t cap) {
    check_cap(mds_g, cap);
    MaskGraph shared(mds_g);
    MaskGraph mis_mask(mis_g);
    const std::size_t n = mds_g.order();

    if (!mapping) {
        if (mis_g.nodes() != mds_g.nodes())
            throw std::invalid_argument(
                "oracle: joint feasibility without a group mapping requires equal node sets");
    } else {
        for (const auto& [group, cols] : mapping->columns_of) {
            if (!mis_g.has_node(group))
                throw std::invalid_argument("oracle: mapping group " + std::to_string(group) +
                                            " is not a node of the group graph");
            for (NodeId c : cols)
                if (!mds_g.has_node(c))
                    throw std::invalid_argument("oracle: mapping column " + std::to_string(c) +
                                                " is not a shared node");
        }
        for (NodeId g : mis_g.nodes())
            if (!mapping->columns_of.count(g))
                throw std::invalid_argument("oracle: group node " + std::to_string(g) +
                                            " missing from the mapping");
    }

    // Precompute per-group column masks and the grouped-column mask.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> group_cols;  // (group bit, columns mask)
    std::uint64_t grouped = 0;
    if (mapping) {
        for (const auto& [group, cols] : mapping->columns_of) {
            std::uint64_t cm = shared.to_mask(cols);
            group_cols.emplace_back(1ull << mis_mask.index.at(group), cm);
            grouped |= cm;
        }
    }

    FeasibilityVerdict verdict;
    for (std::uint64_t s = 0; s < (1ull << n); ++s) {
        ++verdict.sets_examined;
        bool mis_ok;
        if (!mapping) {
            mis_ok = mis_mask.maximal_independent(s);
        } else {
            std::uint64_t selected = 0;
            std::uint64_t image = 0;
            for (const auto& [gbit, cm] : group_cols) {
                bool sel = convention == GroupSelection::AnyColumn ? (s & cm) != 0
                                                                   : (s & cm) == cm;
                if (sel) {
                    selected |= gbit;
                    if (convention == GroupSelection::AllColumns)
                        image |= cm;
                }
            }
            if (convention == GroupSelection::AnyColumn) {
                // image = columns all of whose groups are selected
                for (std::size_t c = 0; c < n; ++c) {
                    if (!(grouped >> c & 1)) continue;
                    bool all_sel = true;
                    for (const auto& [gbit, cm] : group_cols)
                        if ((cm >> c & 1) && !(selected & gbit)) {
                            all_sel = false;
                            break;
                        }
                    if (all_sel) image |= 1ull << c;
                }
            }
            mis_ok = mis_mask.maximal_independent(selected) && (s & grouped) == image;
        }
        if (mis_ok && shared.dominating(s)) {
            verdict.feasible = true;
            verdict.witness = shared.to_set(s);
            return verdict;
        }
    }
    return verdict;
}

} // namespace stabset::oracles
