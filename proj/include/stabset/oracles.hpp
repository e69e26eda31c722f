#ifndef STABSET_ORACLES_HPP
#define STABSET_ORACLES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "stabset/graph.hpp"

// Exhaustive, independently coded ground truth for set properties on small
// graphs. Everything here enumerates; nothing here shares code with the
// protocol engine it is used to check.
namespace stabset::oracles {

bool is_independent(const Graph& g, const NodeSet& s);
bool is_maximal_independent(const Graph& g, const NodeSet& s);
bool is_dominating(const Graph& g, const NodeSet& s);
bool is_minimal_dominating(const Graph& g, const NodeSet& s);

// Private-neighbor form: every v in s covers some node no other member of s
// covers.
bool is_irredundant(const Graph& g, const NodeSet& s);

// ir <= gamma <= i <= beta0 <= Gamma <= IR
struct DominationChain {
    int ir = 0;       // min maximal irredundant
    int gamma = 0;    // min minimal dominating
    int i = 0;        // min maximal independent
    int beta0 = 0;    // max maximal independent
    int Gamma = 0;    // max minimal dominating
    int IR = 0;       // max maximal irredundant
    bool ordered() const { return ir <= gamma && gamma <= i && i <= beta0 && beta0 <= Gamma && Gamma <= IR; }
};

inline constexpr std::size_t kEnumerationCap = 16;

// Exact values over all 2^n subsets. Throws when g.order() exceeds the cap.
DominationChain domination_chain(const Graph& g, std::size_t cap = kEnumerationCap);

std::vector<NodeSet> maximal_independent_sets(const Graph& g, std::size_t cap = kEnumerationCap);
std::vector<NodeSet> minimal_dominating_sets(const Graph& g, std::size_t cap = kEnumerationCap);

// Column <-> supplier-group correspondence for feasibility checks on a
// compacted graph: group node -> the columns it stands for.
struct GroupMapping {
    std::map<NodeId, NodeSet> columns_of;
    std::vector<NodeId> groups_of(NodeId column) const;
};

// How a set of columns selects group nodes on the compacted graph.
enum class GroupSelection {
    AnyColumn,   // a group is selected when any of its columns is picked
    AllColumns,  // a group is selected only when every column is picked
};

struct FeasibilityVerdict {
    bool feasible = false;
    std::optional<NodeSet> witness;  // columns
    std::uint64_t sets_examined = 0;
};

// Searches all subsets of the mds graph's nodes for one that is
// simultaneously maximal independent on the mis graph and dominating on the
// mds graph. Without a mapping the two graphs must share node sets and the
// independence check runs directly on the subset. With a mapping the subset
// selects group nodes per the convention; the selected groups must be
// maximal independent and the subset must be exactly the selection's column
// image (grouped columns only; columns outside every group stay free).
FeasibilityVerdict joint_feasibility(const Graph& mis_g, const Graph& mds_g,
                                     const std::optional<GroupMapping>& mapping,
                                     GroupSelection convention = GroupSelection::AnyColumn,
                                     std::size_t cap = kEnumerationCap);

} // namespace stabset::oracles

#endif
