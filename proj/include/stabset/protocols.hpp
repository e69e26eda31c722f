#ifndef STABSET_PROTOCOLS_HPP
#define STABSET_PROTOCOLS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stabset/graph.hpp"

namespace stabset {

enum class Kind : std::uint8_t { BW, MIS, MDS };

// Per-node protocol variable. BW and MIS use {Out, Wait, In}; MDS splits the
// out state into two flavors and uses {Out1, Out2, Wait, In}. In shared-
// variable (equal-priority) mode every tier reads/writes one four-valued
// variable per node: Out never occurs, BW/MIS treat Out1/Out2 as out and
// write Out1.
enum class State : std::uint8_t { Out, Wait, In, Out1, Out2 };

enum class Rule : std::uint8_t { RWait, RBack, RIn, ROut, RBack1, RBack2, ROut1, ROut2 };

const char* to_string(Kind k);
const char* to_string(State s);
const char* to_string(Rule r);
State parse_state(const std::string& s);
Kind parse_kind(const std::string& s);

std::span<const State> state_domain(Kind k, bool shared_variable);

// The gating clause of every rule set treats a lower tier's value as "out"
// when it is any out-flavored state.
bool is_out_state(State s);
inline bool is_in(State s) { return s == State::In; }
inline bool is_wait(State s) { return s == State::Wait; }

// Everything a guard may read besides the node's own state. The engine
// evaluates neighborhoods against the tier's own edge relation.
struct GuardInput {
    bool designated_in = true;     // BW(i); unused by MIS/MDS
    bool gated = false;            // exists lower tier with x_a(i) out
    int in_neighbors = 0;          // |{j in N(i) : x(j) = in}|
    bool smaller_waiting_neighbor = false;  // exists j in N(i): x(j)=wait, id(j)<id(i)
    bool out1_neighbor = false;    // exists j in N(i): x(j)=out1
};

struct RuleFire {
    Rule rule;
    State next;
};

// Enabled rules of one algorithm at one node, in the listing order of the
// rule set (the order that breaks ties when several guards hold at once).
// `shared_variable` switches BW/MIS to the four-valued domain.
std::vector<RuleFire> bw_guards(State self, const GuardInput& in, bool shared_variable = false);
std::vector<RuleFire> mis_guards(State self, const GuardInput& in, bool shared_variable = false);
std::vector<RuleFire> mds_guards(State self, const GuardInput& in);
std::vector<RuleFire> enabled_fires(Kind k, State self, const GuardInput& in,
                                    bool shared_variable = false);

// Whitelist/blacklist designation: BW(i). Unlisted nodes default to in
// (whitelisting is the permissive default; blacklists are explicit).
class BwDesignation {
public:
    BwDesignation() = default;
    void set(NodeId node, bool in) { out_.erase(node); if (!in) out_.insert(node); }
    bool designated_in(NodeId node) const { return !out_.count(node); }
    const NodeSet& out_nodes() const { return out_; }

private:
    NodeSet out_;
};

} // namespace stabset

#endif
