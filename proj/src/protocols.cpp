#include "stabset/protocols.hpp"

#include <array>
#include <stdexcept>

namespace stabset {

namespace {

constexpr std::array<State, 3> kThreeStates{State::Out, State::Wait, State::In};
constexpr std::array<State, 4> kFourStates{State::Out1, State::Out2, State::Wait, State::In};

} // namespace

const char* to_string(Kind k) {
    switch (k) {
        case Kind::BW: return "bw";
        case Kind::MIS: return "mis";
        case Kind::MDS: return "mds";
    }
    return "?";
}

const char* to_string(State s) {
    switch (s) {
        case State::Out: return "out";
        case State::Wait: return "wait";
        case State::In: return "in";
        case State::Out1: return "out1";
        case State::Out2: return "out2";
    }
    return "?";
}

const char* to_string(Rule r) {
    switch (r) {
        case Rule::RWait: return "RWait";
        case Rule::RBack: return "RBack";
        case Rule::RIn: return "RIn";
        case Rule::ROut: return "ROut";
        case Rule::RBack1: return "RBack1";
        case Rule::RBack2: return "RBack2";
        case Rule::ROut1: return "ROut1";
        case Rule::ROut2: return "ROut2";
    }
    return "?";
}

State parse_state(const std::string& s) {
    if (s == "out") return State::Out;
    if (s == "wait") return State::Wait;
    if (s == "in") return State::In;
    if (s == "out1") return State::Out1;
    if (s == "out2") return State::Out2;
    throw std::invalid_argument("unknown state '" + s + "'");
}

Kind parse_kind(const std::string& s) {
    if (s == "bw") return Kind::BW;
    if (s == "mis") return Kind::MIS;
    if (s == "mds") return Kind::MDS;
    throw std::invalid_argument("unknown algorithm kind '" + s + "'");
}

std::span<const State> state_domain(Kind k, bool shared_variable) {
    if (shared_variable || k == Kind::MDS)
        return kFourStates;
    return kThreeStates;
}

bool is_out_state(State s) {
    return s == State::Out || s == State::Out1 || s == State::Out2;
}

// BW rules. The guards of RBack and ROut overlap when x = wait and the node
// is gated or designated out; both land on out, and listing order fires
// RBack first, so the overlap is harmless.
std::vector<RuleFire> bw_guards(State self, const GuardInput& in, bool shared_variable) {
    const State out_write = shared_variable ? State::Out1 : State::Out;
    const bool self_out = shared_variable ? is_out_state(self) : self == State::Out;
    std::vector<RuleFire> fires;
    // RWait: out, designated in, not gated -> wait
    if (self_out && in.designated_in && !in.gated)
        fires.push_back({Rule::RWait, State::Wait});
    // RBack: wait, and (not designated in, or gated) -> out
    if (self == State::Wait && (!in.designated_in || in.gated))
        fires.push_back({Rule::RBack, out_write});
    // RIn: wait, designated in, not gated -> in
    if (self == State::Wait && in.designated_in && !in.gated)
        fires.push_back({Rule::RIn, State::In});
    // ROut: in or wait, and (designated out, or gated) -> out
    if ((self == State::In || self == State::Wait) && (!in.designated_in || in.gated))
        fires.push_back({Rule::ROut, out_write});
    return fires;
}

std::vector<RuleFire> mis_guards(State self, const GuardInput& in, bool shared_variable) {
    const State out_write = shared_variable ? State::Out1 : State::Out;
    const bool self_out = shared_variable ? is_out_state(self) : self == State::Out;
    const bool in_nbr = in.in_neighbors > 0;
    std::vector<RuleFire> fires;
    // RWait: out, no in-neighbor, not gated -> wait
    if (self_out && !in_nbr && !in.gated)
        fires.push_back({Rule::RWait, State::Wait});
    // RBack: wait, and (in-neighbor or gated) -> out
    if (self == State::Wait && (in_nbr || in.gated))
        fires.push_back({Rule::RBack, out_write});
    // RIn: wait, no in-neighbor, id-minimal among waiting neighbors, not gated -> in
    if (self == State::Wait && !in_nbr && !in.smaller_waiting_neighbor && !in.gated)
        fires.push_back({Rule::RIn, State::In});
    // ROut: in, and (in-neighbor or gated) -> out
    if (self == State::In && (in_nbr || in.gated))
        fires.push_back({Rule::ROut, out_write});
    return fires;
}

// MDS rules (four states). ROut1/ROut2 take the gate as a top-level
// disjunct, mirroring RBack1/RBack2.
std::vector<RuleFire> mds_guards(State self, const GuardInput& in) {
    const bool self_out = self == State::Out1 || self == State::Out2;
    const int cnt = in.in_neighbors;
    std::vector<RuleFire> fires;
    // RWait: out1 or out2, no in-neighbor, not gated -> wait
    if (self_out && cnt == 0 && !in.gated)
        fires.push_back({Rule::RWait, State::Wait});
    // RBack1: wait, and (exactly one in-neighbor, or gated) -> out1
    if (self == State::Wait && (cnt == 1 || in.gated))
        fires.push_back({Rule::RBack1, State::Out1});
    // RBack2: out1 or wait, and (more than one in-neighbor, or gated) -> out2
    if ((self == State::Out1 || self == State::Wait) && (cnt > 1 || in.gated))
        fires.push_back({Rule::RBack2, State::Out2});
    // RIn: wait, no in-neighbor, no smaller-id waiting neighbor, not gated -> in
    if (self == State::Wait && cnt == 0 && !in.smaller_waiting_neighbor && !in.gated)
        fires.push_back({Rule::RIn, State::In});
    // ROut1: in, and ((exactly one in-neighbor and no out1-neighbor) or gated) -> out1
    if (self == State::In && ((cnt == 1 && !in.out1_neighbor) || in.gated))
        fires.push_back({Rule::ROut1, State::Out1});
    // ROut2: in, and ((more than one in-neighbor and no out1-neighbor) or gated) -> out2
    if (self == State::In && ((cnt > 1 && !in.out1_neighbor) || in.gated))
        fires.push_back({Rule::ROut2, State::Out2});
    return fires;
}

std::vector<RuleFire> enabled_fires(Kind k, State self, const GuardInput& in,
                                    bool shared_variable) {
    switch (k) {
        case Kind::BW: return bw_guards(self, in, shared_variable);
        case Kind::MIS: return mis_guards(self, in, shared_variable);
        case Kind::MDS: return mds_guards(self, in);
    }
    return {};
}

} // namespace stabset
