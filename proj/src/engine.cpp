#include "stabset/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace stabset {

bool ProtocolInstance::is_active(NodeId node) const {
    return std::binary_search(active.begin(), active.end(), node);
}

AlgorithmStack::AlgorithmStack(std::vector<ProtocolInstance> tiers, bool shared)
    : tiers_(std::move(tiers)), shared_(shared) {
    if (tiers_.empty())
        throw std::invalid_argument("stack: at least one protocol instance required");
    for (std::size_t i = 1; i < tiers_.size(); ++i) {
        int prev = tiers_[i - 1].id.priority;
        int cur = tiers_[i].id.priority;
        if (shared_ ? cur != prev : cur <= prev)
            throw std::invalid_argument(shared_
                ? "stack: shared-variable mode requires equal priorities"
                : "stack: priorities must be strictly increasing");
    }
    if (shared_) {
        for (const auto& t : tiers_) {
            if (t.active != tiers_.front().active)
                throw std::invalid_argument(
                    "stack: shared-variable tiers must run on the same node set");
            if (!t.gates.empty())
                throw std::invalid_argument("stack: shared-variable tiers cannot be gated");
        }
    }
}

AlgorithmStack AlgorithmStack::hierarchical(std::vector<ProtocolInstance> tiers) {
    return AlgorithmStack(std::move(tiers), false);
}

AlgorithmStack AlgorithmStack::shared_variable(std::vector<ProtocolInstance> tiers) {
    return AlgorithmStack(std::move(tiers), true);
}

std::size_t AlgorithmStack::tier_by_priority(int priority) const {
    for (std::size_t i = 0; i < tiers_.size(); ++i)
        if (tiers_[i].id.priority == priority)
            return i;
    throw std::invalid_argument("stack: no tier with priority " + std::to_string(priority));
}

ProtocolInstance StackBuilder::make(Kind k, const std::string& label) const {
    ProtocolInstance inst;
    inst.id.kind = k;
    inst.id.label = label;
    inst.id.priority = static_cast<int>(tiers_.size()) + 1;
    inst.active = graph_->nodes();
    for (NodeId v : inst.active) {
        inst.adjacency[v] = graph_->neighbors(v);
        std::vector<GateLink> links;
        for (std::size_t lower = 0; lower < tiers_.size(); ++lower)
            links.push_back({lower, {v}, false});
        if (!links.empty())
            inst.gates[v] = std::move(links);
    }
    return inst;
}

StackBuilder& StackBuilder::add_bw(const std::string& label, BwDesignation designation) {
    ProtocolInstance inst = make(Kind::BW, label);
    inst.designation = std::move(designation);
    tiers_.push_back(std::move(inst));
    return *this;
}

StackBuilder& StackBuilder::add_mis(const std::string& label) {
    tiers_.push_back(make(Kind::MIS, label));
    return *this;
}

StackBuilder& StackBuilder::add_mds(const std::string& label) {
    tiers_.push_back(make(Kind::MDS, label));
    return *this;
}

AlgorithmStack StackBuilder::build() const {
    return AlgorithmStack::hierarchical(tiers_);
}

AlgorithmStack StackBuilder::build_shared() const {
    auto tiers = tiers_;
    for (auto& t : tiers) {
        t.id.priority = 1;
        t.gates.clear();
    }
    return AlgorithmStack::shared_variable(std::move(tiers));
}

State Configuration::get(std::size_t group, NodeId node) const {
    const auto& m = groups_.at(group);
    auto it = m.find(node);
    if (it == m.end())
        throw std::invalid_argument("configuration: no value for node " + std::to_string(node));
    return it->second;
}

void Configuration::set(std::size_t group, NodeId node, State s) {
    groups_.at(group).at(node) = s;
}

std::string Configuration::packed() const {
    std::string out;
    for (const auto& g : groups_)
        for (const auto& [node, s] : g)
            out.push_back(static_cast<char>(s));
    return out;
}

namespace {

State default_out(Kind k, bool shared) {
    return (shared || k == Kind::MDS) ? State::Out1 : State::Out;
}

std::vector<std::map<NodeId, State>> empty_groups(const AlgorithmStack& stack) {
    std::vector<std::map<NodeId, State>> groups(stack.variable_group_count());
    for (std::size_t t = 0; t < stack.tiers().size(); ++t) {
        auto& g = groups[stack.variable_group(t)];
        for (NodeId v : stack.tier(t).active)
            g.emplace(v, default_out(stack.tier(t).id.kind, stack.shares_variable()));
    }
    return groups;
}

} // namespace

Configuration all_out_configuration(const AlgorithmStack& stack) {
    return Configuration(empty_groups(stack));
}

Configuration random_configuration(const AlgorithmStack& stack, std::uint64_t seed) {
    Rng rng(seed);
    auto groups = empty_groups(stack);
    for (std::size_t t = 0; t < stack.tiers().size(); ++t) {
        std::size_t g = stack.variable_group(t);
        if (stack.shares_variable() && t > 0)
            break;  // one draw per shared variable
        auto domain = state_domain(stack.tier(t).id.kind, stack.shares_variable());
        for (auto& [node, s] : groups[g])
            s = domain[rng.below(domain.size())];
    }
    return Configuration(std::move(groups));
}

SchedulerPolicy::Kind parse_scheduler_kind(const std::string& name) {
    for (auto k : all_scheduler_kinds())
        if (name == to_string(k))
            return k;
    throw std::invalid_argument("unknown scheduler '" + name + "'");
}

const char* to_string(SchedulerPolicy::Kind k) {
    using K = SchedulerPolicy::Kind;
    switch (k) {
        case K::CentralRandom: return "central-random";
        case K::CentralAdversarialMinId: return "central-adversarial-min-id";
        case K::CentralAdversarialMaxId: return "central-adversarial-max-id";
        case K::DistributedRandomSubset: return "distributed-random-subset";
        case K::DistributedAdversarial: return "distributed-adversarial";
        case K::Synchronous: return "synchronous";
    }
    return "?";
}

bool is_deterministic(SchedulerPolicy::Kind k) {
    using K = SchedulerPolicy::Kind;
    return k == K::CentralAdversarialMinId || k == K::CentralAdversarialMaxId ||
           k == K::DistributedAdversarial || k == K::Synchronous;
}

const std::vector<SchedulerPolicy::Kind>& all_scheduler_kinds() {
    using K = SchedulerPolicy::Kind;
    static const std::vector<K> kinds{
        K::CentralRandom,        K::CentralAdversarialMinId, K::CentralAdversarialMaxId,
        K::DistributedRandomSubset, K::DistributedAdversarial, K::Synchronous};
    return kinds;
}

bool gate_active(const AlgorithmStack& stack, const Configuration& c,
                 std::size_t tier, NodeId node) {
    const auto& inst = stack.tier(tier);
    auto it = inst.gates.find(node);
    if (it == inst.gates.end()) return false;
    for (const GateLink& link : it->second) {
        if (link.nodes.empty()) continue;
        if (stack.tier(link.lower_tier).id.priority >= inst.id.priority) continue;
        std::size_t g = stack.variable_group(link.lower_tier);
        bool out;
        if (link.require_all) {
            out = std::all_of(link.nodes.begin(), link.nodes.end(),
                              [&](NodeId v) { return is_out_state(c.get(g, v)); });
        } else {
            out = std::any_of(link.nodes.begin(), link.nodes.end(),
                              [&](NodeId v) { return is_out_state(c.get(g, v)); });
        }
        if (out) return true;
    }
    return false;
}

namespace {

GuardInput guard_input(const AlgorithmStack& stack, const Configuration& c,
                       std::size_t tier, NodeId node) {
    const auto& inst = stack.tier(tier);
    GuardInput in;
    in.designated_in = inst.designation.designated_in(node);
    in.gated = gate_active(stack, c, tier, node);
    std::size_t g = stack.variable_group(tier);
    auto adj = inst.adjacency.find(node);
    if (adj != inst.adjacency.end()) {
        for (NodeId j : adj->second) {
            State sj = c.get(g, j);
            if (sj == State::In) ++in.in_neighbors;
            if (sj == State::Wait && j < node) in.smaller_waiting_neighbor = true;
            if (sj == State::Out1) in.out1_neighbor = true;
        }
    }
    return in;
}

std::vector<RuleFire> enabled_fires_at(const AlgorithmStack& stack, const Configuration& c,
                                       std::size_t tier, NodeId node) {
    const auto& inst = stack.tier(tier);
    State self = c.get(stack.variable_group(tier), node);
    return enabled_fires(inst.id.kind, self, guard_input(stack, c, tier, node),
                         stack.shares_variable());
}

} // namespace

std::vector<Rule> enabled_rules(const AlgorithmStack& stack, const Configuration& c,
                                std::size_t tier, NodeId node) {
    if (!stack.tier(tier).is_active(node))
        throw std::invalid_argument("engine: node " + std::to_string(node) +
                                    " is not part of tier " + stack.tier(tier).id.label);
    std::vector<Rule> rules;
    for (const auto& f : enabled_fires_at(stack, c, tier, node))
        rules.push_back(f.rule);
    return rules;
}

std::vector<EnabledProcess> enabled_processes(const AlgorithmStack& stack,
                                              const Configuration& c) {
    // (node, priority) order; selection and firing order derive from it.
    std::vector<EnabledProcess> out;
    struct Key {
        NodeId node;
        std::size_t tier;
    };
    std::vector<Key> keys;
    for (std::size_t t = 0; t < stack.tiers().size(); ++t)
        for (NodeId v : stack.tier(t).active)
            keys.push_back({v, t});
    std::sort(keys.begin(), keys.end(), [&](const Key& a, const Key& b) {
        if (a.node != b.node) return a.node < b.node;
        int pa = stack.tier(a.tier).id.priority;
        int pb = stack.tier(b.tier).id.priority;
        if (pa != pb) return pa < pb;
        return a.tier < b.tier;  // equal priorities exist only in shared mode
    });
    for (const Key& k : keys) {
        auto fires = enabled_fires_at(stack, c, k.tier, k.node);
        if (!fires.empty())
            out.push_back({k.node, k.tier, fires.front()});
    }
    return out;
}

namespace {

std::vector<std::size_t> select_processes(const std::vector<EnabledProcess>& enabled,
                                          SchedulerPolicy::Kind kind, Rng& rng) {
    using K = SchedulerPolicy::Kind;
    std::vector<std::size_t> picks;
    switch (kind) {
        case K::CentralRandom:
            picks.push_back(rng.below(enabled.size()));
            break;
        case K::CentralAdversarialMinId:
            picks.push_back(0);  // enabled is (node, priority)-sorted
            break;
        case K::CentralAdversarialMaxId:
            picks.push_back(enabled.size() - 1);
            break;
        case K::DistributedRandomSubset: {
            for (std::size_t i = 0; i < enabled.size(); ++i)
                if (rng.coin())
                    picks.push_back(i);
            if (picks.empty())
                picks.push_back(rng.below(enabled.size()));
            break;
        }
        case K::DistributedAdversarial:
            // Every enabled process except the (node, priority)-minimum:
            // stalls the canonical tie-winner while firing everything else.
            if (enabled.size() == 1) {
                picks.push_back(0);
            } else {
                for (std::size_t i = 1; i < enabled.size(); ++i)
                    picks.push_back(i);
            }
            break;
        case K::Synchronous:
            for (std::size_t i = 0; i < enabled.size(); ++i)
                picks.push_back(i);
            break;
    }
    return picks;
}

} // namespace

Trace step(const AlgorithmStack& stack, Configuration& c,
           SchedulerPolicy::Kind kind, Rng& rng, std::uint64_t round) {
    auto enabled = enabled_processes(stack, c);
    if (enabled.empty())
        throw std::logic_error("already stable");
    auto picks = select_processes(enabled, kind, rng);

    Trace moves;
    // Guards were evaluated against the pre-step configuration. In shared-
    // variable mode two tiers may target the same variable in one step; the
    // selection order is (node, priority, tier) ascending, so the earlier
    // tier writes and later selections of the same variable are dropped: a
    // variable changes at most once per step.
    std::unordered_set<std::uint64_t> written;
    for (std::size_t idx : picks) {
        const EnabledProcess& p = enabled[idx];
        std::size_t g = stack.variable_group(p.tier);
        std::uint64_t key = (static_cast<std::uint64_t>(g) << 32) | p.node;
        if (!written.insert(key).second) continue;
        MoveRecord m;
        m.round = round;
        m.node = p.node;
        m.priority = stack.tier(p.tier).id.priority;
        m.kind = stack.tier(p.tier).id.kind;
        m.alg_label = stack.tier(p.tier).id.label;
        m.rule = p.fire.rule;
        m.before = c.get(g, p.node);
        m.after = p.fire.next;
        c.set(g, p.node, p.fire.next);
        moves.push_back(std::move(m));
    }
    return moves;
}

std::uint64_t default_max_moves(const AlgorithmStack& stack) {
    std::size_t n = 0;
    for (const auto& t : stack.tiers())
        n = std::max(n, t.active.size());
    std::int64_t bound = stack.shares_variable()
                             ? 8 * static_cast<std::int64_t>(n) * static_cast<std::int64_t>(stack.tiers().size())
                             : combined_bound(stack, static_cast<std::int64_t>(n));
    return static_cast<std::uint64_t>(std::max<std::int64_t>(10 * bound, 100));
}

RunResult run_to_stabilization(const AlgorithmStack& stack, Configuration initial,
                               const SchedulerPolicy& policy, std::uint64_t max_moves,
                               std::size_t revisit_node_limit) {
    Rng rng(derive_seed(policy.seed, 2));
    RunResult res;
    res.final_config = std::move(initial);

    std::size_t max_nodes = 0;
    for (const auto& t : stack.tiers())
        max_nodes = std::max(max_nodes, t.active.size());
    bool track_revisit = is_deterministic(policy.kind) && max_nodes <= revisit_node_limit;
    std::unordered_set<std::string> seen;
    if (track_revisit)
        seen.insert(res.final_config.packed());

    std::uint64_t moves = 0;
    std::uint64_t round = 0;
    while (true) {
        if (enabled_processes(stack, res.final_config).empty()) {
            res.stabilized = true;
            break;
        }
        if (moves >= max_moves)
            break;
        Trace made = step(stack, res.final_config, policy.kind, rng, round);
        ++round;
        for (auto& m : made) {
            m.index = res.trace.size();
            moves += 1;
            res.trace.push_back(std::move(m));
        }
        if (track_revisit && !seen.insert(res.final_config.packed()).second) {
            res.livelock_detected = true;
            break;
        }
    }
    res.rounds = round;
    return res;
}

bool verify_trace(const AlgorithmStack& stack, Configuration initial,
                  const RunResult& result) {
    Configuration c = std::move(initial);
    std::size_t i = 0;
    while (i < result.trace.size()) {
        // Collect this round, check each guard against the round-start
        // configuration, then apply in recorded order.
        std::uint64_t round = result.trace[i].round;
        std::size_t j = i;
        while (j < result.trace.size() && result.trace[j].round == round)
            ++j;
        for (std::size_t k = i; k < j; ++k) {
            const MoveRecord& m = result.trace[k];
            std::size_t tier = stack.tier_by_priority(m.priority);
            auto fires = enabled_fires_at(stack, c, tier, m.node);
            if (fires.empty() || fires.front().rule != m.rule ||
                fires.front().next != m.after)
                return false;
        }
        for (std::size_t k = i; k < j; ++k) {
            const MoveRecord& m = result.trace[k];
            std::size_t g = stack.variable_group(stack.tier_by_priority(m.priority));
            if (c.get(g, m.node) != m.before) return false;
            c.set(g, m.node, m.after);
        }
        i = j;
    }
    return c == result.final_config;
}

std::uint64_t moves_after_lower_stable(const AlgorithmStack& stack, const Trace& trace,
                                       int priority) {
    stack.tier_by_priority(priority);  // validate
    std::int64_t last_lower = -1;
    for (const MoveRecord& m : trace)
        if (m.priority < priority)
            last_lower = static_cast<std::int64_t>(m.index);
    std::uint64_t count = 0;
    for (const MoveRecord& m : trace)
        if (m.priority == priority && static_cast<std::int64_t>(m.index) > last_lower)
            ++count;
    return count;
}

std::int64_t bound_for(Kind k, std::int64_t n) {
    switch (k) {
        case Kind::BW: return 2 * n;
        case Kind::MIS: return std::max(3 * n - 5, 2 * n);
        case Kind::MDS: return 4 * n;
    }
    return 0;
}

std::int64_t combined_bound(const AlgorithmStack& stack, std::int64_t n) {
    if (n < 1)
        throw std::invalid_argument("combined_bound requires n >= 1");
    std::int64_t sum = 0;
    std::int64_t product = 1;
    for (const auto& t : stack.tiers()) {
        product *= bound_for(t.id.kind, n);
        sum += product;
    }
    return sum;
}

BoundReport make_bound_report(const AlgorithmStack& stack, const RunResult& result) {
    BoundReport report;
    report.stabilized = result.stabilized;
    report.total_moves = result.trace.size();

    for (std::size_t t = 0; t < stack.tiers().size(); ++t) {
        const auto& inst = stack.tier(t);
        TierBoundCheck check;
        check.label = inst.id.label;
        check.kind = inst.id.kind;
        check.priority = inst.id.priority;

        NodeSet gated_now;
        for (NodeId v : inst.active)
            if (gate_active(stack, result.final_config, t, v))
                gated_now.insert(v);
        check.subgraph_n = static_cast<std::int64_t>(inst.active.size() - gated_now.size());
        check.bound = bound_for(inst.id.kind, check.subgraph_n);

        // Window start: the last round with a lower-tier move or a move of
        // this tier at a finally-gated node. Earlier churn is charged to the
        // lower tiers (their moves re-enable this tier arbitrarily often).
        std::int64_t window_round = -1;
        for (const MoveRecord& m : result.trace) {
            if (m.priority < inst.id.priority)
                window_round = std::max<std::int64_t>(window_round, static_cast<std::int64_t>(m.round));
            if (m.priority == inst.id.priority && gated_now.count(m.node))
                window_round = std::max<std::int64_t>(window_round, static_cast<std::int64_t>(m.round));
        }
        for (const MoveRecord& m : result.trace) {
            if (m.priority != inst.id.priority) continue;
            check.total_moves += 1;
            if (!gated_now.count(m.node) &&
                static_cast<std::int64_t>(m.round) > window_round)
                check.counted += 1;
        }
        check.after_lower = moves_after_lower_stable(stack, result.trace, inst.id.priority);
        check.pass = static_cast<std::int64_t>(check.counted) <= check.bound;
        report.tiers.push_back(std::move(check));
    }

    std::size_t n = 0;
    for (const auto& t : stack.tiers())
        n = std::max(n, t.active.size());
    report.combined = stack.shares_variable()
                          ? -1
                          : combined_bound(stack, static_cast<std::int64_t>(std::max<std::size_t>(n, 1)));
    report.combined_pass = stack.shares_variable()
                               ? false
                               : static_cast<std::int64_t>(report.total_moves) <= report.combined;
    return report;
}

NodeSet in_set(const AlgorithmStack& stack, const Configuration& c, std::size_t tier) {
    NodeSet s;
    std::size_t g = stack.variable_group(tier);
    for (NodeId v : stack.tier(tier).active)
        if (c.get(g, v) == State::In)
            s.insert(v);
    return s;
}

std::string trace_to_jsonl(const AlgorithmStack& stack, const Graph& g, const Trace& trace) {
    (void)stack;
    std::string out;
    for (const MoveRecord& m : trace) {
        nlohmann::ordered_json j;
        j["step"] = m.index;
        j["round"] = m.round;
        j["node"] = g.has_node(m.node) ? g.display(m.node) : std::to_string(m.node);
        j["alg"] = m.alg_label;
        j["rule"] = to_string(m.rule);
        j["from"] = to_string(m.before);
        j["to"] = to_string(m.after);
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string bound_report_to_json(const BoundReport& report) {
    nlohmann::ordered_json j;
    j["stabilized"] = report.stabilized;
    j["total_moves"] = report.total_moves;
    j["combined_bound"] = report.combined;
    j["combined_pass"] = report.combined_pass;
    j["tiers"] = nlohmann::ordered_json::array();
    for (const auto& t : report.tiers) {
        nlohmann::ordered_json tj;
        tj["label"] = t.label;
        tj["kind"] = to_string(t.kind);
        tj["priority"] = t.priority;
        tj["total_moves"] = t.total_moves;
        tj["after_lower_stable"] = t.after_lower;
        tj["counted_moves"] = t.counted;
        tj["subgraph_n"] = t.subgraph_n;
        tj["bound"] = t.bound;
        tj["pass"] = t.pass;
        j["tiers"].push_back(std::move(tj));
    }
    return j.dump(2) + "\n";
}

} // namespace stabset
