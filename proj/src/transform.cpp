#include "efsmdes/transform.hpp"

#include <algorithm>

namespace efsmdes {

std::string SupervisorState::label() const {
    if (vals.empty()) return "(" + y + ")";
    return "(" + vals.to_string() + "," + y + ")";
}

MealyAutomaton extract_controlled_des(const EfsmSdl& m) {
    MealyAutomaton g;
    g.states = m.states;
    g.outputs = m.outputs;
    g.initial = m.init_state;
    for (const auto& i : m.inputs) {
        g.alphabet.insert({i, true});
        g.alphabet.insert({i, false});
    }
    for (const auto& pair : m.pairs) {
        g.add_transition(pair.src, {pair.input, true}, pair.then_branch.dest,
                         pair.then_branch.output);
        g.add_transition(pair.src, {pair.input, false}, pair.else_branch.dest,
                         pair.else_branch.output);
    }
    return g;
}

Supervisor extract_supervisor(const EfsmSdl& m, std::uint64_t max_states) {
    const auto count = domain_count(m.vars);
    if (!count || *count > max_states / std::max<std::uint64_t>(m.states.size(), 1))
        throw DomainTooLargeError("supervisor state set dom(V) x Y exceeds " +
                                  std::to_string(max_states) + " states");

    Supervisor phi;
    for (const auto& i : m.inputs) {
        phi.s.alphabet.insert({i, true});
        phi.s.alphabet.insert({i, false});
    }
    phi.s.initial = SupervisorState{m.init_vals, m.init_state}.label();

    // The full product state set, whether reachable or not.
    const auto valuations = enumerate_valuations(m.vars);
    for (const auto& vals : valuations) {
        for (const auto& y : m.states) {
            const SupervisorState x{vals, y};
            const std::string label = x.label();
            phi.s.states.insert(label);

            ControlPattern pattern;
            for (const auto& pair : m.pairs) {
                if (pair.src != y) continue;
                const bool holds = eval_pred(*pair.pred, vals);
                pattern.enable({pair.input, holds});

                // xi follows each branch whose update stays in-domain.
                for (const bool bin : {false, true}) {
                    const Branch& branch = bin ? pair.then_branch : pair.else_branch;
                    auto next = eval_update(branch.update, vals, m.vars);
                    if (!next) continue;
                    phi.s.xi.insert(
                        {{label, PairedEvent{pair.input, bin}},
                         SupervisorState{std::move(*next), branch.dest}.label()});
                }
            }
            phi.psi.emplace(label, std::move(pattern));
        }
    }
    return phi;
}

std::vector<EventId> project_inputs(const std::vector<PairedEvent>& s) {
    std::vector<EventId> out;
    out.reserve(s.size());
    for (const auto& e : s) out.push_back(e.base);
    return out;
}

LiftResult lift_inputs(const EfsmSdl& m, const Config& start, const std::vector<EventId>& s) {
    LiftResult result;
    Config current = start;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const TransitionPair* pair = find_pair(m, current.state, s[i]);
        if (pair == nullptr) {
            result.status = StepStatus::Disabled;
            result.failed_at = i;
            return result;
        }
        const bool bin = eval_pred(*pair->pred, current.vals);
        const Branch& branch = bin ? pair->then_branch : pair->else_branch;
        auto next = eval_update(branch.update, current.vals, m.vars);
        if (!next) {
            result.status = StepStatus::DomainError;
            result.failed_at = i;
            return result;
        }
        result.events.push_back({s[i], bin});
        current = Config{branch.dest, std::move(*next)};
    }
    return result;
}

}  // namespace efsmdes
