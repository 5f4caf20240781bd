#include "efsmdes/supervisor.hpp"

#include <deque>
#include <utility>

namespace efsmdes {

ControlPattern::ControlPattern(std::set<PairedEvent> enabled) {
    for (const auto& e : enabled) {
        if (enabled.count(e.partner()) != 0) throw ConflictingPatternError(e);
    }
    enabled_ = std::move(enabled);
}

void ControlPattern::enable(const PairedEvent& e) {
    if (enabled_.count(e.partner()) != 0) throw ConflictingPatternError(e);
    enabled_.insert(e);
}

std::string ControlPattern::to_string() const {
    std::string out = "{";
    for (const auto& e : enabled_) {
        if (out.size() > 1) out += ",";
        out += e.to_string();
    }
    return out + "}";
}

std::optional<StateId> PlainAutomaton::next(const StateId& x, const PairedEvent& on) const {
    auto it = xi.find({x, on});
    if (it == xi.end()) return std::nullopt;
    return it->second;
}

const ControlPattern& Supervisor::pattern(const StateId& x) const {
    auto it = psi.find(x);
    if (it == psi.end()) throw std::out_of_range("psi undefined at state " + x);
    return it->second;
}

std::string product_state_label(const StateId& x, const StateId& q) {
    return x + " | " + q;
}

SupervisedSystem couple(const Supervisor& phi, const MealyAutomaton& g) {
    if (phi.s.alphabet != g.alphabet) throw AlphabetMismatchError();

    SupervisedSystem system;
    const auto initial = std::make_pair(phi.s.initial, g.initial);
    system.initial = product_state_label(initial.first, initial.second);
    system.states.insert(system.initial);
    system.alphabet = g.alphabet;

    std::set<std::pair<StateId, StateId>> visited{initial};
    std::deque<std::pair<StateId, StateId>> frontier{initial};
    while (!frontier.empty()) {
        const auto [x, q] = frontier.front();
        frontier.pop_front();
        for (const auto& sigma : g.alphabet) {
            if (!phi.pattern(x).enables(sigma)) continue;
            const auto x_next = phi.s.next(x, sigma);
            const auto q_next = g.delta(q, sigma);
            if (!x_next || !q_next) continue;
            system.add_transition(product_state_label(x, q), sigma,
                                  product_state_label(*x_next, *q_next),
                                  *g.lambda(q, sigma));
            if (visited.insert({*x_next, *q_next}).second) frontier.push_back({*x_next, *q_next});
        }
    }
    return system;
}

PlainAutomaton reduce(const Supervisor& phi) {
    // Drop edges on events psi disables, then keep only what x0 still reaches.
    std::map<std::pair<StateId, PairedEvent>, StateId> kept;
    for (const auto& [key, dest] : phi.s.xi) {
        if (phi.pattern(key.first).enables(key.second)) kept.insert({key, dest});
    }

    PlainAutomaton out;
    out.alphabet = phi.s.alphabet;
    out.initial = phi.s.initial;
    out.states.insert(out.initial);
    std::deque<StateId> frontier{out.initial};
    while (!frontier.empty()) {
        const StateId x = frontier.front();
        frontier.pop_front();
        for (const auto& sigma : out.alphabet) {
            auto it = kept.find({x, sigma});
            if (it == kept.end()) continue;
            out.xi.insert({{x, sigma}, it->second});
            if (out.states.insert(it->second).second) frontier.push_back(it->second);
        }
    }
    return out;
}

SupervisedSystem sync_product(const PlainAutomaton& s, const MealyAutomaton& g) {
    if (s.alphabet != g.alphabet) throw AlphabetMismatchError();

    SupervisedSystem system;
    const auto initial = std::make_pair(s.initial, g.initial);
    system.initial = product_state_label(initial.first, initial.second);
    system.states.insert(system.initial);
    system.alphabet = g.alphabet;

    std::set<std::pair<StateId, StateId>> visited{initial};
    std::deque<std::pair<StateId, StateId>> frontier{initial};
    while (!frontier.empty()) {
        const auto [x, q] = frontier.front();
        frontier.pop_front();
        for (const auto& sigma : g.alphabet) {
            const auto x_next = s.next(x, sigma);
            const auto q_next = g.delta(q, sigma);
            if (!x_next || !q_next) continue;
            system.add_transition(product_state_label(x, q), sigma,
                                  product_state_label(*x_next, *q_next),
                                  *g.lambda(q, sigma));
            if (visited.insert({*x_next, *q_next}).second) frontier.push_back({*x_next, *q_next});
        }
    }
    return system;
}

bool check_completeness_condition(const Supervisor& phi) {
    for (const auto& [key, dest] : phi.s.xi) {
        (void)dest;
        if (!phi.pattern(key.first).enables(key.second)) return false;
    }
    return true;
}

}  // namespace efsmdes
