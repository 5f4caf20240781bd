#include "efsmdes/mealy.hpp"

#include <stdexcept>

namespace efsmdes {

std::string PairedEvent::to_string() const {
    return "⟨" + base + "," + (bin ? "true" : "false") + "⟩";
}

void MealyAutomaton::add_transition(const StateId& src, const PairedEvent& on,
                                    const StateId& dest, const EventId& output) {
    auto [it, inserted] = table_.insert({{src, on}, {dest, output}});
    if (!inserted && it->second != std::make_pair(dest, output))
        throw std::invalid_argument("conflicting transition at (" + src + ", " +
                                    on.to_string() + ")");
    states.insert(src);
    states.insert(dest);
    alphabet.insert(on);
    outputs.insert(output);
}

std::optional<StateId> MealyAutomaton::delta(const StateId& q, const PairedEvent& on) const {
    auto it = table_.find({q, on});
    if (it == table_.end()) return std::nullopt;
    return it->second.first;
}

std::optional<EventId> MealyAutomaton::lambda(const StateId& q, const PairedEvent& on) const {
    auto it = table_.find({q, on});
    if (it == table_.end()) return std::nullopt;
    return it->second.second;
}

bool MealyAutomaton::defined(const StateId& q, const PairedEvent& on) const {
    return table_.count({q, on}) != 0;
}

bool TracePair::operator<(const TracePair& other) const {
    if (inputs.size() != other.inputs.size()) return inputs.size() < other.inputs.size();
    if (inputs != other.inputs) return inputs < other.inputs;
    return outputs < other.outputs;
}

std::optional<StateId> delta_star(const MealyAutomaton& g, const StateId& q,
                                  const std::vector<PairedEvent>& s) {
    StateId current = q;
    for (const auto& sigma : s) {
        auto next = g.delta(current, sigma);
        if (!next) return std::nullopt;
        current = std::move(*next);
    }
    return current;
}

std::optional<std::vector<EventId>> lambda_star(const MealyAutomaton& g, const StateId& q,
                                                const std::vector<PairedEvent>& s) {
    std::vector<EventId> outputs;
    outputs.reserve(s.size());
    StateId current = q;
    for (const auto& sigma : s) {
        auto out = g.lambda(current, sigma);
        if (!out) return std::nullopt;
        outputs.push_back(std::move(*out));
        current = *g.delta(current, sigma);
    }
    return outputs;
}

std::vector<TracePair> enumerate_language(const MealyAutomaton& g, std::size_t max_len) {
    std::vector<TracePair> result;
    // Frontier entries carry the state reached so each extension is O(1).
    struct Entry {
        TracePair trace;
        StateId state;
    };
    std::vector<Entry> frontier{{TracePair{}, g.initial}};
    result.push_back(TracePair{});

    for (std::size_t len = 0; len < max_len && !frontier.empty(); ++len) {
        std::vector<Entry> next;
        for (const auto& entry : frontier) {
            for (const auto& sigma : g.alphabet) {
                auto dest = g.delta(entry.state, sigma);
                if (!dest) continue;
                Entry extended = entry;
                extended.trace.inputs.push_back(sigma);
                extended.trace.outputs.push_back(*g.lambda(entry.state, sigma));
                extended.state = std::move(*dest);
                result.push_back(extended.trace);
                next.push_back(std::move(extended));
            }
        }
        frontier = std::move(next);
    }
    return result;
}

std::set<std::vector<PairedEvent>> input_language(const std::vector<TracePair>& lang) {
    std::set<std::vector<PairedEvent>> out;
    for (const auto& trace : lang) out.insert(trace.inputs);
    return out;
}

std::set<std::vector<EventId>> output_language(const std::vector<TracePair>& lang) {
    std::set<std::vector<EventId>> out;
    for (const auto& trace : lang) out.insert(trace.outputs);
    return out;
}

}  // namespace efsmdes
