// ============================================================================
// efsmdes/mealy.hpp — Mealy automata over a paired input alphabet
// ============================================================================
//
// The input alphabet is built from conflicting pairs: each base event i
// appears as <i,true> and <i,false>, of which a control pattern may enable
// at most one. Transition and output functions are partial and defined on
// exactly the same (state, event) set, which the single transition table
// guarantees by construction.
// ============================================================================

#ifndef EFSMDES_MEALY_HPP
#define EFSMDES_MEALY_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "efsmdes/efsm.hpp"

namespace efsmdes {

/// One half of a conflicting event pair; the partner flips bin.
struct PairedEvent {
    EventId base;
    bool bin = false;

    PairedEvent partner() const { return {base, !bin}; }
    std::string to_string() const;  // "⟨a,true⟩"

    bool operator==(const PairedEvent&) const = default;
    bool operator<(const PairedEvent& other) const {
        return base != other.base ? base < other.base : bin < other.bin;
    }
};

struct MealyAutomaton {
    std::set<StateId> states;
    std::set<PairedEvent> alphabet;
    std::set<EventId> outputs;
    StateId initial;

    void add_transition(const StateId& src, const PairedEvent& on, const StateId& dest,
                        const EventId& output);

    std::optional<StateId> delta(const StateId& q, const PairedEvent& on) const;
    std::optional<EventId> lambda(const StateId& q, const PairedEvent& on) const;
    bool defined(const StateId& q, const PairedEvent& on) const;

    /// Transition table keyed by (state, event); value is (dest, output).
    /// One table keeps delta and lambda defined on exactly the same pairs.
    const std::map<std::pair<StateId, PairedEvent>, std::pair<StateId, EventId>>&
    transitions() const {
        return table_;
    }

    std::size_t transition_count() const { return table_.size(); }

private:
    std::map<std::pair<StateId, PairedEvent>, std::pair<StateId, EventId>> table_;
};

/// An input sequence with the output sequence it produces; always the same
/// length.
struct TracePair {
    std::vector<PairedEvent> inputs;
    std::vector<EventId> outputs;

    bool operator==(const TracePair&) const = default;
    bool operator<(const TracePair& other) const;
};

// ── Extended functions ──────────────────────────────────────────────────────

/// delta extended to sequences: delta*(q, empty) = q,
/// delta*(q, s.sigma) = delta(delta*(q, s), sigma); undefined as soon as any
/// prefix step is undefined.
std::optional<StateId> delta_star(const MealyAutomaton& g, const StateId& q,
                                  const std::vector<PairedEvent>& s);

/// lambda extended to sequences, accumulating one output per step.
std::optional<std::vector<EventId>> lambda_star(const MealyAutomaton& g, const StateId& q,
                                                const std::vector<PairedEvent>& s);

// ── Bounded languages ───────────────────────────────────────────────────────

/// All trace pairs of length at most max_len reachable from the initial
/// state, in breadth-first order. The result is prefix-closed.
std::vector<TracePair> enumerate_language(const MealyAutomaton& g, std::size_t max_len);

std::set<std::vector<PairedEvent>> input_language(const std::vector<TracePair>& lang);
std::set<std::vector<EventId>> output_language(const std::vector<TracePair>& lang);

}  // namespace efsmdes

#endif  // EFSMDES_MEALY_HPP
