// ============================================================================
// efsmdes/supervisor.hpp — control patterns, supervisors, and composition
// ============================================================================
//
// A supervisor is a deterministic automaton S plus a state feedback map psi
// assigning each supervisor state a control pattern: a set of paired events
// containing at most one member of each conflicting pair. Coupling the
// supervisor to a plant yields the supervised system, a Mealy automaton over
// product states; the same control is achieved by pruning S to its enabled,
// reachable part and taking the synchronized product.
// ============================================================================

#ifndef EFSMDES_SUPERVISOR_HPP
#define EFSMDES_SUPERVISOR_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "efsmdes/mealy.hpp"

namespace efsmdes {

struct ConflictingPatternError : std::invalid_argument {
    explicit ConflictingPatternError(const PairedEvent& e)
        : std::invalid_argument("control pattern contains both " + e.to_string() + " and " +
                                e.partner().to_string()) {}
};

struct AlphabetMismatchError : std::invalid_argument {
    AlphabetMismatchError() : std::invalid_argument("components disagree on the alphabet") {}
};

/// A set of enabled events with no conflicting pair inside; both members of
/// a pair may be absent.
class ControlPattern {
public:
    ControlPattern() = default;
    explicit ControlPattern(std::set<PairedEvent> enabled);

    bool enables(const PairedEvent& e) const { return enabled_.count(e) != 0; }
    const std::set<PairedEvent>& enabled() const { return enabled_; }
    bool empty() const { return enabled_.empty(); }

    void enable(const PairedEvent& e);

    std::string to_string() const;  // "{⟨a,false⟩}"
    bool operator==(const ControlPattern&) const = default;

private:
    std::set<PairedEvent> enabled_;
};

/// A deterministic automaton without outputs; transition map xi is partial.
struct PlainAutomaton {
    std::set<StateId> states;
    std::set<PairedEvent> alphabet;
    std::map<std::pair<StateId, PairedEvent>, StateId> xi;
    StateId initial;

    std::optional<StateId> next(const StateId& x, const PairedEvent& on) const;
};

struct Supervisor {
    PlainAutomaton s;
    std::map<StateId, ControlPattern> psi;  // total over s.states

    const ControlPattern& pattern(const StateId& x) const;
};

/// The supervised system is itself a Mealy automaton; its states are labels
/// of ⟨supervisor state, plant state⟩ pairs.
using SupervisedSystem = MealyAutomaton;

std::string product_state_label(const StateId& x, const StateId& q);

/// Couples supervisor and plant: a transition exists on sigma exactly when
/// psi enables it at the supervisor state and both components define it.
/// Only the part reachable from the initial pair is materialized.
SupervisedSystem couple(const Supervisor& phi, const MealyAutomaton& g);

/// Removes transitions on events disabled by psi, then unreachable states.
PlainAutomaton reduce(const Supervisor& phi);

/// Synchronized product: a transition exists iff both components define the
/// event; outputs come from the plant. Reachable part only.
SupervisedSystem sync_product(const PlainAutomaton& s, const MealyAutomaton& g);

/// True iff every defined xi(x, sigma) has sigma enabled by psi(x); when it
/// holds, coupling coincides with the synchronized product of S and G.
bool check_completeness_condition(const Supervisor& phi);

}  // namespace efsmdes

#endif  // EFSMDES_SUPERVISOR_HPP
