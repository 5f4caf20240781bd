// ============================================================================
// efsmdes/efsm.hpp — extended finite state machines and their SDL form
// ============================================================================
//
// The general machine carries one transition per edge, each with a guard
// predicate and a simultaneous update. The SDL form groups transitions into
// pairs: one pair per (state, input), whose two branches fire under a
// predicate and its complement, so exactly one branch is enabled in every
// configuration.
// ============================================================================

#ifndef EFSMDES_EFSM_HPP
#define EFSMDES_EFSM_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "efsmdes/expr.hpp"

namespace efsmdes {

using StateId = std::string;
using EventId = std::string;

struct Transition {
    StateId src;
    StateId dest;
    EventId input;
    EventId output;
    BoolExprPtr pred;
    UpdateExpr update;
};

struct Efsm {
    std::set<StateId> states;
    std::set<EventId> inputs;
    std::set<EventId> outputs;
    VariableSet vars;
    std::vector<Transition> transitions;
    StateId init_state;
    Valuation init_vals;
};

/// A machine configuration: control state plus variable valuation.
struct Config {
    StateId state;
    Valuation vals;

    std::string to_string() const;  // "(I, v=3)"
    bool operator==(const Config&) const = default;
    bool operator<(const Config& other) const {
        return state != other.state ? state < other.state : vals < other.vals;
    }
};

// ── SDL form ────────────────────────────────────────────────────────────────

struct Branch {
    StateId dest;
    EventId output;
    UpdateExpr update;
};

/// Two conflicting transitions sharing (src, input): then_branch fires when
/// pred holds, else_branch when it does not.
struct TransitionPair {
    StateId src;
    EventId input;
    BoolExprPtr pred;
    Branch then_branch;
    Branch else_branch;
};

struct EfsmSdl {
    std::set<StateId> states;
    std::set<EventId> inputs;
    std::set<EventId> outputs;
    VariableSet vars;
    std::vector<TransitionPair> pairs;
    StateId init_state;
    Valuation init_vals;

    Config initial() const { return {init_state, init_vals}; }
};

/// The pair at (src, input), if any; at most one exists in a valid machine.
const TransitionPair* find_pair(const EfsmSdl& m, const StateId& src, const EventId& input);

/// The branch of the pair at (y, i) selected by bin; nullopt when no pair
/// is defined there.
std::optional<Branch> sdl_transition(const EfsmSdl& m, const StateId& y, const EventId& i,
                                     bool bin);

/// Flattens each pair into its two guarded transitions (pred / !pred).
Efsm to_efsm(const EfsmSdl& m);

// ── Well-formedness ─────────────────────────────────────────────────────────

std::vector<std::string> validate(const Efsm& m);
std::vector<std::string> validate(const EfsmSdl& m);

// ── Dynamics ────────────────────────────────────────────────────────────────

enum class StepStatus {
    Ok,
    Disabled,          // no transition enabled; state and valuation unchanged
    DomainError,       // the chosen update left the variable domain
    Nondeterministic,  // more than one transition enabled
};

struct StepResult {
    StepStatus status = StepStatus::Disabled;
    Config config;    // successor when Ok, otherwise the unchanged input
    EventId output;   // emitted event when Ok

    bool ok() const { return status == StepStatus::Ok; }
};

StepResult step(const Efsm& m, const Config& c, const EventId& input);

struct RunResult {
    StepStatus status = StepStatus::Ok;  // Ok means all inputs were consumed
    std::size_t failed_at = 0;           // index of the failing input otherwise
    std::vector<EventId> outputs;        // one output per consumed input
    Config final_config;

    bool ok() const { return status == StepStatus::Ok; }
};

/// Folds step over `inputs` from the initial configuration.
RunResult run(const Efsm& m, const std::vector<EventId>& inputs);
RunResult run_from(const Efsm& m, const Config& start, const std::vector<EventId>& inputs);

// ── Determinism ─────────────────────────────────────────────────────────────

struct DeterminismViolation {
    StateId state;
    EventId input;
    Valuation vals;  // witness where more than one transition is enabled
};

struct DeterminismReport {
    std::vector<DeterminismViolation> violations;
    bool deterministic() const { return violations.empty(); }
};

/// Exhaustive over dom(V): every (state, input, valuation) with two or more
/// enabled transitions is reported.
DeterminismReport check_deterministic(const Efsm& m);

// ── SDL-form recognition ────────────────────────────────────────────────────

struct SdlFormResult {
    std::optional<EfsmSdl> machine;
    std::vector<std::string> problems;

    bool ok() const { return machine.has_value(); }
};

/// Groups transitions by (src, input) and pairs each group of two whose
/// predicates are complementary — syntactic negation, or failing that,
/// complementary on every valuation of dom(V).
SdlFormResult to_sdl_form(const Efsm& m);

}  // namespace efsmdes

#endif  // EFSMDES_EFSM_HPP
