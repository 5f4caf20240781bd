// ============================================================================
// efsmdes/transform.hpp — extracting the control model from an SDL machine
// ============================================================================
//
// Two constructions connect the machine world to the control world:
//   * the controlled plant: a Mealy automaton over the machine's states,
//     with the paired alphabet I x {true,false} and predicates/updates
//     erased;
//   * the supervisor: an automaton over (valuation, state) pairs driven by
//     the update functions, with a feedback map driven by the predicates.
// Projection and lifting translate between base input sequences and paired
// event sequences.
// ============================================================================

#ifndef EFSMDES_TRANSFORM_HPP
#define EFSMDES_TRANSFORM_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "efsmdes/supervisor.hpp"

namespace efsmdes {

/// A supervisor state: a valuation of all machine variables plus a control
/// state. Labels are canonical, so equal states always share one label.
struct SupervisorState {
    Valuation vals;
    StateId y;

    std::string label() const;  // "(v=0,I)"
    bool operator==(const SupervisorState&) const = default;
};

struct DomainTooLargeError : std::runtime_error {
    explicit DomainTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

/// The plant: states and outputs are kept, each pair branch becomes one
/// transition on ⟨input, bin⟩, and predicates and updates are dropped.
/// The alphabet is the full I x {true,false}, defined branches or not.
MealyAutomaton extract_controlled_des(const EfsmSdl& m);

/// The supervisor over the full product dom(V) x Y (reachable or not):
/// xi follows the branch updates where the result stays in-domain, and
/// psi(x) enables ⟨i,bin⟩ exactly when the pair at (y, i) exists and the
/// predicate evaluates to bin at x's valuation.
///
/// Throws DomainTooLargeError when |dom(V)| * |Y| exceeds max_states.
Supervisor extract_supervisor(const EfsmSdl& m, std::uint64_t max_states = 1'000'000);

/// First-component projection: ⟨i,bin⟩... -> i...
std::vector<EventId> project_inputs(const std::vector<PairedEvent>& s);

struct LiftResult {
    StepStatus status = StepStatus::Ok;
    std::size_t failed_at = 0;          // position of the failing input
    std::vector<PairedEvent> events;    // lifted prefix (all of s when Ok)

    bool ok() const { return status == StepStatus::Ok; }
};

/// The unique paired sequence projecting to s whose bins match the predicate
/// evaluations along the machine's run from `start`. Stops where the run
/// does: a missing pair reports Disabled, an out-of-domain update reports
/// DomainError.
LiftResult lift_inputs(const EfsmSdl& m, const Config& start, const std::vector<EventId>& s);

}  // namespace efsmdes

#endif  // EFSMDES_TRANSFORM_HPP
