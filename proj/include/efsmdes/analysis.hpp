// ============================================================================
// efsmdes/analysis.hpp — machine/control-model agreement and cycle analysis
// ============================================================================
//
// Bounded equivalence drives the machine and the derived supervised system
// in lockstep over input sequences: at every position both must either step
// with the same output or be undefined together. Cycle analysis factors the
// unique run of a single-input machine into a finite prefix and a repeated
// period and renders the u(v)* expressions for inputs, outputs, and the
// combined trace.
// ============================================================================

#ifndef EFSMDES_ANALYSIS_HPP
#define EFSMDES_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "efsmdes/transform.hpp"

namespace efsmdes {

// ── Bounded equivalence ─────────────────────────────────────────────────────

struct Counterexample {
    std::vector<EventId> inputs;  // base input sequence that exposes the split
    std::size_t position = 0;     // first index where the two models disagree
    std::string efsm_outcome;
    std::string des_outcome;
};

struct EquivalenceReport {
    std::size_t horizon = 0;
    std::size_t checked = 0;  // number of input sequences compared
    std::optional<Counterexample> counterexample;

    bool equivalent() const { return !counterexample.has_value(); }
};

/// Derives the control model (supervisor coupled to plant) from m and
/// compares it to m itself: exhaustively over all sequences of length up to
/// min(horizon, the largest length with at most 4096 sequences), then on
/// `budget` random longer sequences.
EquivalenceReport check_equivalence(const EfsmSdl& m, std::size_t horizon, std::size_t budget,
                                    std::uint64_t seed = 0x5eed);

/// Same comparison against a caller-supplied system over I x {true,false}
/// (a coupled product, a synchronized product, or a mutated variant).
EquivalenceReport check_equivalence_vs(const EfsmSdl& m, const SupervisedSystem& system,
                                       std::size_t horizon, std::size_t budget,
                                       std::uint64_t seed = 0x5eed);

/// True iff re-running the counterexample reproduces the recorded
/// disagreement at the recorded position.
bool replay_counterexample(const EfsmSdl& m, const SupervisedSystem& system,
                           const Counterexample& cex);

std::string report_to_text(const EquivalenceReport& report);
std::string report_to_json(const EquivalenceReport& report);

// ── Ultimately periodic runs ────────────────────────────────────────────────

/// A run factored as prefix followed by an infinitely repeated period.
/// Inputs are base events (paired events are projected).
struct UltimatelyPeriodic {
    std::vector<EventId> prefix_inputs;
    std::vector<EventId> prefix_outputs;
    std::vector<EventId> period_inputs;
    std::vector<EventId> period_outputs;
    std::string anchor;  // label of the configuration where the cycle closes
};

enum class PeriodicStatus {
    Ok,
    NotAutonomous,  // some reachable configuration admits zero or >= 2 base inputs
    Halts,          // the unique run stops before any configuration repeats
    BadAnchor,      // requested anchor is unreachable or not on the cycle
};

struct PeriodicResult {
    PeriodicStatus status = PeriodicStatus::Ok;
    std::optional<UltimatelyPeriodic> cycle;
    std::string detail;

    bool ok() const { return status == PeriodicStatus::Ok; }
};

/// Walks the unique run from the initial configuration until a configuration
/// repeats. The cycle closes at the first revisited configuration, or at
/// `anchor` when given (which must lie on the cycle).
PeriodicResult derive_periodic(const EfsmSdl& m,
                               const std::optional<Config>& anchor = std::nullopt);

/// Same factorization for an autonomous Mealy system (exactly one defined
/// event per reachable state); inputs are projected to their base events.
PeriodicResult derive_periodic(const MealyAutomaton& system,
                               const std::optional<StateId>& anchor = std::nullopt);

// ── Expression rendering ────────────────────────────────────────────────────

std::string render_input_expr(const UltimatelyPeriodic& u);    // "a^2 (a^14)*"
std::string render_output_expr(const UltimatelyPeriodic& u);   // "m^2 (m^6 n^7 m)*"
std::string render_combined(const UltimatelyPeriodic& u);      // "(a/m)^2 (...)*"

}  // namespace efsmdes

#endif  // EFSMDES_ANALYSIS_HPP
