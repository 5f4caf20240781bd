// ============================================================================
// efsmdes/emit.hpp — switch-style code generation and DOT rendering
// ============================================================================

#ifndef EFSMDES_EMIT_HPP
#define EFSMDES_EMIT_HPP

#include <string>
#include <vector>

#include "efsmdes/supervisor.hpp"

namespace efsmdes {

struct CodegenOptions {
    std::string dialect = "c-switch";
    int indent = 2;
};

// The emitted program as a structure: enumerations, initialization, and one
// guarded branch per (state, input). Assignments apply top to bottom; when a
// simultaneous update cannot run sequentially as written, values are staged
// through scratch variables first, so sequential execution of the emitted
// assignments always matches the machine's simultaneous semantics.
struct CodeAssign {
    std::string target;  // machine variable or scratch name
    IntExprPtr value;
};

struct CodeBranch {
    StateId next_state;
    EventId output;
    std::vector<CodeAssign> assigns;
};

struct SwitchCase {
    EventId input;
    BoolExprPtr pred;
    CodeBranch then_branch;
    CodeBranch else_branch;
};

struct StateBlock {
    StateId state;
    std::vector<SwitchCase> cases;
};

struct SwitchModel {
    std::vector<StateId> states;
    std::vector<EventId> inputs;
    std::vector<EventId> outputs;
    VariableSet vars;
    std::vector<std::string> scratch;  // staging variables used by assigns
    StateId init_state;
    Valuation init_vals;
    std::vector<StateBlock> blocks;  // one per state, in `states` order
};

SwitchModel build_switch_model(const EfsmSdl& m);

/// Renders the model as C-like source: enums, globals, Initialization(),
/// and Transition() with nested switch(state)/switch(input)/if-else.
/// Byte-identical output for identical inputs.
std::string emit_code(const EfsmSdl& m, const CodegenOptions& opts = {});

// ── DOT rendering ──────────────────────────────────────────────────────────

std::string emit_dot(const Efsm& m);              // edges "i [pred] / o ; update"
std::string emit_dot(const MealyAutomaton& g);    // edges "⟨i,bin⟩/z"
std::string emit_dot(const PlainAutomaton& s);    // edges "⟨i,bin⟩"
std::string emit_dot(const Supervisor& phi);      // states annotated with psi

}  // namespace efsmdes

#endif  // EFSMDES_EMIT_HPP
