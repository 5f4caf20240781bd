#include "efsmdes/efsm.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace efsmdes {

std::string Config::to_string() const {
    if (vals.empty()) return "(" + state + ")";
    return "(" + state + ", " + vals.to_string() + ")";
}

const TransitionPair* find_pair(const EfsmSdl& m, const StateId& src, const EventId& input) {
    for (const auto& pair : m.pairs) {
        if (pair.src == src && pair.input == input) return &pair;
    }
    return nullptr;
}

std::optional<Branch> sdl_transition(const EfsmSdl& m, const StateId& y, const EventId& i,
                                     bool bin) {
    const TransitionPair* pair = find_pair(m, y, i);
    if (pair == nullptr) return std::nullopt;
    return bin ? pair->then_branch : pair->else_branch;
}

Efsm to_efsm(const EfsmSdl& m) {
    Efsm out;
    out.states = m.states;
    out.inputs = m.inputs;
    out.outputs = m.outputs;
    out.vars = m.vars;
    out.init_state = m.init_state;
    out.init_vals = m.init_vals;
    for (const auto& pair : m.pairs) {
        out.transitions.push_back({pair.src, pair.then_branch.dest, pair.input,
                                   pair.then_branch.output, pair.pred, pair.then_branch.update});
        // The literal Not keeps pairing exactly invertible: to_sdl_form
        // restores the original orientation from it.
        out.transitions.push_back({pair.src, pair.else_branch.dest, pair.input,
                                   pair.else_branch.output, BoolExpr::negation(pair.pred),
                                   pair.else_branch.update});
    }
    return out;
}

// ── Well-formedness ─────────────────────────────────────────────────────────

namespace {

void check_vars_declared(const VariableSet& vars, const std::vector<std::string>& used,
                         const std::string& where, std::vector<std::string>& out) {
    for (const auto& name : used) {
        if (find_var(vars, name) == nullptr)
            out.push_back(where + " references undeclared variable " + name);
    }
}

void check_common(const std::set<StateId>& states, const VariableSet& vars,
                  const StateId& init_state, const Valuation& init_vals,
                  std::vector<std::string>& out) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].lo > vars[i].hi)
            out.push_back("variable " + vars[i].name + " has empty domain [" +
                          std::to_string(vars[i].lo) + "," + std::to_string(vars[i].hi) + "]");
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i].name == vars[j].name)
                out.push_back("variable " + vars[i].name + " declared twice");
    }
    if (states.count(init_state) == 0)
        out.push_back("initial state " + init_state + " is not a declared state");
    if (auto err = check_valuation(vars, init_vals))
        out.push_back("initial valuation: " + *err);
}

}  // namespace

std::vector<std::string> validate(const Efsm& m) {
    std::vector<std::string> out;
    check_common(m.states, m.vars, m.init_state, m.init_vals, out);
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        const auto& t = m.transitions[i];
        const std::string where = "transition " + std::to_string(i);
        if (m.states.count(t.src) == 0) out.push_back(where + ": unknown source " + t.src);
        if (m.states.count(t.dest) == 0) out.push_back(where + ": unknown destination " + t.dest);
        if (m.inputs.count(t.input) == 0) out.push_back(where + ": unknown input " + t.input);
        if (m.outputs.count(t.output) == 0) out.push_back(where + ": unknown output " + t.output);
        std::vector<std::string> used;
        collect_vars(*t.pred, used);
        check_vars_declared(m.vars, used, where + " predicate", out);
        check_vars_declared(m.vars, collect_vars(t.update), where + " update", out);
    }
    return out;
}

std::vector<std::string> validate(const EfsmSdl& m) {
    std::vector<std::string> out;
    check_common(m.states, m.vars, m.init_state, m.init_vals, out);
    std::set<std::pair<StateId, EventId>> seen;
    for (std::size_t i = 0; i < m.pairs.size(); ++i) {
        const auto& pair = m.pairs[i];
        const std::string where = "pair " + std::to_string(i);
        if (m.states.count(pair.src) == 0) out.push_back(where + ": unknown source " + pair.src);
        if (m.inputs.count(pair.input) == 0)
            out.push_back(where + ": unknown input " + pair.input);
        if (!seen.insert({pair.src, pair.input}).second)
            out.push_back(where + ": duplicate pair at (" + pair.src + ", " + pair.input + ")");
        std::vector<std::string> used;
        collect_vars(*pair.pred, used);
        check_vars_declared(m.vars, used, where + " predicate", out);
        for (const Branch* b : {&pair.then_branch, &pair.else_branch}) {
            if (m.states.count(b->dest) == 0)
                out.push_back(where + ": unknown destination " + b->dest);
            if (m.outputs.count(b->output) == 0)
                out.push_back(where + ": unknown output " + b->output);
            check_vars_declared(m.vars, collect_vars(b->update), where + " update", out);
        }
    }
    return out;
}

// ── Dynamics ────────────────────────────────────────────────────────────────

StepResult step(const Efsm& m, const Config& c, const EventId& input) {
    const Transition* enabled = nullptr;
    for (const auto& t : m.transitions) {
        if (t.src != c.state || t.input != input) continue;
        if (!eval_pred(*t.pred, c.vals)) continue;
        if (enabled != nullptr) return {StepStatus::Nondeterministic, c, {}};
        enabled = &t;
    }
    if (enabled == nullptr) return {StepStatus::Disabled, c, {}};
    auto next = eval_update(enabled->update, c.vals, m.vars);
    if (!next) return {StepStatus::DomainError, c, {}};
    return {StepStatus::Ok, Config{enabled->dest, std::move(*next)}, enabled->output};
}

RunResult run_from(const Efsm& m, const Config& start, const std::vector<EventId>& inputs) {
    RunResult result;
    result.final_config = start;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        StepResult s = step(m, result.final_config, inputs[i]);
        if (!s.ok()) {
            result.status = s.status;
            result.failed_at = i;
            return result;
        }
        result.outputs.push_back(s.output);
        result.final_config = std::move(s.config);
    }
    return result;
}

RunResult run(const Efsm& m, const std::vector<EventId>& inputs) {
    return run_from(m, Config{m.init_state, m.init_vals}, inputs);
}

// ── Determinism ─────────────────────────────────────────────────────────────

DeterminismReport check_deterministic(const Efsm& m) {
    DeterminismReport report;

    std::map<std::pair<StateId, EventId>, std::vector<const Transition*>> groups;
    for (const auto& t : m.transitions) groups[{t.src, t.input}].push_back(&t);

    const auto valuations = enumerate_valuations(m.vars);
    for (const auto& [key, group] : groups) {
        if (group.size() < 2) continue;
        for (const auto& val : valuations) {
            std::size_t enabled = 0;
            for (const Transition* t : group)
                if (eval_pred(*t->pred, val)) ++enabled;
            if (enabled > 1) report.violations.push_back({key.first, key.second, val});
        }
    }
    return report;
}

// ── SDL-form recognition ────────────────────────────────────────────────────

SdlFormResult to_sdl_form(const Efsm& m) {
    SdlFormResult result;
    EfsmSdl sdl;
    sdl.states = m.states;
    sdl.inputs = m.inputs;
    sdl.outputs = m.outputs;
    sdl.vars = m.vars;
    sdl.init_state = m.init_state;
    sdl.init_vals = m.init_vals;

    std::map<std::pair<StateId, EventId>, std::vector<const Transition*>> groups;
    for (const auto& t : m.transitions) groups[{t.src, t.input}].push_back(&t);

    for (const auto& [key, group] : groups) {
        const std::string where = "(" + key.first + ", " + key.second + ")";
        if (group.size() != 2) {
            result.problems.push_back(where + ": " + std::to_string(group.size()) +
                                      " transitions cannot form one conflicting pair");
            continue;
        }
        const Transition* a = group[0];
        const Transition* b = group[1];

        const Transition* then_t = nullptr;
        const Transition* else_t = nullptr;
        if (b->pred->kind() == BoolExpr::Kind::Not && equal(*b->pred->arg(), *a->pred)) {
            then_t = a;
            else_t = b;
        } else if (a->pred->kind() == BoolExpr::Kind::Not && equal(*a->pred->arg(), *b->pred)) {
            then_t = b;
            else_t = a;
        } else if (auto witness = complement_witness(*a->pred, *b->pred, m.vars); !witness) {
            then_t = a;  // semantically complementary, e.g. v>7 and v<=7
            else_t = b;
        } else {
            result.problems.push_back(
                where + ": predicates '" + to_string(*a->pred) + "' and '" + to_string(*b->pred) +
                "' are not complementary (both " +
                (eval_pred(*a->pred, *witness) ? "true" : "false") + " at " +
                (witness->empty() ? std::string("the empty valuation") : witness->to_string()) +
                ")");
            continue;
        }

        sdl.pairs.push_back({key.first, key.second, then_t->pred,
                             Branch{then_t->dest, then_t->output, then_t->update},
                             Branch{else_t->dest, else_t->output, else_t->update}});
    }

    if (result.problems.empty()) result.machine = std::move(sdl);
    return result;
}

}  // namespace efsmdes
