#include "efsmdes/emit.hpp"

#include <algorithm>
#include <sstream>

namespace efsmdes {

// ── Switch model ────────────────────────────────────────────────────────────

namespace {

bool references(const IntExpr& e, const std::string& name) {
    std::vector<std::string> used;
    collect_vars(e, used);
    return std::find(used.begin(), used.end(), name) != used.end();
}

// Sequential execution of an update block is only equal to the simultaneous
// semantics when no assigned variable is read after it has been written.
bool needs_staging(const UpdateExpr& u) {
    for (std::size_t j = 0; j < u.assignments.size(); ++j)
        for (std::size_t k = j + 1; k < u.assignments.size(); ++k)
            if (references(*u.assignments[k].value, u.assignments[j].target)) return true;
    return false;
}

std::vector<CodeAssign> lower_update(const UpdateExpr& u, std::vector<std::string>& scratch) {
    std::vector<CodeAssign> out;
    if (!needs_staging(u)) {
        for (const auto& a : u.assignments) out.push_back({a.target, a.value});
        return out;
    }
    for (const auto& a : u.assignments) {
        const std::string tmp = "__" + a.target;
        if (std::find(scratch.begin(), scratch.end(), tmp) == scratch.end())
            scratch.push_back(tmp);
        out.push_back({tmp, a.value});
    }
    for (const auto& a : u.assignments) out.push_back({a.target, IntExpr::variable("__" + a.target)});
    return out;
}

CodeBranch lower_branch(const Branch& b, std::vector<std::string>& scratch) {
    return {b.dest, b.output, lower_update(b.update, scratch)};
}

template <typename T>
std::string join(const std::vector<T>& items, const std::string& sep) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += sep;
        out += item;
    }
    return out;
}

}  // namespace

SwitchModel build_switch_model(const EfsmSdl& m) {
    SwitchModel model;
    model.states.assign(m.states.begin(), m.states.end());
    model.inputs.assign(m.inputs.begin(), m.inputs.end());
    model.outputs.assign(m.outputs.begin(), m.outputs.end());
    model.vars = m.vars;
    model.init_state = m.init_state;
    model.init_vals = m.init_vals;

    for (const auto& state : model.states) {
        StateBlock block{state, {}};
        for (const auto& input : model.inputs) {
            const TransitionPair* pair = find_pair(m, state, input);
            if (pair == nullptr) continue;
            block.cases.push_back({input, pair->pred,
                                   lower_branch(pair->then_branch, model.scratch),
                                   lower_branch(pair->else_branch, model.scratch)});
        }
        model.blocks.push_back(std::move(block));
    }
    return model;
}

// ── Code rendering ──────────────────────────────────────────────────────────

namespace {

std::string branch_stmts(const StateId& next_state, const EventId& output,
                         const std::vector<CodeAssign>& assigns) {
    std::string out = "{s=" + next_state + "; o=" + output + ";";
    for (const auto& a : assigns) out += " " + a.target + "=" + to_string(*a.value) + ";";
    return out + "}";
}

}  // namespace

std::string emit_code(const EfsmSdl& m, const CodegenOptions& opts) {
    const SwitchModel model = build_switch_model(m);
    const std::string ind(static_cast<std::size_t>(std::max(opts.indent, 0)), ' ');

    std::ostringstream out;
    out << "enum State {" << join(model.states, ", ") << "}; static State s;\n";
    out << "enum Input {" << join(model.inputs, ", ") << "}; enum Output {"
        << join(model.outputs, ", ") << "};\n";
    out << "static Input i; static Output o;";
    for (const auto& var : model.vars) out << " static int " << var.name << ";";
    out << "\n";
    if (!model.scratch.empty()) {
        out << "static int " << join(model.scratch, ", ") << ";\n";
    }

    out << "void Initialization()\n";
    out << "{ s=" << model.init_state << ";";
    for (const auto& var : model.vars)
        out << " " << var.name << "=" << model.init_vals.get(var.name) << ";";
    out << " }\n";

    out << "void Transition(Input i)\n";
    out << "{\n";
    out << ind << "switch(s) {\n";
    for (const auto& block : model.blocks) {
        out << ind << ind << "case " << block.state << ":\n";
        out << ind << ind << ind << "switch(i) {\n";
        for (const auto& c : block.cases) {
            out << ind << ind << ind << ind << "case " << c.input << ":\n";
            out << ind << ind << ind << ind << ind << "if(" << to_string(*c.pred) << ")\n";
            out << ind << ind << ind << ind << ind
                << branch_stmts(c.then_branch.next_state, c.then_branch.output,
                                c.then_branch.assigns)
                << "\n";
            out << ind << ind << ind << ind << ind << "else\n";
            out << ind << ind << ind << ind << ind
                << branch_stmts(c.else_branch.next_state, c.else_branch.output,
                                c.else_branch.assigns)
                << "\n";
            out << ind << ind << ind << ind << ind << "break;\n";
        }
        out << ind << ind << ind << "}\n";
        out << ind << ind << ind << "break;\n";
    }
    out << ind << "}\n";
    out << "}\n";
    return out.str();
}

// ── DOT rendering ───────────────────────────────────────────────────────────

namespace {

// Backslashes are not escaped: labels never contain them except as
// deliberate DOT escapes like \n.
std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '\\';
        out += c;
    }
    return out + "\"";
}

void dot_open(std::ostringstream& out, const std::string& name) {
    out << "digraph " << name << " {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
}

void dot_initial(std::ostringstream& out, const std::string& initial) {
    out << "  __init [shape=point, label=\"\"];\n";
    out << "  __init -> " << quoted(initial) << ";\n";
}

}  // namespace

std::string emit_dot(const Efsm& m) {
    std::ostringstream out;
    dot_open(out, "efsm");
    dot_initial(out, m.init_state);
    for (const auto& state : m.states) out << "  " << quoted(state) << ";\n";
    for (const auto& t : m.transitions) {
        std::string label = t.input + " [" + to_string(*t.pred) + "] / " + t.output;
        if (!t.update.assignments.empty()) label += " ; " + to_string(t.update);
        out << "  " << quoted(t.src) << " -> " << quoted(t.dest) << " [label=" << quoted(label)
            << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string emit_dot(const MealyAutomaton& g) {
    std::ostringstream out;
    dot_open(out, "mealy");
    dot_initial(out, g.initial);
    for (const auto& state : g.states) out << "  " << quoted(state) << ";\n";
    for (const auto& [key, value] : g.transitions()) {
        out << "  " << quoted(key.first) << " -> " << quoted(value.first)
            << " [label=" << quoted(key.second.to_string() + "/" + value.second) << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string emit_dot(const PlainAutomaton& s) {
    std::ostringstream out;
    dot_open(out, "automaton");
    dot_initial(out, s.initial);
    for (const auto& state : s.states) out << "  " << quoted(state) << ";\n";
    for (const auto& [key, dest] : s.xi) {
        out << "  " << quoted(key.first) << " -> " << quoted(dest)
            << " [label=" << quoted(key.second.to_string()) << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string emit_dot(const Supervisor& phi) {
    std::ostringstream out;
    dot_open(out, "supervisor");
    dot_initial(out, phi.s.initial);
    for (const auto& state : phi.s.states) {
        out << "  " << quoted(state)
            << " [label=" << quoted(state + "\\nψ: " + phi.pattern(state).to_string()) << "];\n";
    }
    for (const auto& [key, dest] : phi.s.xi) {
        out << "  " << quoted(key.first) << " -> " << quoted(dest)
            << " [label=" << quoted(key.second.to_string()) << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace efsmdes
