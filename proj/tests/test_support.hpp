// Shared fixtures and independent oracles for the test suites. The oracles
// walk machines with nothing but expression evaluation, so they stay
// independent of the extraction, composition, and reduction code they check.

#ifndef EFSMDES_TEST_SUPPORT_HPP
#define EFSMDES_TEST_SUPPORT_HPP

#include <random>
#include <set>
#include <string>
#include <vector>

#include "efsmdes/efsm.hpp"
#include "efsmdes/mealy.hpp"

namespace efsmdes::test {

// ── The bundled two-state up/down counter ───────────────────────────────────
//
// State I counts v up and emits m until v > 7 flips it into state II with n;
// state II counts down and emits n until v <= 3 returns it to I with m.

inline EfsmSdl updown_counter() {
    EfsmSdl m;
    m.states = {"I", "II"};
    m.inputs = {"a"};
    m.outputs = {"m", "n"};
    m.vars = {{"v", 0, 9}};
    m.init_state = "I";
    m.init_vals.set("v", 0);

    const auto v = IntExpr::variable("v");
    const auto inc = parse_update("v := v + 1");
    const auto dec = parse_update("v := v - 1");

    m.pairs.push_back({"I", "a", BoolExpr::compare(CmpOp::Gt, v, IntExpr::literal(7)),
                       Branch{"II", "n", inc}, Branch{"I", "m", inc}});
    m.pairs.push_back({"II", "a", BoolExpr::compare(CmpOp::Le, v, IntExpr::literal(3)),
                       Branch{"I", "m", dec}, Branch{"II", "n", dec}});
    return m;
}

inline std::vector<EventId> repeat_event(const EventId& e, std::size_t count) {
    return std::vector<EventId>(count, e);
}

// ── Oracles ─────────────────────────────────────────────────────────────────

// One machine step by direct expression evaluation.
struct OracleStep {
    bool stepped = false;
    Config next;
    EventId output;
};

inline OracleStep oracle_step(const EfsmSdl& m, const Config& c, const EventId& i) {
    const TransitionPair* pair = find_pair(m, c.state, i);
    if (pair == nullptr) return {};
    const bool holds = eval_pred(*pair->pred, c.vals);
    const Branch& branch = holds ? pair->then_branch : pair->else_branch;
    auto vals = eval_update(branch.update, c.vals, m.vars);
    if (!vals) return {};
    return {true, Config{branch.dest, std::move(*vals)}, branch.output};
}

// Brute-force reachability over configurations: breadth-first from the
// initial configuration, following every input whose step succeeds.
inline std::set<Config> reachable_configs_oracle(const EfsmSdl& m) {
    std::set<Config> seen{m.initial()};
    std::vector<Config> frontier{m.initial()};
    while (!frontier.empty()) {
        std::vector<Config> next;
        for (const auto& c : frontier) {
            for (const auto& i : m.inputs) {
                OracleStep s = oracle_step(m, c, i);
                if (s.stepped && seen.insert(s.next).second) next.push_back(s.next);
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

// Structural machine equality, expression trees included.
inline bool equal_updates(const UpdateExpr& a, const UpdateExpr& b) {
    if (a.assignments.size() != b.assignments.size()) return false;
    for (std::size_t i = 0; i < a.assignments.size(); ++i) {
        if (a.assignments[i].target != b.assignments[i].target) return false;
        if (!equal(*a.assignments[i].value, *b.assignments[i].value)) return false;
    }
    return true;
}

inline bool equal_branches(const Branch& a, const Branch& b) {
    return a.dest == b.dest && a.output == b.output && equal_updates(a.update, b.update);
}

inline bool equal_sdl(const EfsmSdl& a, const EfsmSdl& b) {
    if (a.states != b.states || a.inputs != b.inputs || a.outputs != b.outputs) return false;
    if (a.vars != b.vars) return false;
    if (a.init_state != b.init_state || !(a.init_vals == b.init_vals)) return false;
    if (a.pairs.size() != b.pairs.size()) return false;
    for (const auto& pair : a.pairs) {
        const TransitionPair* other = find_pair(b, pair.src, pair.input);
        if (other == nullptr) return false;
        if (!equal(*pair.pred, *other->pred)) return false;
        if (!equal_branches(pair.then_branch, other->then_branch)) return false;
        if (!equal_branches(pair.else_branch, other->else_branch)) return false;
    }
    return true;
}

// ── Random instances ────────────────────────────────────────────────────────

// Random SDL-form machines: small state/input/variable counts, arbitrary
// comparisons as predicates, and updates that may leave the domain (those
// exercise the halting paths on purpose). Deterministic by construction.
class MachineGen {
public:
    explicit MachineGen(std::uint64_t seed) : rng_(seed) {}

    EfsmSdl next() {
        EfsmSdl m;
        const int n_states = pick(1, 4);
        const int n_inputs = pick(1, 2);
        const int n_outputs = pick(1, 2);
        const int n_vars = pick(0, 10) == 0 ? 0 : pick(1, 2);  // occasionally variable-free

        for (int s = 0; s < n_states; ++s) m.states.insert("q" + std::to_string(s));
        for (int i = 0; i < n_inputs; ++i) m.inputs.insert(std::string(1, char('a' + i)));
        for (int o = 0; o < n_outputs; ++o) m.outputs.insert("z" + std::to_string(o));
        for (int v = 0; v < n_vars; ++v) {
            const std::int64_t lo = pick(-2, 1);
            m.vars.push_back({"v" + std::to_string(v), lo, lo + pick(1, 6)});
        }

        m.init_state = pick_from(m.states);
        for (const auto& decl : m.vars)
            m.init_vals.set(decl.name, pick64(decl.lo, decl.hi));

        for (const auto& state : m.states) {
            for (const auto& input : m.inputs) {
                if (pick(0, 9) == 0) continue;  // leave some (state, input) undefined
                m.pairs.push_back({state, input, random_pred(m.vars),
                                   random_branch(m), random_branch(m)});
            }
        }
        return m;
    }

    MealyAutomaton next_mealy() {
        MealyAutomaton g;
        const int n_states = pick(1, 5);
        std::vector<StateId> states;
        for (int s = 0; s < n_states; ++s) states.push_back("p" + std::to_string(s));
        g.initial = states[0];
        g.states.insert(states.begin(), states.end());
        const int n_inputs = pick(1, 2);
        std::vector<PairedEvent> alphabet;
        for (int i = 0; i < n_inputs; ++i) {
            alphabet.push_back({std::string(1, char('a' + i)), false});
            alphabet.push_back({std::string(1, char('a' + i)), true});
        }
        g.alphabet.insert(alphabet.begin(), alphabet.end());
        for (const auto& state : states) {
            for (const auto& sigma : alphabet) {
                if (pick(0, 2) == 0) continue;
                g.add_transition(state, sigma, states[static_cast<std::size_t>(pick(0, n_states - 1))],
                                 "z" + std::to_string(pick(0, 1)));
            }
        }
        return g;
    }

    std::uint64_t raw() { return rng_(); }

private:
    int pick(int lo, int hi) {
        return static_cast<int>(pick64(lo, hi));
    }

    std::int64_t pick64(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }

    template <typename Set>
    typename Set::value_type pick_from(const Set& set) {
        auto it = set.begin();
        std::advance(it, pick(0, static_cast<int>(set.size()) - 1));
        return *it;
    }

    IntExprPtr random_term(const VariableSet& vars) {
        if (vars.empty() || pick(0, 3) == 0)
            return IntExpr::literal(pick64(-2, 8));
        const auto& decl = vars[static_cast<std::size_t>(pick(0, static_cast<int>(vars.size()) - 1))];
        auto var = IntExpr::variable(decl.name);
        switch (pick(0, 4)) {
            case 0: return var;
            case 1: return IntExpr::binary(ArithOp::Add, var, IntExpr::literal(pick64(0, 2)));
            case 2: return IntExpr::binary(ArithOp::Sub, var, IntExpr::literal(pick64(0, 2)));
            case 3: return IntExpr::binary(ArithOp::Mul, IntExpr::literal(pick64(0, 2)), var);
            default:
                return IntExpr::binary(ArithOp::Add, var, random_term(vars));
        }
    }

    BoolExprPtr random_pred(const VariableSet& vars, int depth = 0) {
        if (vars.empty()) return BoolExpr::constant(pick(0, 1) == 1);
        if (depth < 1 && pick(0, 3) == 0) {
            auto lhs = random_pred(vars, depth + 1);
            auto rhs = random_pred(vars, depth + 1);
            return pick(0, 1) == 0 ? BoolExpr::logical_and(lhs, rhs)
                                   : BoolExpr::logical_or(lhs, rhs);
        }
        if (depth < 1 && pick(0, 5) == 0) return BoolExpr::negation(random_pred(vars, depth + 1));
        const CmpOp ops[] = {CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge, CmpOp::Eq, CmpOp::Ne};
        return BoolExpr::compare(ops[pick(0, 5)], random_term(vars), random_term(vars));
    }

    Branch random_branch(const EfsmSdl& m) {
        Branch b;
        b.dest = pick_from(m.states);
        b.output = pick_from(m.outputs);
        for (const auto& decl : m.vars) {
            if (pick(0, 1) == 0) continue;
            b.update.assignments.push_back({decl.name, random_term(m.vars)});
        }
        return b;
    }

    std::mt19937_64 rng_;
};

}  // namespace efsmdes::test

#endif  // EFSMDES_TEST_SUPPORT_HPP
