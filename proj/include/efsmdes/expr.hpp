// ============================================================================
// efsmdes/expr.hpp — guard predicates and update functions over bounded
// integer variables
// ============================================================================
//
// A small total expression language used by machine transitions: arithmetic
// terms (+, -, *) over integer variables and literals, comparisons, and the
// boolean connectives &&, ||, !. Every variable ranges over a finite
// inclusive interval, so the set of valuations is finite and enumerable.
//
// All expression nodes are immutable and shared; evaluation is pure.
// ============================================================================

#ifndef EFSMDES_EXPR_HPP
#define EFSMDES_EXPR_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace efsmdes {

// ── Variables and valuations ────────────────────────────────────────────────

/// A variable together with its inclusive integer domain [lo, hi].
struct VarDecl {
    std::string name;
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
    bool operator==(const VarDecl&) const = default;
};

using VariableSet = std::vector<VarDecl>;

const VarDecl* find_var(const VariableSet& vars, const std::string& name);

struct UnknownVariableError : std::runtime_error {
    explicit UnknownVariableError(const std::string& name)
        : std::runtime_error("unknown variable: " + name) {}
};

/// An assignment of an integer value to every declared variable.
/// Ordered so valuations can key maps and label states deterministically.
class Valuation {
public:
    Valuation() = default;

    std::int64_t get(const std::string& name) const;
    void set(const std::string& name, std::int64_t value) { values_[name] = value; }
    bool contains(const std::string& name) const { return values_.count(name) != 0; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

    /// Renders "v=0,w=2" (declaration-independent, sorted by name).
    std::string to_string() const;

    bool operator==(const Valuation&) const = default;
    bool operator<(const Valuation& other) const { return values_ < other.values_; }

private:
    std::map<std::string, std::int64_t> values_;
};

/// Error string if `val` does not cover exactly `vars` with in-domain values.
std::optional<std::string> check_valuation(const VariableSet& vars, const Valuation& val);

/// All valuations of `vars`, lexicographic in declaration order.
/// With no variables this is the single empty valuation.
std::vector<Valuation> enumerate_valuations(const VariableSet& vars);

/// Product of domain sizes; nullopt on overflow past 2^63-1.
std::optional<std::uint64_t> domain_count(const VariableSet& vars);

// ── Arithmetic expressions ──────────────────────────────────────────────────

enum class ArithOp { Add, Sub, Mul };

class IntExpr;
using IntExprPtr = std::shared_ptr<const IntExpr>;

class IntExpr {
public:
    enum class Kind { Literal, Variable, Binary };

    static IntExprPtr literal(std::int64_t value);
    static IntExprPtr variable(std::string name);
    static IntExprPtr binary(ArithOp op, IntExprPtr lhs, IntExprPtr rhs);

    Kind kind() const { return kind_; }
    std::int64_t value() const { return value_; }
    const std::string& name() const { return name_; }
    ArithOp op() const { return op_; }
    const IntExprPtr& lhs() const { return lhs_; }
    const IntExprPtr& rhs() const { return rhs_; }

private:
    Kind kind_ = Kind::Literal;
    std::int64_t value_ = 0;
    std::string name_;
    ArithOp op_ = ArithOp::Add;
    IntExprPtr lhs_, rhs_;
};

// ── Boolean expressions ─────────────────────────────────────────────────────

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };

class BoolExpr;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;

class BoolExpr {
public:
    enum class Kind { Constant, Compare, And, Or, Not };

    static BoolExprPtr constant(bool value);
    static BoolExprPtr compare(CmpOp op, IntExprPtr lhs, IntExprPtr rhs);
    static BoolExprPtr logical_and(BoolExprPtr lhs, BoolExprPtr rhs);
    static BoolExprPtr logical_or(BoolExprPtr lhs, BoolExprPtr rhs);
    static BoolExprPtr negation(BoolExprPtr arg);

    Kind kind() const { return kind_; }
    bool value() const { return value_; }
    CmpOp cmp() const { return cmp_; }
    const IntExprPtr& cmp_lhs() const { return int_lhs_; }
    const IntExprPtr& cmp_rhs() const { return int_rhs_; }
    const BoolExprPtr& lhs() const { return bool_lhs_; }
    const BoolExprPtr& rhs() const { return bool_rhs_; }
    const BoolExprPtr& arg() const { return bool_lhs_; }

private:
    Kind kind_ = Kind::Constant;
    bool value_ = false;
    CmpOp cmp_ = CmpOp::Eq;
    IntExprPtr int_lhs_, int_rhs_;
    BoolExprPtr bool_lhs_, bool_rhs_;
};

// ── Updates ─────────────────────────────────────────────────────────────────

/// One simultaneous assignment block: variables not mentioned are unchanged,
/// right-hand sides are evaluated against the pre-state valuation.
struct UpdateExpr {
    struct Assignment {
        std::string target;
        IntExprPtr value;
    };
    std::vector<Assignment> assignments;

    bool assigns(const std::string& name) const;
    const IntExprPtr* value_for(const std::string& name) const;
};

// ── Evaluation ──────────────────────────────────────────────────────────────

std::int64_t eval_int(const IntExpr& e, const Valuation& val);
bool eval_pred(const BoolExpr& p, const Valuation& val);

/// Applies `a` simultaneously to `val`; nullopt when some assigned value
/// falls outside its declared domain. Intermediate arithmetic is unchecked.
std::optional<Valuation> eval_update(const UpdateExpr& a, const Valuation& val,
                                     const VariableSet& vars);

// ── Structural operations ───────────────────────────────────────────────────

bool equal(const IntExpr& a, const IntExpr& b);
bool equal(const BoolExpr& a, const BoolExpr& b);

/// !p, unwrapping a top-level negation instead of stacking a second one.
BoolExprPtr negated(const BoolExprPtr& p);

/// Whether one predicate is literally the negation of the other.
bool is_syntactic_negation(const BoolExpr& a, const BoolExpr& b);

/// Witness valuation with eval_pred(a) == eval_pred(b), i.e. a counterexample
/// to complementarity; nullopt when a and b are complementary over all of
/// dom(vars).
std::optional<Valuation> complement_witness(const BoolExpr& a, const BoolExpr& b,
                                            const VariableSet& vars);

void collect_vars(const IntExpr& e, std::vector<std::string>& out);
void collect_vars(const BoolExpr& e, std::vector<std::string>& out);
std::vector<std::string> collect_vars(const UpdateExpr& a);

// ── Text form ───────────────────────────────────────────────────────────────

std::string to_string(const IntExpr& e);
std::string to_string(const BoolExpr& e);
std::string to_string(const UpdateExpr& a);  // "v := v+1; w := w-1"

struct ExprParseError : std::runtime_error {
    std::size_t position;
    ExprParseError(std::size_t pos, const std::string& what)
        : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"),
          position(pos) {}
};

BoolExprPtr parse_predicate(const std::string& text);
IntExprPtr parse_int_expr(const std::string& text);
UpdateExpr parse_update(const std::string& text);

}  // namespace efsmdes

#endif  // EFSMDES_EXPR_HPP
