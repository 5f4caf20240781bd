#include "efsmdes/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace efsmdes {

// ── Variables and valuations ────────────────────────────────────────────────

const VarDecl* find_var(const VariableSet& vars, const std::string& name) {
    for (const auto& v : vars) {
        if (v.name == name) return &v;
    }
    return nullptr;
}

std::int64_t Valuation::get(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw UnknownVariableError(name);
    return it->second;
}

std::string Valuation::to_string() const {
    std::string out;
    for (const auto& [name, value] : values_) {
        if (!out.empty()) out += ",";
        out += name + "=" + std::to_string(value);
    }
    return out;
}

std::optional<std::string> check_valuation(const VariableSet& vars, const Valuation& val) {
    if (val.size() != vars.size())
        return "valuation covers " + std::to_string(val.size()) + " variables, expected " +
               std::to_string(vars.size());
    for (const auto& decl : vars) {
        if (!val.contains(decl.name)) return "valuation is missing variable " + decl.name;
        const std::int64_t v = val.get(decl.name);
        if (!decl.contains(v))
            return decl.name + "=" + std::to_string(v) + " is outside [" +
                   std::to_string(decl.lo) + "," + std::to_string(decl.hi) + "]";
    }
    return std::nullopt;
}

std::vector<Valuation> enumerate_valuations(const VariableSet& vars) {
    std::vector<Valuation> out;
    out.emplace_back();
    for (const auto& decl : vars) {
        std::vector<Valuation> next;
        next.reserve(out.size() * static_cast<std::size_t>(decl.hi - decl.lo + 1));
        for (const auto& partial : out) {
            for (std::int64_t v = decl.lo; v <= decl.hi; ++v) {
                Valuation extended = partial;
                extended.set(decl.name, v);
                next.push_back(std::move(extended));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::optional<std::uint64_t> domain_count(const VariableSet& vars) {
    std::uint64_t count = 1;
    for (const auto& decl : vars) {
        const std::uint64_t size = static_cast<std::uint64_t>(decl.hi - decl.lo) + 1;
        if (count > (static_cast<std::uint64_t>(1) << 62) / size) return std::nullopt;
        count *= size;
    }
    return count;
}

// ── Node construction ───────────────────────────────────────────────────────

IntExprPtr IntExpr::literal(std::int64_t value) {
    auto node = std::make_shared<IntExpr>();
    node->kind_ = Kind::Literal;
    node->value_ = value;
    return node;
}

IntExprPtr IntExpr::variable(std::string name) {
    auto node = std::make_shared<IntExpr>();
    node->kind_ = Kind::Variable;
    node->name_ = std::move(name);
    return node;
}

IntExprPtr IntExpr::binary(ArithOp op, IntExprPtr lhs, IntExprPtr rhs) {
    auto node = std::make_shared<IntExpr>();
    node->kind_ = Kind::Binary;
    node->op_ = op;
    node->lhs_ = std::move(lhs);
    node->rhs_ = std::move(rhs);
    return node;
}

BoolExprPtr BoolExpr::constant(bool value) {
    auto node = std::make_shared<BoolExpr>();
    node->kind_ = Kind::Constant;
    node->value_ = value;
    return node;
}

BoolExprPtr BoolExpr::compare(CmpOp op, IntExprPtr lhs, IntExprPtr rhs) {
    auto node = std::make_shared<BoolExpr>();
    node->kind_ = Kind::Compare;
    node->cmp_ = op;
    node->int_lhs_ = std::move(lhs);
    node->int_rhs_ = std::move(rhs);
    return node;
}

BoolExprPtr BoolExpr::logical_and(BoolExprPtr lhs, BoolExprPtr rhs) {
    auto node = std::make_shared<BoolExpr>();
    node->kind_ = Kind::And;
    node->bool_lhs_ = std::move(lhs);
    node->bool_rhs_ = std::move(rhs);
    return node;
}

BoolExprPtr BoolExpr::logical_or(BoolExprPtr lhs, BoolExprPtr rhs) {
    auto node = std::make_shared<BoolExpr>();
    node->kind_ = Kind::Or;
    node->bool_lhs_ = std::move(lhs);
    node->bool_rhs_ = std::move(rhs);
    return node;
}

BoolExprPtr BoolExpr::negation(BoolExprPtr arg) {
    auto node = std::make_shared<BoolExpr>();
    node->kind_ = Kind::Not;
    node->bool_lhs_ = std::move(arg);
    return node;
}

// ── Updates ─────────────────────────────────────────────────────────────────

bool UpdateExpr::assigns(const std::string& name) const {
    return value_for(name) != nullptr;
}

const IntExprPtr* UpdateExpr::value_for(const std::string& name) const {
    for (const auto& a : assignments) {
        if (a.target == name) return &a.value;
    }
    return nullptr;
}

// ── Evaluation ──────────────────────────────────────────────────────────────

std::int64_t eval_int(const IntExpr& e, const Valuation& val) {
    switch (e.kind()) {
        case IntExpr::Kind::Literal:
            return e.value();
        case IntExpr::Kind::Variable:
            return val.get(e.name());
        case IntExpr::Kind::Binary: {
            const std::int64_t l = eval_int(*e.lhs(), val);
            const std::int64_t r = eval_int(*e.rhs(), val);
            switch (e.op()) {
                case ArithOp::Add: return l + r;
                case ArithOp::Sub: return l - r;
                case ArithOp::Mul: return l * r;
            }
        }
    }
    throw std::logic_error("corrupt IntExpr node");
}

bool eval_pred(const BoolExpr& p, const Valuation& val) {
    switch (p.kind()) {
        case BoolExpr::Kind::Constant:
            return p.value();
        case BoolExpr::Kind::Compare: {
            const std::int64_t l = eval_int(*p.cmp_lhs(), val);
            const std::int64_t r = eval_int(*p.cmp_rhs(), val);
            switch (p.cmp()) {
                case CmpOp::Lt: return l < r;
                case CmpOp::Le: return l <= r;
                case CmpOp::Gt: return l > r;
                case CmpOp::Ge: return l >= r;
                case CmpOp::Eq: return l == r;
                case CmpOp::Ne: return l != r;
            }
            throw std::logic_error("corrupt CmpOp");
        }
        case BoolExpr::Kind::And:
            return eval_pred(*p.lhs(), val) && eval_pred(*p.rhs(), val);
        case BoolExpr::Kind::Or:
            return eval_pred(*p.lhs(), val) || eval_pred(*p.rhs(), val);
        case BoolExpr::Kind::Not:
            return !eval_pred(*p.arg(), val);
    }
    throw std::logic_error("corrupt BoolExpr node");
}

std::optional<Valuation> eval_update(const UpdateExpr& a, const Valuation& val,
                                     const VariableSet& vars) {
    // Evaluate every right-hand side against the pre-state before storing,
    // so {x := y; y := x} swaps.
    std::vector<std::pair<std::string, std::int64_t>> staged;
    staged.reserve(a.assignments.size());
    for (const auto& assign : a.assignments)
        staged.emplace_back(assign.target, eval_int(*assign.value, val));

    Valuation out = val;
    for (const auto& [name, value] : staged) {
        const VarDecl* decl = find_var(vars, name);
        if (decl == nullptr) throw UnknownVariableError(name);
        if (!decl->contains(value)) return std::nullopt;
        out.set(name, value);
    }
    return out;
}

// ── Structural operations ───────────────────────────────────────────────────

bool equal(const IntExpr& a, const IntExpr& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case IntExpr::Kind::Literal: return a.value() == b.value();
        case IntExpr::Kind::Variable: return a.name() == b.name();
        case IntExpr::Kind::Binary:
            return a.op() == b.op() && equal(*a.lhs(), *b.lhs()) && equal(*a.rhs(), *b.rhs());
    }
    return false;
}

bool equal(const BoolExpr& a, const BoolExpr& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case BoolExpr::Kind::Constant: return a.value() == b.value();
        case BoolExpr::Kind::Compare:
            return a.cmp() == b.cmp() && equal(*a.cmp_lhs(), *b.cmp_lhs()) &&
                   equal(*a.cmp_rhs(), *b.cmp_rhs());
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or:
            return equal(*a.lhs(), *b.lhs()) && equal(*a.rhs(), *b.rhs());
        case BoolExpr::Kind::Not:
            return equal(*a.arg(), *b.arg());
    }
    return false;
}

BoolExprPtr negated(const BoolExprPtr& p) {
    if (p->kind() == BoolExpr::Kind::Not) return p->arg();
    if (p->kind() == BoolExpr::Kind::Constant) return BoolExpr::constant(!p->value());
    return BoolExpr::negation(p);
}

bool is_syntactic_negation(const BoolExpr& a, const BoolExpr& b) {
    if (a.kind() == BoolExpr::Kind::Not && equal(*a.arg(), b)) return true;
    if (b.kind() == BoolExpr::Kind::Not && equal(*b.arg(), a)) return true;
    return false;
}

std::optional<Valuation> complement_witness(const BoolExpr& a, const BoolExpr& b,
                                            const VariableSet& vars) {
    for (const auto& val : enumerate_valuations(vars)) {
        if (eval_pred(a, val) == eval_pred(b, val)) return val;
    }
    return std::nullopt;
}

void collect_vars(const IntExpr& e, std::vector<std::string>& out) {
    switch (e.kind()) {
        case IntExpr::Kind::Literal:
            return;
        case IntExpr::Kind::Variable:
            if (std::find(out.begin(), out.end(), e.name()) == out.end()) out.push_back(e.name());
            return;
        case IntExpr::Kind::Binary:
            collect_vars(*e.lhs(), out);
            collect_vars(*e.rhs(), out);
            return;
    }
}

void collect_vars(const BoolExpr& e, std::vector<std::string>& out) {
    switch (e.kind()) {
        case BoolExpr::Kind::Constant:
            return;
        case BoolExpr::Kind::Compare:
            collect_vars(*e.cmp_lhs(), out);
            collect_vars(*e.cmp_rhs(), out);
            return;
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or:
            collect_vars(*e.lhs(), out);
            collect_vars(*e.rhs(), out);
            return;
        case BoolExpr::Kind::Not:
            collect_vars(*e.arg(), out);
            return;
    }
}

std::vector<std::string> collect_vars(const UpdateExpr& a) {
    std::vector<std::string> out;
    for (const auto& assign : a.assignments) {
        if (std::find(out.begin(), out.end(), assign.target) == out.end())
            out.push_back(assign.target);
        collect_vars(*assign.value, out);
    }
    return out;
}

// ── Rendering ───────────────────────────────────────────────────────────────
//
// Arithmetic and comparisons print compactly ("v+1", "v>7"); boolean
// connectives get spaces ("v>7 || w<2"). Parentheses are inserted exactly
// where re-parsing would otherwise change the tree.

namespace {

int int_prec(const IntExpr& e) {
    if (e.kind() != IntExpr::Kind::Binary) return 3;
    return e.op() == ArithOp::Mul ? 2 : 1;
}

bool is_unary_minus(const IntExpr& e) {
    return e.kind() == IntExpr::Kind::Binary && e.op() == ArithOp::Sub &&
           e.lhs()->kind() == IntExpr::Kind::Literal && e.lhs()->value() == 0;
}

std::string render_int(const IntExpr& e) {
    switch (e.kind()) {
        case IntExpr::Kind::Literal:
            return std::to_string(e.value());
        case IntExpr::Kind::Variable:
            return e.name();
        case IntExpr::Kind::Binary: {
            if (is_unary_minus(e)) {
                std::string inner = render_int(*e.rhs());
                if (int_prec(*e.rhs()) < 3) inner = "(" + inner + ")";
                return "-" + inner;
            }
            const int prec = int_prec(e);
            std::string l = render_int(*e.lhs());
            std::string r = render_int(*e.rhs());
            if (int_prec(*e.lhs()) < prec) l = "(" + l + ")";
            // Right operand needs parens at equal precedence to keep the
            // left-associative parse identical to the tree.
            if (int_prec(*e.rhs()) <= prec) r = "(" + r + ")";
            const char* op = e.op() == ArithOp::Add ? "+" : e.op() == ArithOp::Sub ? "-" : "*";
            return l + op + r;
        }
    }
    return "?";
}

const char* cmp_text(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
        case CmpOp::Eq: return "==";
        case CmpOp::Ne: return "!=";
    }
    return "?";
}

int bool_prec(const BoolExpr& e) {
    switch (e.kind()) {
        case BoolExpr::Kind::Or: return 1;
        case BoolExpr::Kind::And: return 2;
        case BoolExpr::Kind::Not: return 3;
        default: return 4;
    }
}

std::string render_bool(const BoolExpr& e) {
    switch (e.kind()) {
        case BoolExpr::Kind::Constant:
            return e.value() ? "true" : "false";
        case BoolExpr::Kind::Compare:
            return render_int(*e.cmp_lhs()) + cmp_text(e.cmp()) + render_int(*e.cmp_rhs());
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or: {
            const int prec = bool_prec(e);
            std::string l = render_bool(*e.lhs());
            std::string r = render_bool(*e.rhs());
            if (bool_prec(*e.lhs()) < prec) l = "(" + l + ")";
            if (bool_prec(*e.rhs()) <= prec) r = "(" + r + ")";
            return l + (e.kind() == BoolExpr::Kind::And ? " && " : " || ") + r;
        }
        case BoolExpr::Kind::Not:
            if (e.arg()->kind() == BoolExpr::Kind::Constant) return "!" + render_bool(*e.arg());
            return "!(" + render_bool(*e.arg()) + ")";
    }
    return "?";
}

}  // namespace

std::string to_string(const IntExpr& e) { return render_int(e); }
std::string to_string(const BoolExpr& e) { return render_bool(e); }

std::string to_string(const UpdateExpr& a) {
    std::string out;
    for (const auto& assign : a.assignments) {
        if (!out.empty()) out += "; ";
        out += assign.target + " := " + render_int(*assign.value);
    }
    return out;
}

// ── Parsing ─────────────────────────────────────────────────────────────────
//
// predicate   := or
// or          := and ( '||' and )*
// and         := unary ( '&&' unary )*
// unary       := '!' unary | atom
// atom        := 'true' | 'false' | comparison | '(' or ')'
// comparison  := sum cmp sum
// sum         := term ( ('+'|'-') term )*
// term        := factor ( '*' factor )*
// factor      := integer | identifier | '-' factor | '(' sum ')'
// update      := [ assignment ( ';' assignment )* ]
// assignment  := identifier ':=' sum
//
// A '(' may open either a boolean or an arithmetic group; the parser
// resolves this by trying the comparison first and backtracking.

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    BoolExprPtr parse_pred() {
        auto result = parse_or();
        expect_end();
        return result;
    }

    IntExprPtr parse_int() {
        auto result = parse_sum();
        expect_end();
        return result;
    }

    UpdateExpr parse_upd() {
        UpdateExpr out;
        skip_ws();
        if (at_end()) return out;
        while (true) {
            out.assignments.push_back(parse_assignment());
            skip_ws();
            if (!consume(";")) break;
            skip_ws();
            if (at_end()) break;  // trailing separator
        }
        expect_end();
        for (std::size_t i = 0; i < out.assignments.size(); ++i)
            for (std::size_t j = i + 1; j < out.assignments.size(); ++j)
                if (out.assignments[i].target == out.assignments[j].target)
                    throw ExprParseError(pos_, "variable " + out.assignments[i].target +
                                                   " assigned twice in one update");
        return out;
    }

private:
    UpdateExpr::Assignment parse_assignment() {
        skip_ws();
        const std::size_t at = pos_;
        std::string name = parse_identifier();
        if (name.empty()) throw ExprParseError(at, "expected variable name");
        skip_ws();
        if (!consume(":=") && !consume("="))
            throw ExprParseError(pos_, "expected ':=' after " + name);
        return {std::move(name), parse_sum()};
    }

    BoolExprPtr parse_or() {
        auto lhs = parse_and();
        while (true) {
            skip_ws();
            if (!consume("||")) return lhs;
            lhs = BoolExpr::logical_or(std::move(lhs), parse_and());
        }
    }

    BoolExprPtr parse_and() {
        auto lhs = parse_unary();
        while (true) {
            skip_ws();
            if (!consume("&&")) return lhs;
            lhs = BoolExpr::logical_and(std::move(lhs), parse_unary());
        }
    }

    BoolExprPtr parse_unary() {
        skip_ws();
        if (consume("!")) {
            // '!=' never reaches here: comparisons are parsed below '!'
            // and a bare '!=' has no left operand.
            if (peek() == '=') throw ExprParseError(pos_, "unexpected '!='");
            return BoolExpr::negation(parse_unary());
        }
        return parse_atom();
    }

    BoolExprPtr parse_atom() {
        skip_ws();
        if (consume_keyword("true")) return BoolExpr::constant(true);
        if (consume_keyword("false")) return BoolExpr::constant(false);

        // Try a comparison first; '(' may open an arithmetic group inside it.
        const std::size_t saved = pos_;
        try {
            return parse_comparison();
        } catch (const ExprParseError&) {
            pos_ = saved;
        }
        if (consume("(")) {
            auto inner = parse_or();
            skip_ws();
            if (!consume(")")) throw ExprParseError(pos_, "expected ')'");
            return inner;
        }
        throw ExprParseError(pos_, "expected predicate");
    }

    BoolExprPtr parse_comparison() {
        auto lhs = parse_sum();
        skip_ws();
        CmpOp op;
        if (consume("<=")) op = CmpOp::Le;
        else if (consume(">=")) op = CmpOp::Ge;
        else if (consume("==")) op = CmpOp::Eq;
        else if (consume("!=")) op = CmpOp::Ne;
        else if (consume("<")) op = CmpOp::Lt;
        else if (consume(">")) op = CmpOp::Gt;
        else if (consume("=")) op = CmpOp::Eq;
        else throw ExprParseError(pos_, "expected comparison operator");
        return BoolExpr::compare(op, std::move(lhs), parse_sum());
    }

    IntExprPtr parse_sum() {
        auto lhs = parse_term();
        while (true) {
            skip_ws();
            if (consume("+")) {
                lhs = IntExpr::binary(ArithOp::Add, std::move(lhs), parse_term());
            } else if (peek() == '-') {
                ++pos_;
                lhs = IntExpr::binary(ArithOp::Sub, std::move(lhs), parse_term());
            } else {
                return lhs;
            }
        }
    }

    IntExprPtr parse_term() {
        auto lhs = parse_factor();
        while (true) {
            skip_ws();
            if (!consume("*")) return lhs;
            lhs = IntExpr::binary(ArithOp::Mul, std::move(lhs), parse_factor());
        }
    }

    IntExprPtr parse_factor() {
        skip_ws();
        if (consume("(")) {
            auto inner = parse_sum();
            skip_ws();
            if (!consume(")")) throw ExprParseError(pos_, "expected ')'");
            return inner;
        }
        if (peek() == '-') {
            ++pos_;
            auto operand = parse_factor();
            if (operand->kind() == IntExpr::Kind::Literal)
                return IntExpr::literal(-operand->value());
            return IntExpr::binary(ArithOp::Sub, IntExpr::literal(0), std::move(operand));
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            const std::size_t at = pos_;
            std::int64_t value = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                value = value * 10 + (text_[pos_] - '0');
                ++pos_;
            }
            if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')
                throw ExprParseError(at, "malformed number");
            return IntExpr::literal(value);
        }
        std::string name = parse_identifier();
        if (name.empty()) throw ExprParseError(pos_, "expected term");
        if (name == "true" || name == "false")
            throw ExprParseError(pos_, "'" + name + "' is not an integer term");
        return IntExpr::variable(std::move(name));
    }

    std::string parse_identifier() {
        skip_ws();
        const char c = peek();
        if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') return {};
        std::string name;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
            name += text_[pos_];
            ++pos_;
        }
        return name;
    }

    bool consume_keyword(const std::string& kw) {
        skip_ws();
        const std::size_t saved = pos_;
        std::string name = parse_identifier();
        if (name == kw) return true;
        pos_ = saved;
        return false;
    }

    bool consume(const std::string& token) {
        if (text_.compare(pos_, token.size(), token) != 0) return false;
        // Reject prefixes of longer operators ("<" of "<=", "=" of "==").
        if ((token == "<" || token == ">" || token == "=") && pos_ + 1 < text_.size() &&
            text_[pos_ + 1] == '=')
            return false;
        pos_ += token.size();
        return true;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    bool at_end() const { return pos_ >= text_.size(); }

    void expect_end() {
        skip_ws();
        if (!at_end()) throw ExprParseError(pos_, "unexpected trailing input");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

BoolExprPtr parse_predicate(const std::string& text) { return Parser(text).parse_pred(); }
IntExprPtr parse_int_expr(const std::string& text) { return Parser(text).parse_int(); }
UpdateExpr parse_update(const std::string& text) { return Parser(text).parse_upd(); }

}  // namespace efsmdes
