#ifndef HECKEQ_EXPR_HPP
#define HECKEQ_EXPR_HPP

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "heckeq/string_functions.hpp"

namespace heckeq {

struct ParseError : std::runtime_error {
    std::size_t offset;
    std::vector<std::string> expected;
    ParseError(std::size_t off, std::vector<std::string> exp, const std::string& found)
        : std::runtime_error(build(off, exp, found)), offset(off), expected(std::move(exp)) {}

  private:
    static std::string build(std::size_t off, const std::vector<std::string>& exp,
                             const std::string& found) {
        std::string m = "parse error at byte " + std::to_string(off) + ": expected ";
        for (std::size_t i = 0; i < exp.size(); ++i) m += (i ? " | " : "") + exp[i];
        if (!found.empty()) m += ", found " + found;
        return m;
    }
};

struct EvalError : std::runtime_error {
    std::string subexpression;
    EvalError(const std::string& what, std::string subexpr)
        : std::runtime_error(what + " [in: " + subexpr + "]"), subexpression(std::move(subexpr)) {}
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// AST of the surface language. Call arguments are literal nodes (rational or
// signed q-power); arity and literal ranges are validated at parse time.
struct Expr {
    enum class Kind { Rational, QPower, Call, Add, Sub, Mul, Div, Pow };
    Kind kind;

    Rat rational;              // Rational
    QArg qpower;               // QPower
    std::string callee;        // Call
    std::vector<ExprPtr> args; // Call
    ExprPtr lhs, rhs;          // Add/Sub/Mul/Div, Pow uses lhs
    long long power = 0;       // Pow

    static ExprPtr make_rational(Rat r) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Rational;
        e->rational = std::move(r);
        return e;
    }
    static ExprPtr make_qpower(QArg a) {
        if (a.exp == FracExp(0)) return make_rational(rat(a.sign));  // +-q^0 is the rational +-1
        auto e = std::make_shared<Expr>();
        e->kind = Kind::QPower;
        e->qpower = a;
        return e;
    }
    static ExprPtr make_call(std::string name, std::vector<ExprPtr> as) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Call;
        e->callee = std::move(name);
        e->args = std::move(as);
        return e;
    }
    static ExprPtr make_bin(Kind k, ExprPtr a, ExprPtr b) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->lhs = std::move(a);
        e->rhs = std::move(b);
        return e;
    }
    static ExprPtr make_pow(ExprPtr a, long long k) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Pow;
        e->lhs = std::move(a);
        e->power = k;
        return e;
    }
};

namespace detail {

struct CallSig {
    const char* name;
    int min_args;
    int max_args;  // -1: unbounded (rp)
};

inline const std::vector<CallSig>& call_signatures() {
    static const std::vector<CallSig> sigs = {
        {"J", 2, 2},  {"Jb", 2, 2}, {"Jp", 1, 1},  {"jt", 2, 2}, {"eta", 1, 1}, {"am", 3, 3},
        {"f", 5, 5},  {"C", 3, 3},  {"S", 3, 3},   {"KPL", 3, 3}, {"rp", 3, -1},
    };
    return sigs;
}

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail({"operator", "end of input"});
        return e;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::vector<std::string> expected) {
        std::string found = pos_ < text_.size() ? std::string(1, text_[pos_]) : "end of input";
        throw ParseError(pos_, std::move(expected), found);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                e = Expr::make_bin(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, e, term());
            } else {
                return e;
            }
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (true) {
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                e = Expr::make_bin(c == '*' ? Expr::Kind::Mul : Expr::Kind::Div, e, factor());
            } else {
                return e;
            }
        }
    }

    ExprPtr factor() {
        ExprPtr e = atom();
        if (peek() == '^') {
            ++pos_;
            e = Expr::make_pow(e, parse_sint());
        }
        return e;
    }

    ExprPtr atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!eat(')')) fail({")"});
            return e;
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c)) || c == 'q') {
            // minus binds to a following literal at atom position
            std::size_t save = pos_;
            bool negated = false;
            if (c == '-') {
                ++pos_;
                negated = true;
            }
            char c2 = peek();
            if (c2 == 'q' && !is_ident_start_beyond_q()) {
                ++pos_;
                QArg a = parse_qpow_tail(negated);
                return Expr::make_qpower(a);
            }
            if (std::isdigit(static_cast<unsigned char>(c2))) {
                Rat r = parse_rat_digits();
                return Expr::make_rational(negated ? Rat(-r) : r);
            }
            pos_ = save;
            fail({"number", "q-power", "call", "("});
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return call();
        fail({"number", "q-power", "call", "("});
    }

    // after an optional '-' and the consumed 'q': ['^' '(' rat ')' | '^' sint]
    QArg parse_qpow_tail(bool negated) {
        FracExp e(1);
        if (peek() == '^') {
            ++pos_;
            if (peek() == '(') {
                ++pos_;
                e = parse_rat_exp();
                if (!eat(')')) fail({")"});
            } else {
                e = FracExp(parse_sint());
            }
        }
        return QArg(negated ? -1 : 1, e);
    }

    bool is_ident_start_beyond_q() {
        // distinguishes the literal q from an identifier beginning with q
        std::size_t save = pos_;
        skip_ws();
        std::size_t p = pos_ + 1;
        bool more = p < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[p])) ||
                                         text_[p] == '_');
        pos_ = save;
        return more;
    }

    long long parse_sint() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            ++pos_;
            neg = true;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail({"integer"});
        long long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            v = v * 10 + (text_[pos_++] - '0');
        return neg ? -v : v;
    }

    Rat parse_rat_digits() {  // digits already pending; optional /uint
        long long n = parse_sint();
        if (peek() == '/') {
            std::size_t save = pos_;
            ++pos_;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                long long d = parse_sint();
                if (d <= 0) fail({"positive denominator"});
                return rat(n, d);
            }
            pos_ = save;  // the '/' was a division operator
        }
        return rat(n);
    }

    FracExp parse_rat_exp() {
        long long n = parse_sint();
        long long d = 1;
        if (eat('/')) {
            d = parse_sint();
            if (d <= 0) fail({"positive denominator"});
        }
        return FracExp(n, d);
    }

    ExprPtr call() {
        skip_ws();
        std::size_t name_at = pos_;
        std::string name;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_'))
            name += text_[pos_++];
        const CallSig* sig = nullptr;
        for (const auto& s : call_signatures())
            if (name == s.name) sig = &s;
        if (!sig) {
            pos_ = name_at;
            fail({"one of J Jb Jp jt eta am f C S KPL rp"});
        }
        if (!eat('(')) fail({"("});
        std::vector<ExprPtr> args;
        if (peek() != ')') {
            args.push_back(call_arg());
            while (peek() == ',' || peek() == ';') {
                ++pos_;
                args.push_back(call_arg());
            }
        }
        std::size_t close_at = pos_;
        if (!eat(')')) fail({")", ",", ";"});
        int n = static_cast<int>(args.size());
        if (n < sig->min_args || (sig->max_args >= 0 && n > sig->max_args)) {
            pos_ = close_at;
            fail({std::string(sig->name) + " with " +
                  (sig->max_args == sig->min_args
                       ? std::to_string(sig->min_args)
                       : std::to_string(sig->min_args) + "+") +
                  " arguments"});
        }
        validate_call(name, args, name_at);
        return Expr::make_call(name, std::move(args));
    }

    // call arguments are literals: rat | qpow (optionally negated)
    ExprPtr call_arg() {
        char c = peek();
        std::size_t at = pos_;
        bool negated = false;
        if (c == '-') {
            ++pos_;
            negated = true;
            c = peek();
        }
        if (c == 'q' && !is_ident_start_beyond_q()) {
            ++pos_;
            return Expr::make_qpower(parse_qpow_tail(negated));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rat r = parse_rat_digits();
            return Expr::make_rational(negated ? Rat(-r) : r);
        }
        pos_ = at;
        fail({"literal argument (rational or q-power)"});
    }

    void require(bool ok, std::size_t at, const std::string& what) {
        if (!ok) {
            pos_ = at;
            fail({what});
        }
    }

    long long lit_int(const ExprPtr& a, std::size_t at, const std::string& what) {
        require(a->kind == Expr::Kind::Rational && is_integer(a->rational), at, what);
        return static_cast<long long>(a->rational.get_num().get_si());
    }

    void validate_call(const std::string& name, const std::vector<ExprPtr>& args, std::size_t at) {
        auto is_qarg = [](const ExprPtr& a) {
            return a->kind == Expr::Kind::QPower ||
                   (a->kind == Expr::Kind::Rational &&
                    (a->rational == 1 || a->rational == -1));
        };
        auto pos_rat = [&](const ExprPtr& a, const std::string& what) {
            require(a->kind == Expr::Kind::Rational && a->rational > 0, at, what);
        };
        if (name == "J" || name == "Jb") {
            lit_int(args[0], at, "integer a");
            require(lit_int(args[1], at, "positive integer modulus") >= 1, at,
                    "positive integer modulus");
        } else if (name == "Jp") {
            require(lit_int(args[0], at, "positive integer modulus") >= 1, at,
                    "positive integer modulus");
        } else if (name == "jt") {
            require(is_qarg(args[0]), at, "q-power argument");
            pos_rat(args[1], "positive rational modulus");
        } else if (name == "eta") {
            require(lit_int(args[0], at, "positive integer k") >= 1, at, "positive integer k");
        } else if (name == "am") {
            require(is_qarg(args[0]), at, "q-power argument");
            pos_rat(args[1], "positive rational modulus");
            require(is_qarg(args[2]), at, "q-power argument");
        } else if (name == "f") {
            for (int i = 0; i < 3; ++i)
                require(lit_int(args[i], at, "positive integer") >= 1, at, "positive integer");
            require(is_qarg(args[3]) && is_qarg(args[4]), at, "q-power argument");
        } else if (name == "C" || name == "S" || name == "KPL") {
            long long N = lit_int(args[0], at, "positive integer level");
            long long m = lit_int(args[1], at, "integer m");
            long long l = lit_int(args[2], at, "integer l");
            require(N >= 1 && l >= 0 && l <= N, at, "0 <= l <= level");
            require(((m - l) % 2 + 2) % 2 == 0, at, "m and l of equal parity");
        } else if (name == "rp") {
            require(lit_int(args[0], at, "positive integer step") >= 1, at,
                    "positive integer step");
            require(lit_int(args[1], at, "positive integer modulus") >= 1, at,
                    "positive integer modulus");
            for (std::size_t i = 2; i + 1 < args.size(); ++i)
                lit_int(args[i], at, "integer residue");
            long long pw = lit_int(args.back(), at, "power +-1");
            require(pw == 1 || pw == -1, at, "power +-1");
        }
    }
};

}  // namespace detail

inline ExprPtr parse(std::string_view text) { return detail::Parser(text).parse(); }

// Canonical printer; parse(print(e)) reproduces e.
inline std::string print(const Expr& e) {
    auto paren = [](const std::string& s) { return "(" + s + ")"; };
    switch (e.kind) {
        case Expr::Kind::Rational:
            return rat_str_pretty(e.rational);
        case Expr::Kind::QPower:
            return e.qpower.str();
        case Expr::Kind::Call: {
            std::string s = e.callee + "(";
            for (std::size_t i = 0; i < e.args.size(); ++i)
                s += (i ? "," : "") + print(*e.args[i]);
            return s + ")";
        }
        case Expr::Kind::Pow: {
            std::string base = print(*e.lhs);
            if (e.lhs->kind != Expr::Kind::Call) base = paren(base);
            return base + "^" + std::to_string(e.power);
        }
        default: {
            std::string a = print(*e.lhs), b = print(*e.rhs);
            auto prec = [](Expr::Kind k) {
                return (k == Expr::Kind::Add || k == Expr::Kind::Sub) ? 1
                       : (k == Expr::Kind::Mul || k == Expr::Kind::Div) ? 2
                                                                        : 3;
            };
            int mine = prec(e.kind);
            auto wrap_left = [&](const ExprPtr& n, const std::string& s) {
                bool bin = n->kind == Expr::Kind::Add || n->kind == Expr::Kind::Sub ||
                           n->kind == Expr::Kind::Mul || n->kind == Expr::Kind::Div;
                return (bin && prec(n->kind) < mine) ? paren(s) : s;
            };
            auto wrap_right = [&](const ExprPtr& n, const std::string& s) {
                bool bin = n->kind == Expr::Kind::Add || n->kind == Expr::Kind::Sub ||
                           n->kind == Expr::Kind::Mul || n->kind == Expr::Kind::Div;
                bool neg_lit = (n->kind == Expr::Kind::Rational && n->rational < 0) ||
                               (n->kind == Expr::Kind::QPower && n->qpower.sign < 0);
                return ((bin && prec(n->kind) <= mine) || neg_lit) ? paren(s) : s;
            };
            const char* op = e.kind == Expr::Kind::Add   ? " + "
                             : e.kind == Expr::Kind::Sub ? " - "
                             : e.kind == Expr::Kind::Mul ? "*"
                                                         : "/";
            return wrap_left(e.lhs, a) + op + wrap_right(e.rhs, b);
        }
    }
}

namespace detail {

inline QArg to_qarg(const Expr& e) {
    if (e.kind == Expr::Kind::QPower) return e.qpower;
    if (e.kind == Expr::Kind::Rational && e.rational == 1) return QArg::one();
    if (e.kind == Expr::Kind::Rational && e.rational == -1) return QArg::minus_one();
    throw EvalError("expected a signed q-power (or +-1)", print(e));
}

inline long long to_int(const Expr& e) {
    if (e.kind == Expr::Kind::Rational && is_integer(e.rational))
        return static_cast<long long>(e.rational.get_num().get_si());
    throw EvalError("expected an integer literal", print(e));
}

inline FracExp to_fracexp(const Expr& e) {
    if (e.kind == Expr::Kind::Rational)
        return FracExp(static_cast<long long>(e.rational.get_num().get_si()),
                       static_cast<long long>(e.rational.get_den().get_si()));
    throw EvalError("expected a rational literal", print(e));
}

inline FracSeries eval_node(const Expr& e, FracExp O);

inline FracSeries eval_call(const Expr& e, FracExp O) {
    const auto& a = e.args;
    if (e.callee == "J") return big_j(BigJKind::Plain, to_int(*a[0]), to_int(*a[1]), O);
    if (e.callee == "Jb") return big_j(BigJKind::Bar, to_int(*a[0]), to_int(*a[1]), O);
    if (e.callee == "Jp") return big_j(BigJKind::Prod, 0, to_int(*a[0]), O);
    if (e.callee == "jt") return jtheta(to_qarg(*a[0]), to_fracexp(*a[1]), O);
    if (e.callee == "eta") return eta(to_int(*a[0]), O);
    if (e.callee == "am")
        return appell_m(AppellSpec(to_qarg(*a[0]), to_fracexp(*a[1]), to_qarg(*a[2])), O);
    if (e.callee == "f")
        return hecke_f(DoubleSumParams(to_int(*a[0]), to_int(*a[1]), to_int(*a[2]),
                                       to_qarg(*a[3]), to_qarg(*a[4])),
                       O);
    if (e.callee == "C")
        return string_c_direct(StringIndex(to_int(*a[0]), to_int(*a[1]), to_int(*a[2])), O);
    if (e.callee == "S")
        return string_s_hecke(StringIndex(to_int(*a[0]), to_int(*a[1]), to_int(*a[2])), O);
    if (e.callee == "KPL")
        return string_kp_lattice(StringIndex(to_int(*a[0]), to_int(*a[1]), to_int(*a[2])), O);
    if (e.callee == "rp") {
        std::set<long long> excl;
        for (std::size_t i = 2; i + 1 < a.size(); ++i) {
            long long mod = to_int(*a[1]);
            excl.insert(((to_int(*a[i]) % mod) + mod) % mod);
        }
        return restricted_product(to_int(*a[0]), to_int(*a[1]), excl,
                                  static_cast<int>(to_int(*a.back())), O);
    }
    throw EvalError("unknown call", e.callee);
}

inline FracSeries eval_node(const Expr& e, FracExp O) {
    switch (e.kind) {
        case Expr::Kind::Rational:
            return FracSeries::constant(e.rational);
        case Expr::Kind::QPower:
            return e.qpower.series();
        case Expr::Kind::Call:
            try {
                return eval_call(e, O);
            } catch (const EvalError&) {
                throw;
            } catch (const std::exception& ex) {
                throw EvalError(ex.what(), print(e));
            }
        case Expr::Kind::Add:
            return eval_node(*e.lhs, O) + eval_node(*e.rhs, O);
        case Expr::Kind::Sub:
            return eval_node(*e.lhs, O) - eval_node(*e.rhs, O);
        case Expr::Kind::Mul:
            return eval_node(*e.lhs, O) * eval_node(*e.rhs, O);
        case Expr::Kind::Div: {
            FracSeries num = eval_node(*e.lhs, O);
            FracSeries den = eval_node(*e.rhs, O);
            try {
                FracExp upto = O - std::min(FracExp(0), num.val().value_or(FracExp(0)));
                return num * den.inverse(upto);
            } catch (const std::exception& ex) {
                throw EvalError(ex.what(), print(e));
            }
        }
        case Expr::Kind::Pow:
        default: {
            FracSeries base = eval_node(*e.lhs, O);
            try {
                return base.pow(e.power, e.power < 0 ? std::optional<FracExp>(
                                                           O + 8 * (e.power < 0 ? -e.power : 1))
                                                     : std::nullopt);
            } catch (const std::exception& ex) {
                throw EvalError(ex.what(), print(e));
            }
        }
    }
}

}  // namespace detail

// Evaluate with every leaf computed at order O; the guaranteed order of the
// result can be lower when Laurent tails are divided through.
inline FracSeries eval(const Expr& e, FracExp O) { return detail::eval_node(e, O); }

// Evaluate with enough internal slack that the result is guaranteed through
// order O, then truncate to exactly O.
inline FracSeries eval_to_order(const Expr& e, FracExp O) {
    for (FracExp slack : {FracExp(8), FracExp(24), FracExp(72), FracExp(216)}) {
        FracSeries r = detail::eval_node(e, O + slack);
        if (!r.order() || *r.order() >= O) return r.truncated(O);
    }
    throw EvalError("could not reach requested order (valuation losses too large)",
                    print(e));
}

inline FracSeries eval_to_order(std::string_view text, FracExp O) {
    return eval_to_order(*parse(text), O);
}

}  // namespace heckeq

#endif
