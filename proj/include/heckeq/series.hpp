#ifndef HECKEQ_SERIES_HPP
#define HECKEQ_SERIES_HPP

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heckeq/frac_exp.hpp"
#include "heckeq/rational.hpp"

namespace heckeq {

struct ZeroSeriesError : std::runtime_error {
    ZeroSeriesError() : std::runtime_error("inverse of a series with no stored terms") {}
};

struct OrderTooLargeError : std::runtime_error {
    FracExp requested;
    FracExp guaranteed;
    OrderTooLargeError(FracExp req, FracExp have)
        : std::runtime_error("comparison order q^" + req.str() +
                             " exceeds guaranteed order q^" + have.str() +
                             "; recompute at higher order"),
          requested(req),
          guaranteed(have) {}
};

// Outcome of an order-bounded coefficient comparison.
struct Verdict {
    bool equal = true;
    FracExp exponent;  // valid when !equal
    Rat lhs, rhs;      // valid when !equal
};

// Truncated Laurent series in q: finite map exponent -> nonzero rational
// coefficient, plus the guaranteed-correct truncation bound `order`.
// order == nullopt means the stored terms are the exact series (polynomials,
// monomials); every truncated construction carries a finite order.
//
// Invariants: no stored exponent exceeds a finite order; no zero coefficients;
// all stored coefficients at exponents <= order are the true ones.
class FracSeries {
  public:
    using TermMap = std::map<FracExp, Rat>;

    FracSeries() = default;

    static FracSeries zero() { return FracSeries(); }

    static FracSeries monomial(Rat c, FracExp e) {
        FracSeries s;
        if (c != 0) s.terms_.emplace(e, std::move(c));
        return s;
    }

    static FracSeries constant(Rat c) { return monomial(std::move(c), FracExp(0)); }
    static FracSeries one() { return constant(rat(1)); }

    static FracSeries from_terms(TermMap terms, std::optional<FracExp> order) {
        FracSeries s;
        s.order_ = order;
        for (auto& [e, c] : terms)
            if (c != 0 && (!order || e <= *order)) s.terms_.emplace(e, std::move(c));
        return s;
    }

    const TermMap& terms() const { return terms_; }
    std::optional<FracExp> order() const { return order_; }
    bool is_exact() const { return !order_.has_value(); }

    // True when no terms are stored (zero up to the guaranteed order).
    bool is_zero() const { return terms_.empty(); }

    // Least stored exponent.
    std::optional<FracExp> val() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first;
    }

    Rat coeff(FracExp e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? rat(0) : it->second;
    }

    // Drop terms above O and cap the guaranteed order at O.
    FracSeries truncated(FracExp O) const {
        FracSeries s;
        s.order_ = order_ ? std::min(*order_, O) : O;
        for (const auto& [e, c] : terms_)
            if (e <= *s.order_) s.terms_.emplace(e, c);
        return s;
    }

    friend FracSeries operator+(const FracSeries& a, const FracSeries& b) {
        FracSeries s;
        s.order_ = min_order(a.order_, b.order_);
        s.terms_ = a.terms_;
        for (const auto& [e, c] : b.terms_) {
            auto [it, fresh] = s.terms_.emplace(e, c);
            if (!fresh) {
                it->second += c;
                if (it->second == 0) s.terms_.erase(it);
            }
        }
        if (s.order_) s.drop_above(*s.order_);
        return s;
    }

    friend FracSeries operator-(const FracSeries& a, const FracSeries& b) { return a + (-b); }

    FracSeries operator-() const {
        FracSeries s;
        s.order_ = order_;
        for (const auto& [e, c] : terms_) s.terms_.emplace(e, -c);
        return s;
    }

    // c * q^de * this.
    FracSeries shifted(const Rat& c, FracExp de) const {
        FracSeries s;
        if (order_) s.order_ = *order_ + de;
        if (c == 0) return s;
        for (const auto& [e, co] : terms_) s.terms_.emplace(e + de, co * c);
        return s;
    }

    // Cauchy product. order = min(a.order + val(b), b.order + val(a)), where a
    // zero operand contributes its own order as val; exact zero annihilates.
    friend FracSeries operator*(const FracSeries& a, const FracSeries& b) {
        if (a.is_exact() && a.is_zero()) return zero();
        if (b.is_exact() && b.is_zero()) return zero();
        FracSeries s;
        std::optional<FracExp> bound;
        if (a.order_) bound = *a.order_ + (b.val() ? *b.val() : *b.order_);
        if (b.order_) {
            FracExp other = *b.order_ + (a.val() ? *a.val() : *a.order_);
            bound = bound ? std::min(*bound, other) : other;
        }
        s.order_ = bound;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                FracExp e = ea + eb;
                if (bound && e > *bound) break;  // b.terms_ ascending
                auto [it, fresh] = s.terms_.emplace(e, ca * cb);
                if (!fresh) it->second += ca * cb;
            }
        }
        s.remove_zeros();
        return s;
    }

    // Multiplicative inverse. `upto` bounds the exponents of the result; when
    // omitted the input's own order is used (required finite unless the input
    // is a monomial). Result order = min(order - 2*val, upto).
    FracSeries inverse(std::optional<FracExp> upto = std::nullopt) const {
        if (terms_.empty()) throw ZeroSeriesError();
        FracExp v = terms_.begin()->first;
        if (terms_.size() == 1) {
            FracSeries s = monomial(rat(1) / terms_.begin()->second, -v);
            if (order_) s.order_ = *order_ - v - v;
            if (upto && (!s.order_ || *upto < *s.order_)) s.order_ = *upto;
            return s;
        }
        std::optional<FracExp> bound;  // result order
        if (order_) bound = *order_ - v - v;
        if (upto) bound = bound ? std::min(*bound, *upto) : *upto;
        if (!bound)
            throw std::logic_error(
                "inverse of an exact multi-term series needs an explicit order");
        // Unit part u = q^{-v} * this has constant term; its support lives on
        // the lattice g*Z with g = gcd of the shifted exponents.
        FracExp g(0, 1);
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (e == v) continue;
            FracExp d = e - v;
            if (first) {
                g = d;
                first = false;
            } else {
                g = FracExp(std::gcd(g.num * d.den, d.num * g.den), g.den * d.den);
            }
        }
        const Rat c0 = terms_.begin()->second;
        // b = 1/u up to exponent T = bound + v; b_k on lattice k*g.
        FracExp T = *bound + v;
        long long K = T < FracExp(0) ? -1 : (T / g).floor();
        std::vector<Rat> u(static_cast<size_t>(K < 0 ? 0 : K) + 1, rat(0));
        for (const auto& [e, c] : terms_) {
            FracExp d = e - v;
            if (d > T) break;
            u[static_cast<size_t>((d / g).floor())] = c;
        }
        std::vector<Rat> bser(u.size(), rat(0));
        FracSeries s;
        s.order_ = bound;
        if (K >= 0) {
            bser[0] = rat(1) / c0;
            s.terms_.emplace(-v, bser[0]);
            for (long long k = 1; k <= K; ++k) {
                Rat acc = rat(0);
                for (long long j = 1; j <= k; ++j)
                    if (u[static_cast<size_t>(j)] != 0 && bser[static_cast<size_t>(k - j)] != 0)
                        acc += u[static_cast<size_t>(j)] * bser[static_cast<size_t>(k - j)];
                if (acc == 0) continue;
                bser[static_cast<size_t>(k)] = -acc / c0;
                s.terms_.emplace(k * g - v, bser[static_cast<size_t>(k)]);
            }
        }
        return s;
    }

    // Integer power; negative k inverts first (needs a finite order or `upto`).
    FracSeries pow(long long k, std::optional<FracExp> upto = std::nullopt) const {
        if (k < 0) return inverse(upto).pow(-k, upto);
        FracSeries r = one();
        FracSeries base = *this;
        while (k > 0) {
            if (k & 1) r = r * base;
            k >>= 1;
            if (k) base = base * base;
        }
        if (upto && r.order_ && *r.order_ > *upto) r = r.truncated(*upto);
        return r;
    }

    // Coefficient-by-coefficient comparison through order O. Throws
    // OrderTooLargeError when O is beyond either guaranteed order: comparing
    // past what is known must never silently report equality.
    Verdict equal_to_order(const FracSeries& b, FracExp O) const {
        if (order_ && O > *order_) throw OrderTooLargeError(O, *order_);
        if (b.order_ && O > *b.order_) throw OrderTooLargeError(O, *b.order_);
        auto ia = terms_.begin(), ib = b.terms_.begin();
        while (ia != terms_.end() || ib != b.terms_.end()) {
            FracExp ea = ia != terms_.end() ? ia->first : FracExp(0);
            FracExp eb = ib != b.terms_.end() ? ib->first : FracExp(0);
            bool ha = ia != terms_.end() && ea <= O;
            bool hb = ib != b.terms_.end() && eb <= O;
            if (!ha && !hb) break;
            Verdict v;
            v.equal = false;
            if (ha && (!hb || ea < eb)) {
                v.exponent = ea;
                v.lhs = ia->second;
                v.rhs = rat(0);
                return v;
            }
            if (hb && (!ha || eb < ea)) {
                v.exponent = eb;
                v.lhs = rat(0);
                v.rhs = ib->second;
                return v;
            }
            if (ia->second != ib->second) {
                v.exponent = ea;
                v.lhs = ia->second;
                v.rhs = ib->second;
                return v;
            }
            ++ia;
            ++ib;
        }
        return Verdict{};
    }

    std::string str(long long max_terms = -1) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        long long n = 0;
        for (const auto& [e, c] : terms_) {
            if (max_terms >= 0 && n >= max_terms) {
                os << " + ...";
                break;
            }
            Rat a = c;
            if (n == 0) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            bool unit = (a == 1);
            if (e.num == 0) {
                os << rat_str_pretty(a);
            } else {
                if (!unit) os << rat_str_pretty(a) << "*";
                if (e == FracExp(1))
                    os << "q";
                else if (e.is_integer())
                    os << "q^" << e.str();
                else
                    os << "q^(" << e.str() << ")";
            }
            ++n;
        }
        return os.str();
    }

  private:
    static std::optional<FracExp> min_order(const std::optional<FracExp>& a,
                                            const std::optional<FracExp>& b) {
        if (!a) return b;
        if (!b) return a;
        return std::min(*a, *b);
    }

    void drop_above(FracExp O) {
        terms_.erase(terms_.upper_bound(O), terms_.end());
    }
    void remove_zeros() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second == 0 ? terms_.erase(it) : std::next(it);
    }

    TermMap terms_;
    std::optional<FracExp> order_;
};

}  // namespace heckeq

#endif
