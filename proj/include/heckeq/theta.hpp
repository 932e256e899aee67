#ifndef HECKEQ_THETA_HPP
#define HECKEQ_THETA_HPP

#include <set>
#include <stdexcept>

#include "heckeq/qarg.hpp"
#include "heckeq/series.hpp"

namespace heckeq {

struct NonPositiveExponentError : std::runtime_error {
    explicit NonPositiveExponentError(const QArg& x)
        : std::runtime_error("pochhammer_inf requires a positive exponent, got " + x.str()) {}
};

// x = +q^{n*M} for some integer n, the zero locus of j(x; q^M).
inline bool is_singular_theta_arg(const QArg& x, FracExp M) {
    return x.sign == 1 && (x.exp / M).is_integer();
}

namespace detail {

// prod_{i>=0} (1 - sign q^{M i + alpha}), truncated at O. Accepts alpha == 0
// with sign == -1 (the factor is the constant 2), which the theta product
// form needs at the boundary of the elliptic shift.
inline FracSeries poch_core(int sign, FracExp alpha, FracExp M, FracExp O) {
    if (alpha < FracExp(0)) throw std::logic_error("poch_core: negative exponent");
    FracSeries r = FracSeries::one();
    if (alpha == FracExp(0)) {
        if (sign == 1) return FracSeries::zero();  // the i = 0 factor vanishes
        r = FracSeries::constant(rat(2));
        alpha = M;
    }
    for (long long i = 0;; ++i) {
        FracExp e = i * M + alpha;
        if (e > O) break;
        r = (r + r.shifted(rat(-sign), e)).truncated(O);
    }
    return r.truncated(O);
}

}  // namespace detail

// (x; q^M)_infinity as a truncated series; every factor touching exponents
// <= O is included. x.exp <= 0 is rejected: the contract keeps the public
// product anchored at a unit constant term.
inline FracSeries pochhammer_inf(const QArg& x, FracExp M, FracExp O) {
    if (!(FracExp(0) < x.exp)) throw NonPositiveExponentError(x);
    if (!(FracExp(0) < M)) throw std::invalid_argument("pochhammer_inf: modulus must be positive");
    return detail::poch_core(x.sign, x.exp, M, O);
}

enum class ThetaForm { Sum, Product };

namespace detail {

inline FracSeries jtheta_sum(const QArg& x, FracExp M, FracExp O) {
    FracSeries::TermMap acc;
    auto put = [&](long long n) {
        FracExp e = M * binom2(n) + n * x.exp;
        if (e > O) return false;
        Rat c = rat(((n % 2 != 0) ? -1 : 1) * (x.sign == -1 && (n % 2 != 0) ? -1 : 1));
        auto [it, fresh] = acc.emplace(e, c);
        if (!fresh) it->second += c;
        return true;
    };
    // Exponent M*binom(n,2) + n*alpha is an upward parabola with vertex at
    // n = 1/2 - alpha/M; walk both tails until past the vertex and above O.
    FracExp vert = FracExp(1, 2) - x.exp / M;
    for (long long n = 0;; ++n)
        if (!put(n) && FracExp(n) > vert) break;
    for (long long n = -1;; --n)
        if (!put(n) && FracExp(n) < vert) break;
    return FracSeries::from_terms(std::move(acc), O);
}

inline FracSeries jtheta_product(const QArg& x, FracExp M, FracExp O) {
    // Elliptic shift x = q^{nM} x' with x'.exp in (0, M]:
    // j(q^{nM} x'; q^M) = (-1)^n q^{-M binom(n,2)} x'^{-n} j(x'; q^M).
    long long n = (x.exp / M).ceil() - 1;
    FracExp a2 = x.exp - n * M;
    if (a2 == M && x.sign == 1) return FracSeries::zero();  // j(q^M; q^M) = 0, exactly
    QArg xs(x.sign, a2);
    Rat pc = rat((n % 2 != 0) ? -1 : 1) * rat((x.sign == -1 && (n % 2 != 0)) ? -1 : 1);
    FracExp pe = -(M * binom2(n)) - n * a2;
    FracExp Oi = O - pe;
    FracSeries p1 = detail::poch_core(xs.sign, a2, M, Oi);
    FracSeries p2 = detail::poch_core(xs.sign, M - a2, M, Oi);  // (q^M/x')_inf
    FracSeries p3 = detail::poch_core(1, M, M, Oi);
    return ((p1 * p2).truncated(Oi) * p3).shifted(pc, pe).truncated(O);
}

}  // namespace detail

// Jacobi theta j(x; q^M) = sum_n (-1)^n q^{M binom(n,2)} x^n
//                        = (x)_inf (q^M/x)_inf (q^M)_inf.
// Singular arguments x = +q^{nM} give the (exact) zero series.
inline FracSeries jtheta(const QArg& x, FracExp M, ThetaForm form, FracExp O) {
    if (!(FracExp(0) < M)) throw std::invalid_argument("jtheta: modulus must be positive");
    if (is_singular_theta_arg(x, M)) return FracSeries::zero();
    return form == ThetaForm::Sum ? detail::jtheta_sum(x, M, O) : detail::jtheta_product(x, M, O);
}

inline FracSeries jtheta(const QArg& x, FracExp M, FracExp O) {
    return jtheta(x, M, ThetaForm::Product, O);
}

// j(x; -q^M): the sum form picks up (-1)^{binom(n,2)}. Only the identity
// suite needs a negative base.
inline FracSeries jtheta_minus_base(const QArg& x, FracExp M, FracExp O) {
    FracSeries::TermMap acc;
    auto put = [&](long long n) {
        FracExp e = M * binom2(n) + n * x.exp;
        if (e > O) return false;
        long long nb2 = (n * (n - 1) / 2) % 2;
        int s = ((n % 2 != 0) ? -1 : 1) * (nb2 != 0 ? -1 : 1) *
                ((x.sign == -1 && (n % 2 != 0)) ? -1 : 1);
        auto [it, fresh] = acc.emplace(e, rat(s));
        if (!fresh) it->second += rat(s);
        return true;
    };
    FracExp vert = FracExp(1, 2) - x.exp / M;
    for (long long n = 0;; ++n)
        if (!put(n) && FracExp(n) > vert) break;
    for (long long n = -1;; --n)
        if (!put(n) && FracExp(n) < vert) break;
    return FracSeries::from_terms(std::move(acc), O);
}

enum class BigJKind { Plain, Bar, Prod };

// J_{a,M} = j(q^a; q^M), Jbar_{a,M} = j(-q^a; q^M), J_M = prod (1 - q^{Mi}).
inline FracSeries big_j(BigJKind kind, long long a, long long M, FracExp O) {
    if (M < 1) throw std::invalid_argument("big_j: modulus must be >= 1");
    switch (kind) {
        case BigJKind::Plain:
            return jtheta(QArg::q(a), M, O);
        case BigJKind::Bar:
            return jtheta(QArg::neg_q(a), M, O);
        case BigJKind::Prod:
        default:
            return detail::poch_core(1, M, M, O);
    }
}

// eta(k tau) = q^{k/24} prod_{n>=1} (1 - q^{kn}).
inline FracSeries eta(long long k, FracExp O) {
    if (k < 1) throw std::invalid_argument("eta: k must be >= 1");
    FracExp lead(k, 24);
    return big_j(BigJKind::Prod, 0, k, O - lead).shifted(rat(1), lead).truncated(O);
}

// prod over n >= 1 with (n mod modulus) not excluded of (1 - q^{step n})^power.
inline FracSeries restricted_product(long long step, long long modulus,
                                     const std::set<long long>& excluded, int power, FracExp O) {
    if (step < 1 || modulus < 1) throw std::invalid_argument("restricted_product: bad parameters");
    if (power != 1 && power != -1)
        throw std::invalid_argument("restricted_product: power must be +-1");
    FracSeries r = FracSeries::one().truncated(O);
    for (long long n = 1; FracExp(step * n) <= O; ++n) {
        if (excluded.count(((n % modulus) + modulus) % modulus)) continue;
        FracExp e(step * n);
        if (power == 1) {
            r = (r + r.shifted(rat(-1), e)).truncated(O);
        } else {
            FracSeries::TermMap geo;
            for (FracExp g(0); g <= O; g = g + e) geo.emplace(g, rat(1));
            r = (r * FracSeries::from_terms(std::move(geo), O)).truncated(O);
        }
    }
    return r;
}

}  // namespace heckeq

#endif
