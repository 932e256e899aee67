#ifndef HECKEQ_HECKE_HPP
#define HECKEQ_HECKE_HPP

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "heckeq/appell.hpp"
#include "heckeq/theta.hpp"

namespace heckeq {

// Parameters of the double-sum f_{a,b,c}(x, y, q). The suite instances have
// b^2 > ac (indefinite type); recorded, not enforced.
struct DoubleSumParams {
    long long a, b, c;
    QArg x, y;

    DoubleSumParams(long long a_, long long b_, long long c_, QArg x_, QArg y_)
        : a(a_), b(b_), c(c_), x(x_), y(y_) {
        if (a < 1 || b < 1 || c < 1)
            throw std::invalid_argument("DoubleSumParams: a, b, c must be >= 1");
    }
};

namespace detail {

// Least value of c*binom(s,2) + e*s over integer s >= 0 (upward parabola).
inline FracExp parabola_min(long long c, FracExp e) {
    FracExp best(0);
    FracExp vert = FracExp(1, 2) - e / FracExp(c);
    for (long long s = 0;; ++s) {
        FracExp v = c * binom2(s) + e * s;
        if (v < best) best = v;
        if (FracExp(s) > vert) break;
    }
    return best;
}

}  // namespace detail

// f_{a,b,c}(x,y,q) = (sum_{r,s>=0} - sum_{r,s<0}) (-1)^{r+s} x^r y^s
//                    q^{a binom(r,2) + b r s + c binom(s,2)}.
// Both quadrants have b*r*s >= 0, so a per-r floor that drops the coupling
// term bounds the enumeration; all cut-offs are checked past the parabola
// vertices where growth is monotone.
inline FracSeries hecke_f(const DoubleSumParams& p, FracExp O) {
    const FracExp d = p.x.exp, e = p.y.exp;
    FracSeries::TermMap acc;
    auto put = [&](FracExp ex, int c) {
        auto [it, fresh] = acc.emplace(ex, rat(c));
        if (!fresh) {
            it->second += rat(c);
            if (it->second == 0) acc.erase(it);
        }
    };
    auto sgn_pow = [](int s, long long k) { return (s == -1 && (k % 2 != 0)) ? -1 : 1; };

    // Quadrant r, s >= 0.
    {
        const FracExp cy = detail::parabola_min(p.c, e);
        const FracExp rvert = FracExp(1, 2) - d / FracExp(p.a);
        for (long long r = 0;; ++r) {
            FracExp base = p.a * binom2(r) + d * r;
            if (base + cy > O && FracExp(r) > rvert) break;
            FracExp svert = FracExp(1, 2) - (FracExp(p.b * r) + e) / FracExp(p.c);
            for (long long s = 0;; ++s) {
                FracExp ex = base + FracExp(p.b * r * s) + p.c * binom2(s) + e * s;
                if (ex <= O)
                    put(ex, (((r + s) % 2 != 0) ? -1 : 1) * sgn_pow(p.x.sign, r) *
                                sgn_pow(p.y.sign, s));
                else if (FracExp(s) > svert)
                    break;
            }
        }
    }
    // Quadrant r, s < 0 via r = -1-u, s = -1-v (subtracted). The coupling
    // b(1+u)(1+v) >= b(1+u) feeds the per-u floor.
    {
        // min over v >= 0 of c*binom(-1-v,2) + e*(-1-v); quadratic in v with
        // vertex at v = e/c - 3/2.
        FracExp cymin = [&] {
            FracExp best = p.c * binom2(-1) - e;  // v = 0
            FracExp vert = (e / FracExp(p.c)) - FracExp(3, 2);
            for (long long v = 0;; ++v) {
                FracExp w = p.c * binom2(-1 - v) + e * (-1 - v);
                if (w < best) best = w;
                if (FracExp(v) > vert) break;
            }
            return best;
        }();
        const FracExp uvert = (d - FracExp(p.b)) / FracExp(p.a) - FracExp(3, 2);
        for (long long u = 0;; ++u) {
            FracExp base = p.a * binom2(-1 - u) + d * (-1 - u);
            if (base + FracExp(p.b * (1 + u)) + cymin > O && FracExp(u) > uvert) break;
            FracExp vvert = (e - FracExp(p.b * (1 + u))) / FracExp(p.c) - FracExp(3, 2);
            for (long long v = 0;; ++v) {
                long long r = -1 - u, s = -1 - v;
                FracExp ex = base + FracExp(p.b * r * s) + p.c * binom2(s) + e * s;
                if (ex <= O)
                    put(ex, -(((u + v) % 2 != 0) ? -1 : 1) * sgn_pow(p.x.sign, 1 + u) *
                                sgn_pow(p.y.sign, 1 + v));
                else if (FracExp(v) > vvert)
                    break;
            }
        }
    }
    return FracSeries::from_terms(std::move(acc), O);
}

namespace detail {

// sum_{m=0}^{upper} with the convention sum_{n=a}^{b} = -sum_{n=b+1}^{a-1}
// for b < a - 1 (so an upper limit of -1 is empty).
inline std::vector<std::pair<long long, int>> convention_range(long long upper) {
    std::vector<std::pair<long long, int>> out;
    if (upper >= 0)
        for (long long m = 0; m <= upper; ++m) out.emplace_back(m, 1);
    else
        for (long long m = upper + 1; m <= -1; ++m) out.emplace_back(m, -1);
    return out;
}

}  // namespace detail

// Right side of the index shift
// f_{a,b,c}(x,y,q) = (-x)^R (-y)^S q^{a binom(R,2)+bRS+c binom(S,2)}
//                    f_{a,b,c}(q^{aR+bS} x, q^{bR+cS} y, q)
//   + sum_{m=0}^{R-1} (-x)^m q^{a binom(m,2)} j(q^{mb} y; q^c)
//   + sum_{m=0}^{S-1} (-y)^m q^{c binom(m,2)} j(q^{mb} x; q^a).
inline FracSeries f_shift_rhs(const DoubleSumParams& p, long long R, long long S, FracExp O) {
    QArg nx = p.x.negated(), ny = p.y.negated();
    QArg pref = nx.pow(R) * ny.pow(S);
    FracExp pe = pref.exp + p.a * binom2(R) + FracExp(p.b * R * S) + p.c * binom2(S);
    DoubleSumParams shifted(p.a, p.b, p.c, p.x.shifted(p.a * R + p.b * S),
                            p.y.shifted(p.b * R + p.c * S));
    FracSeries out = hecke_f(shifted, O - pe).shifted(rat(pref.sign), pe).truncated(O);
    for (auto [m, cs] : detail::convention_range(R - 1)) {
        QArg xm = nx.pow(m);
        FracExp ee = xm.exp + p.a * binom2(m);
        FracSeries j = jtheta(p.y.shifted(m * p.b), p.c, O - ee);
        out = (out + j.shifted(rat(cs * xm.sign), ee)).truncated(O);
    }
    for (auto [m, cs] : detail::convention_range(S - 1)) {
        QArg ym = ny.pow(m);
        FracExp ee = ym.exp + p.c * binom2(m);
        FracSeries j = jtheta(p.x.shifted(m * p.b), p.a, O - ee);
        out = (out + j.shifted(rat(cs * ym.sign), ee)).truncated(O);
    }
    return out;
}

// Right side of f_{a,b,c}(x,y,q) = -(q^{a+b+c}/(xy))
//                                  f_{a,b,c}(q^{2a+b}/x, q^{2c+b}/y, q).
inline FracSeries f_flip_rhs(const DoubleSumParams& p, FracExp O) {
    int ps = -p.x.sign * p.y.sign;
    FracExp pe = FracExp(p.a + p.b + p.c) - p.x.exp - p.y.exp;
    DoubleSumParams flipped(p.a, p.b, p.c, QArg(p.x.sign, FracExp(2 * p.a + p.b) - p.x.exp),
                            QArg(p.y.sign, FracExp(2 * p.c + p.b) - p.y.exp));
    return hecke_f(flipped, O - pe).shifted(rat(ps), pe).truncated(O);
}

// g_{1,b,1}(x,y,q,z1,z0) = j(y;q) m(q^{binom(b+1,2)-1} x (-y)^{-b}, q^{b^2-1}, z1)
//                        + j(x;q) m(q^{binom(b+1,2)-1} y (-x)^{-b}, q^{b^2-1}, z0).
// Appell invariants are checked even when the paired j factor vanishes.
inline FracSeries g_1b1(const QArg& x, const QArg& y, long long b, const QArg& z1, const QArg& z0,
                        FracExp O) {
    if (b < 2) throw std::invalid_argument("g_1b1: b must be >= 2");
    FracExp e0 = binom2(b + 1) - FracExp(1);
    FracExp M(b * b - 1);
    AppellSpec s1((x * y.negated().pow(-b)).shifted(e0), M, z1);
    AppellSpec s0((y * x.negated().pow(-b)).shifted(e0), M, z0);
    s1.validate();
    s0.validate();
    for (FracExp slack : {FracExp(8), FracExp(32), FracExp(128)}) {
        FracExp Oi = O + slack;
        FracSeries r = (jtheta(y, FracExp(1), Oi) * appell_m(s1, Oi)).truncated(Oi) +
                       (jtheta(x, FracExp(1), Oi) * appell_m(s0, Oi)).truncated(Oi);
        if (!r.order() || *r.order() >= O) return r.truncated(O);
    }
    throw std::logic_error("g_1b1: order shortfall");
}

namespace detail {

// num / den evaluated to order O; singular denominators rejected by callers.
inline FracSeries theta_quotient(const FracSeries& num, const FracSeries& den, FracExp O) {
    FracExp inv_upto = O - std::min(FracExp(0), num.val().value_or(FracExp(0)));
    return (num * den.inverse(inv_upto)).truncated(O);
}

}  // namespace detail

// theta_p of the f_{1,p+1,1} expansion: the p^2-term double sum of theta
// quotients. Throws SingularSpecError when a denominator theta vanishes.
inline FracSeries theta_p_sum(long long p, const QArg& x, const QArg& y, FracExp O, FracExp pad) {
    const long long P = p * (2 + p);
    const long long B = p * p * (2 + p);
    const QArg nx = x.negated(), ny = y.negated();
    const FracExp Oi = O + pad;
    const FracSeries J3 = detail::poch_core(1, B, B, Oi).pow(3).truncated(Oi);
    FracSeries total = FracSeries::zero().truncated(O);
    for (long long r = 0; r < p; ++r) {
        for (long long s = 0; s < p; ++s) {
            QArg c1 = nx.pow(r) * ny.pow(s + 1);
            FracExp ce = binom2(r) + FracExp((1 + p) * r * (s + 1)) + binom2(s + 1) + c1.exp;
            QArg argA = (x * y.inverse()).negated().shifted(FracExp(p * (s - r)));
            QArg argB = (x.pow(p) * y.pow(p)).shifted(FracExp(P * (r + s) + p * (1 + p)));
            QArg argD1 = (ny.pow(1 + p) * nx.inverse()).shifted(FracExp(P * r) + FracExp(p * (1 + p), 2));
            QArg argD2 = (nx.pow(1 + p) * ny.inverse()).shifted(FracExp(P * s) + FracExp(p * (1 + p), 2));
            for (const auto& [arg, mod] : {std::pair{argD1, FracExp(B)}, {argD2, FracExp(B)}})
                if (is_singular_theta_arg(arg, mod))
                    throw SingularSpecError("theta_p: singular denominator j(" + arg.str() +
                                            "; q^" + mod.str() + ")");
            FracSeries num = (J3 * jtheta(argA, FracExp(p * p), Oi)).truncated(Oi);
            num = (num * jtheta(argB, FracExp(B), Oi)).truncated(Oi);
            FracSeries den =
                (jtheta(argD1, FracExp(B), Oi) * jtheta(argD2, FracExp(B), Oi)).truncated(Oi);
            FracSeries quot = detail::theta_quotient(num, den, Oi);
            total = (total + quot.shifted(rat(c1.sign), ce)).truncated(O);
        }
    }
    return total;
}

// f_{1,p+1,1}(x,y,q) = g_{1,p+1,1}(x,y,q,-1,-1) + theta_p(x,y,q)/Jbar_{0,p(2+p)}.
inline FracSeries f1p1_expansion(long long p, const QArg& x, const QArg& y, FracExp O) {
    if (p < 1) throw std::invalid_argument("f1p1_expansion: p must be >= 1");
    for (FracExp slack : {FracExp(16), FracExp(48), FracExp(144)}) {
        FracExp Oi = O + slack;
        FracSeries g = g_1b1(x, y, p + 1, QArg::minus_one(), QArg::minus_one(), Oi);
        FracSeries th = theta_p_sum(p, x, y, Oi, slack + FracExp(16));
        FracSeries jb = big_j(BigJKind::Bar, 0, p * (2 + p),
                              Oi - std::min(FracExp(0), th.val().value_or(FracExp(0))) + FracExp(2));
        FracSeries r =
            g + (th * jb.inverse(Oi - std::min(FracExp(0), th.val().value_or(FracExp(0))))).truncated(Oi);
        if (!r.order() || *r.order() >= O) return r.truncated(O);
    }
    throw std::logic_error("f1p1_expansion: order shortfall");
}

// h_{n,n,1}(x,y,q,z1,z0) = j(x;q^n) m(-q^{n-1} y x^{-1}, q^{n-1}, z1)
//                        + j(y;q)   m(q^{binom(n,2)} x (-y)^{-n}, q^{n^2-n}, z0).
inline FracSeries h_nn1(long long n, const QArg& x, const QArg& y, const QArg& z1, const QArg& z0,
                        FracExp O) {
    if (n < 2) throw std::invalid_argument("h_nn1: n must be >= 2");
    AppellSpec s1((y * x.inverse()).negated().shifted(FracExp(n - 1)), FracExp(n - 1), z1);
    AppellSpec s0((x * y.negated().pow(-n)).shifted(binom2(n)), FracExp(n * n - n), z0);
    s1.validate();
    s0.validate();
    for (FracExp slack : {FracExp(8), FracExp(32), FracExp(128)}) {
        FracExp Oi = O + slack;
        FracSeries r = (jtheta(x, FracExp(n), Oi) * appell_m(s1, Oi)).truncated(Oi) +
                       (jtheta(y, FracExp(1), Oi) * appell_m(s0, Oi)).truncated(Oi);
        if (!r.order() || *r.order() >= O) return r.truncated(O);
    }
    throw std::logic_error("h_nn1: order shortfall");
}

// theta_n of the f_{n,n,1} expansion (n summands of theta quotients).
inline FracSeries theta_n_sum(long long n, const QArg& x, const QArg& y, FracExp O, FracExp pad) {
    const long long NN = n * (n - 1);
    const QArg ny = y.negated();
    const FracExp Oi = O + pad;
    const FracSeries J3 = detail::poch_core(1, NN, NN, Oi).pow(3).truncated(Oi);
    QArg argE1 = (x * ny.pow(-n)).shifted(binom2(n)).negated();
    QArg base_d2 = x.inverse() * y;
    if (is_singular_theta_arg(argE1, FracExp(NN)))
        throw SingularSpecError("theta_n: singular denominator j(" + argE1.str() + "; q^" +
                                FracExp(NN).str() + ")");
    FracSeries total = FracSeries::zero().truncated(O);
    FracSeries jE1 = jtheta(argE1, FracExp(NN), Oi);
    for (long long d = 0; d < n; ++d) {
        FracExp ce = FracExp(n - 1) * binom2(d + 1);
        QArg argA = y.shifted(FracExp((n - 1) * (d + 1)));
        QArg argB = (x * y.inverse()).negated().shifted(FracExp(NN - (n - 1) * (d + 1)));
        QArg argC = ny.pow(1 - n).shifted(binom2(n) + FracExp((n - 1) * (d + 1)));
        QArg argD2 = base_d2.shifted(FracExp((n - 1) * (d + 1)));
        if (is_singular_theta_arg(argD2, FracExp(NN)))
            throw SingularSpecError("theta_n: singular denominator j(" + argD2.str() + "; q^" +
                                    FracExp(NN).str() + ")");
        FracSeries num = (jtheta(argA, FracExp(n), Oi) * jtheta(argB, FracExp(NN), Oi)).truncated(Oi);
        num = (num * J3).truncated(Oi);
        num = (num * jtheta(argC, FracExp(NN), Oi)).truncated(Oi);
        FracSeries den = (jE1 * jtheta(argD2, FracExp(NN), Oi)).truncated(Oi);
        FracSeries quot = detail::theta_quotient(num, den, Oi);
        total = (total + quot.shifted(rat(1), ce)).truncated(O);
    }
    return total;
}

// f_{n,n,1}(x,y,q) = h_{n,n,1}(x,y,q,-1,-1)
//                    - theta_n(x,y,q) / (Jbar_{0,n-1} Jbar_{0,n^2-n}).
inline FracSeries fnn1_expansion(long long n, const QArg& x, const QArg& y, FracExp O) {
    if (n < 2) throw std::invalid_argument("fnn1_expansion: n must be >= 2");
    for (FracExp slack : {FracExp(16), FracExp(48), FracExp(144)}) {
        FracExp Oi = O + slack;
        FracSeries h = h_nn1(n, x, y, QArg::minus_one(), QArg::minus_one(), Oi);
        FracSeries th = theta_n_sum(n, x, y, Oi, slack + FracExp(16));
        FracExp inv_upto = Oi - std::min(FracExp(0), th.val().value_or(FracExp(0)));
        FracSeries jb = (big_j(BigJKind::Bar, 0, n - 1, inv_upto + FracExp(2)) *
                         big_j(BigJKind::Bar, 0, n * n - n, inv_upto + FracExp(2)))
                            .truncated(inv_upto + FracExp(2));
        FracSeries r = h - (th * jb.inverse(inv_upto)).truncated(Oi);
        if (!r.order() || *r.order() >= O) return r.truncated(O);
    }
    throw std::logic_error("fnn1_expansion: order shortfall");
}

}  // namespace heckeq

#endif
