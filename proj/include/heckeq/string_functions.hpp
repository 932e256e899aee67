#ifndef HECKEQ_STRING_FUNCTIONS_HPP
#define HECKEQ_STRING_FUNCTIONS_HPP

#include <stdexcept>
#include <utility>

#include "heckeq/hecke.hpp"
#include "heckeq/theta.hpp"

namespace heckeq {

// Index (N, m, l) of the level-N string function C^N_{m,l}; m and l must have
// the same parity and 0 <= l <= N.
struct StringIndex {
    long long level;  // N
    long long m;
    long long l;

    StringIndex(long long N, long long m_, long long l_) : level(N), m(m_), l(l_) {
        if (N < 1) throw std::invalid_argument("StringIndex: level must be >= 1");
        if (l < 0 || l > N) throw std::invalid_argument("StringIndex: l must satisfy 0 <= l <= N");
        if (((m - l) % 2 + 2) % 2 != 0)
            throw std::invalid_argument("StringIndex: m and l must have equal parity");
    }
};

// Normalization exponent s(m,l,N) = -1/8 + (l+1)^2/(4(N+2)) - m^2/(4N).
inline FracExp s_exponent(const StringIndex& idx) {
    return FracExp(-1, 8) + FracExp((idx.l + 1) * (idx.l + 1), 4 * (idx.level + 2)) -
           FracExp(idx.m * idx.m, 4 * idx.level);
}

// Reduce m into [0, N] with the classic symmetries m -> -m, m -> 2N - m.
// Used by the CLI front end; the evaluators below take indices literally so
// the symmetry suite stays meaningful.
inline StringIndex reduced_index(StringIndex idx) {
    long long N = idx.level, m = idx.m;
    while (m < 0 || m > N) {
        if (m < 0)
            m = -m;
        else
            m = 2 * N - m;
    }
    return StringIndex(N, m, idx.l);
}

namespace detail {

// prod(1-q^i)^{-3} * (series), shifted by q^s: the common tail of the string
// function forms.
inline FracSeries string_normalize(const FracSeries& inner, FracExp s, FracExp O, FracExp Oi) {
    FracExp inv_upto = Oi - std::min(FracExp(0), inner.val().value_or(FracExp(0)));
    FracSeries J13 = poch_core(1, 1, 1, inv_upto + 2).pow(3).truncated(inv_upto + 2);
    return (inner * J13.inverse(inv_upto)).shifted(rat(1), s).truncated(O);
}

}  // namespace detail

// C^N_{m,l} by direct two-quadrant enumeration:
//   q^s/(q)_inf^3 { sum_{j>=1,k<=0} - sum_{j<=0,k>=1} }
//       (-1)^{k-j} q^{binom(k-j,2) - Njk + k(m-l)/2 + j(m+l)/2}.
// On both regions -Njk >= 0 and binom(k-j,2) grows quadratically, so the
// enumeration per coefficient is finite.
inline FracSeries string_c_direct(const StringIndex& idx, FracExp O) {
    const long long N = idx.level, m = idx.m, l = idx.l;
    const FracExp s = s_exponent(idx);
    const FracExp Oi = O - s + FracExp(4);
    FracSeries::TermMap acc;
    auto expo = [&](long long j, long long k) {
        return binom2(k - j) + FracExp(-N * j * k) + FracExp(k * (m - l), 2) +
               FracExp(j * (m + l), 2);
    };
    auto put = [&](long long j, long long k, int outer) {
        FracExp e = expo(j, k);
        if (e > Oi) return false;
        int c = outer * (((k - j) % 2 != 0) ? -1 : 1);
        auto [it, fresh] = acc.emplace(e, rat(c));
        if (!fresh) {
            it->second += rat(c);
            if (it->second == 0) acc.erase(it);
        }
        return true;
    };
    // Region j >= 1, k <= 0: for fixed j the exponent is an upward parabola
    // in k; across j the floor grows once past a margin of |m|+|l|+2.
    const long long jguard = 2 + (m < 0 ? -m : m) + (l < 0 ? -l : l);
    for (long long j = 1;; ++j) {
        bool any = false;
        for (long long k = 0;; --k) {
            if (put(j, k, 1))
                any = true;
            else if (-k > jguard + 2 * j * N + 2)
                break;
        }
        if (!any && j > jguard) break;
    }
    for (long long j = 0;; --j) {
        bool any = false;
        for (long long k = 1;; ++k) {
            if (put(j, k, -1))
                any = true;
            else if (k > jguard - 2 * j * N + 2)
                break;
        }
        if (!any && -j > jguard) break;
    }
    FracSeries inner = FracSeries::from_terms(std::move(acc), Oi);
    return detail::string_normalize(inner, s, O, Oi);
}

// C^N_{m,l} through the Hecke form
//   q^s/J_1^3 f_{1,1+N,1}(q^{1+(m+l)/2}, q^{1-(m-l)/2}, q).
inline FracSeries string_s_hecke(const StringIndex& idx, FracExp O) {
    const FracExp s = s_exponent(idx);
    const FracExp Oi = O - s + FracExp(4);
    DoubleSumParams p(1, 1 + idx.level, 1, QArg::q(FracExp(1) + FracExp(idx.m + idx.l, 2)),
                      QArg::q(FracExp(1) - FracExp(idx.m - idx.l, 2)));
    return detail::string_normalize(hecke_f(p, Oi), s, O, Oi);
}

// C^N_{m,l} as the Kac-Peterson lattice sum: 1/eta^3 times the sum of
// sg(x) q^{(N+2)x^2 - N y^2} over half-lattice points with -|x| < y <= |x|
// and (x,y) or (1/2-x, 1/2+y) in ((l+1)/(2(N+2)), m/(2N)) + Z^2. On the cone
// the form is >= 2x^2, which bounds the enumeration.
inline FracSeries string_kp_lattice(const StringIndex& idx, FracExp O) {
    const long long N = idx.level;
    const FracExp cx((idx.l + 1), 2 * (N + 2));
    const FracExp cy(idx.m, 2 * N);
    const FracExp Oi = O + FracExp(1, 8) + FracExp(4);
    FracSeries::TermMap acc;
    auto put = [&](FracExp x, FracExp y) {
        FracExp e = FracExp(N + 2) * x * x - FracExp(N) * y * y;
        if (e > Oi) return;
        int sg = x < FracExp(0) ? -1 : 1;
        auto [it, fresh] = acc.emplace(e, rat(sg));
        if (!fresh) {
            it->second += rat(sg);
            if (it->second == 0) acc.erase(it);
        }
    };
    auto scan = [&](FracExp x0, FracExp y0) {
        // x in x0 + Z; on the cone the exponent is >= 2x^2.
        for (long long t = 0;; ++t) {
            bool alive = false;
            for (FracExp x : {x0 + FracExp(t), x0 - FracExp(t + 1)}) {
                FracExp ax = x < FracExp(0) ? -x : x;
                if (FracExp(2) * ax * ax <= Oi) alive = true;
                // y in y0 + Z with -ax < y <= ax
                for (long long k = (FracExp(0) - ax - y0).ceil() - 1; y0 + FracExp(k) <= ax; ++k) {
                    FracExp y = y0 + FracExp(k);
                    if (FracExp(0) - ax < y && y <= ax) put(x, y);
                }
            }
            if (!alive) break;
        }
    };
    scan(cx, cy);
    scan(FracExp(1, 2) - cx, cy - FracExp(1, 2));
    FracSeries num = FracSeries::from_terms(std::move(acc), Oi);
    for (FracExp slack : {FracExp(4), FracExp(16), FracExp(64)}) {
        FracExp inv_upto = Oi + slack - std::min(FracExp(0), num.val().value_or(FracExp(0)));
        FracSeries e3 = eta(1, inv_upto + FracExp(1)).pow(3).truncated(inv_upto + FracExp(1));
        FracSeries r = num * e3.inverse(inv_upto);
        if (!r.order() || *r.order() >= O) return r.truncated(O);
    }
    throw std::logic_error("string_kp_lattice: order shortfall");
}

// Right side of the level-2K splitting identity:
// C^{2K}_{m,l} +- C^{2K}_{2K-m,l}
//   = q^{s(m,l,2K)}/J_1^3 ( f_{K+1,K+1,1}(+-q^{1+(K+l)/2}, q^{1+(m+l)/2}, q)
//     +- q^{(K-l)/2} f_{K+1,K+1,1}(+-q^{1+(3K-l)/2}, q^{1+K+(m-l)/2}, q) ).
inline FracSeries split_rhs(long long K, long long m, long long l, int sign, FracExp O) {
    if (K < 1 || sign * sign != 1) throw std::invalid_argument("split_rhs: bad parameters");
    if (((m - l) % 2 + 2) % 2 != 0)
        throw std::invalid_argument("split_rhs: m and l must have equal parity");
    const FracExp s = s_exponent(StringIndex(2 * K, m, l));
    const FracExp Oi = O - s + FracExp(4);
    DoubleSumParams p1(K + 1, K + 1, 1, QArg(sign, FracExp(1) + FracExp(K + l, 2)),
                       QArg::q(FracExp(1) + FracExp(m + l, 2)));
    DoubleSumParams p2(K + 1, K + 1, 1, QArg(sign, FracExp(1) + FracExp(3 * K - l, 2)),
                       QArg::q(FracExp(1 + K) + FracExp(m - l, 2)));
    FracSeries inner =
        hecke_f(p1, Oi) + hecke_f(p2, Oi - FracExp(K - l, 2)).shifted(rat(sign), FracExp(K - l, 2));
    return detail::string_normalize(inner.truncated(Oi), s, O, Oi);
}

enum class CorollaryKind {
    MaximalL,  // l = K: C^{2K}_{m,K} = q^s/J_1^3 f_{K+1,K+1,1}(q^{K+1}, q^{1+(m+K)/2}, q)
    MiddleM,   // m = K: C^{2K}_{K,l} = q^s/J_1^3 f_{K+1,K+1,1}(q^{1+(K+l)/2}, q^{1-(K-l)/2}, q)
};

inline FracSeries corollary_rhs(CorollaryKind which, long long K, long long ml, FracExp O) {
    if (K < 1) throw std::invalid_argument("corollary_rhs: K must be >= 1");
    if (which == CorollaryKind::MaximalL) {
        long long m = ml;
        if (((m - K) % 2 + 2) % 2 != 0)
            throw std::invalid_argument("corollary_rhs: needs m = K (mod 2)");
        const FracExp s = s_exponent(StringIndex(2 * K, m, K));
        const FracExp Oi = O - s + FracExp(4);
        DoubleSumParams p(K + 1, K + 1, 1, QArg::q(FracExp(K + 1)),
                          QArg::q(FracExp(1) + FracExp(m + K, 2)));
        return detail::string_normalize(hecke_f(p, Oi), s, O, Oi);
    }
    long long l = ml;
    if (((K - l) % 2 + 2) % 2 != 0)
        throw std::invalid_argument("corollary_rhs: needs K = l (mod 2)");
    const FracExp s = s_exponent(StringIndex(2 * K, K, l));
    const FracExp Oi = O - s + FracExp(4);
    DoubleSumParams p(K + 1, K + 1, 1, QArg::q(FracExp(1) + FracExp(K + l, 2)),
                      QArg::q(FracExp(1) - FracExp(K - l, 2)));
    return detail::string_normalize(hecke_f(p, Oi), s, O, Oi);
}

// Both sides of the f_{1,2K+1,1} <-> f_{K+1,K+1,1} disguise:
//   LHS = f_{1,2K+1,1}(q^d,q^e,q) +- q^{(K+d+e)/2} f_{1,2K+1,1}(q^{1+K+d},q^{1+K+e},q)
//   RHS = f_{K+1,K+1,1}(-+q^{(K+d+e)/2},q^d,q)
//         -+ q^{(K+2-d-e)/2} f_{K+1,K+1,1}(-+q^{2+(3K-d-e)/2},q^{K+2-e},q).
inline std::pair<FracSeries, FracSeries> prop51_sides(long long K, FracExp d, FracExp e, int sign,
                                                      FracExp O) {
    if (K < 1 || sign * sign != 1) throw std::invalid_argument("prop51_sides: bad parameters");
    const FracExp half = (FracExp(K) + d + e) * FracExp(1, 2);
    DoubleSumParams l1(1, 2 * K + 1, 1, QArg::q(d), QArg::q(e));
    DoubleSumParams l2(1, 2 * K + 1, 1, QArg::q(FracExp(1 + K) + d), QArg::q(FracExp(1 + K) + e));
    FracSeries lhs = hecke_f(l1, O) + hecke_f(l2, O - half).shifted(rat(sign), half);
    const FracExp half2 = (FracExp(K + 2) - d - e) * FracExp(1, 2);
    DoubleSumParams r1(K + 1, K + 1, 1, QArg(-sign, half), QArg::q(d));
    DoubleSumParams r2(K + 1, K + 1, 1, QArg(-sign, FracExp(2) + (FracExp(3 * K) - d - e) * FracExp(1, 2)),
                       QArg::q(FracExp(K + 2) - e));
    FracSeries rhs = hecke_f(r1, O) + hecke_f(r2, O - half2).shifted(rat(-sign), half2);
    return {lhs.truncated(O), rhs.truncated(O)};
}

}  // namespace heckeq

#endif
