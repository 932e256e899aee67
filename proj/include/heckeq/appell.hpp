#ifndef HECKEQ_APPELL_HPP
#define HECKEQ_APPELL_HPP

#include <stdexcept>
#include <string>

#include "heckeq/theta.hpp"

namespace heckeq {

struct SingularSpecError : std::runtime_error {
    explicit SingularSpecError(const std::string& what) : std::runtime_error(what) {}
};

// Arguments of the Appell-Lerch sum m(x, q^M, z). Genericity: neither z nor
// xz may be an integral power of the base q^M.
struct AppellSpec {
    QArg x;
    FracExp base;  // modulus M, base q^M
    QArg z;

    AppellSpec(QArg x_, FracExp M, QArg z_) : x(x_), base(M), z(z_) {
        if (!(FracExp(0) < M)) throw std::invalid_argument("AppellSpec: base must be positive");
    }

    void validate() const {
        if (is_singular_theta_arg(z, base))
            throw SingularSpecError("appell spec singular: z = " + z.str() +
                                    " is an integral power of q^" + base.str());
        if (is_singular_theta_arg(x * z, base))
            throw SingularSpecError("appell spec singular: x*z = " + (x * z).str() +
                                    " is an integral power of q^" + base.str());
    }
};

// m(x, q, z) = (1/j(z;q)) sum_r (-1)^r q^{binom(r,2)} z^r / (1 - q^{r-1} x z),
// with q -> q^M. Writing q^{M(r-1)} x z = sigma q^w, the factor expands as
//   w > 0:  sum_{k>=0} sigma^k q^{wk}
//   w = 0:  1/(1 - sigma) = 1/2          (sigma = -1; sigma = +1 is a pole)
//   w < 0:  -sum_{k>=1} sigma^k q^{-wk}
// The r-sum stops once the least attainable exponent exceeds O on both tails;
// the bound is monotone there (see the tail conditions below).
inline FracSeries appell_m(const AppellSpec& spec, FracExp O) {
    spec.validate();
    const FracExp M = spec.base;
    const FracExp xi = spec.x.exp, ze = spec.z.exp;
    const int sig = spec.x.sign * spec.z.sign;

    FracSeries::TermMap acc;
    auto term_floor = [&](long long r) {  // least exponent the r-term can reach
        FracExp E = M * binom2(r) + r * ze;
        FracExp w = M * (r - 1) + xi + ze;
        return w < FracExp(0) ? E - w : E;
    };
    auto add_term = [&](long long r) {
        FracExp E = M * binom2(r) + r * ze;
        FracExp w = M * (r - 1) + xi + ze;
        int sr = ((r % 2 != 0) ? -1 : 1) * ((spec.z.sign == -1 && (r % 2 != 0)) ? -1 : 1);
        auto put = [&](FracExp e, int c) {
            auto [it, fresh] = acc.emplace(e, rat(c));
            if (!fresh) it->second += rat(c);
        };
        if (w > FracExp(0)) {
            for (long long k = 0; E + k * w <= O; ++k)
                put(E + k * w, sr * ((sig == -1 && (k % 2 != 0)) ? -1 : 1));
        } else if (w == FracExp(0)) {
            // sigma = +1 would be a pole; excluded by validate().
            auto [it, fresh] = acc.emplace(E, rat(sr) / 2);
            if (!fresh) it->second += rat(sr) / 2;
        } else {
            for (long long k = 1; E - k * w <= O; ++k)
                put(E - k * w, -sr * ((sig == -1 && (k % 2 != 0)) ? -1 : 1));
        }
    };
    // Positive tail: once w_r > 0 and E_{r+1} - E_r = M r + ze > 0, the floor
    // only grows with r.
    for (long long r = 0;; ++r) {
        if (term_floor(r) <= O)
            add_term(r);
        else if (M * (r - 1) + xi + ze > FracExp(0) && M * r + ze > FracExp(0))
            break;
    }
    // Negative tail: for w_r < 0 the floor is M binom(r-1,2) + (r-1) ze - xi,
    // which grows as r decreases once M (r-2) + ze < 0.
    for (long long r = -1;; --r) {
        if (term_floor(r) <= O)
            add_term(r);
        else if (M * (r - 1) + xi + ze < FracExp(0) && M * (r - 2) + ze < FracExp(0))
            break;
    }
    FracSeries total = FracSeries::from_terms(std::move(acc), O);
    if (total.is_zero()) return total;

    FracExp vtot = *total.val();
    FracExp inv_upto = O - std::min(FracExp(0), vtot);
    // val(j(z; q^M)) <= 0 always, and inverse() needs j known to inv_upto + 2|val|.
    FracSeries jz = jtheta(spec.z, M, inv_upto + FracExp(2));
    // jz cannot vanish (validate checked z), but its computed order must cover:
    FracExp need = inv_upto + FracExp(2) - 2 * *jz.val();
    if (need > inv_upto + FracExp(2)) jz = jtheta(spec.z, M, need);
    return (total * jz.inverse(inv_upto)).truncated(O);
}

// Right-hand side of the z-translation identity:
// m(x,q,z1) - m(x,q,z0) = z0 J1^3 j(z1/z0;q) j(x z0 z1;q)
//                         / (j(z0;q) j(z1;q) j(x z0;q) j(x z1;q)),  q -> q^M.
inline FracSeries changing_z_correction(const QArg& x, FracExp M, const QArg& z0, const QArg& z1,
                                        FracExp O) {
    AppellSpec(x, M, z0).validate();
    AppellSpec(x, M, z1).validate();
    QArg z1dz0 = z1 * z0.inverse();
    if (z1dz0 == QArg::one()) return FracSeries::zero();  // j(1; q^M) = 0
    for (const QArg& a : {x * z0, x * z1})
        if (is_singular_theta_arg(a, M))
            throw SingularSpecError("changing_z_correction: singular denominator j(" + a.str() +
                                    "; q^" + M.str() + ")");
    // Numerator/denominator valuations are bounded; pad and retry on shortfall.
    for (FracExp slack : {FracExp(8), FracExp(32), FracExp(128)}) {
        FracExp Oi = O + slack;
        // J_1^3 of the identity's base, i.e. prod(1 - q^{Mi})^3 here.
        FracSeries num = detail::poch_core(1, M, M, Oi).pow(3).truncated(Oi);
        num = (num * jtheta(z1dz0, M, Oi)).truncated(Oi);
        num = (num * jtheta(x * z0 * z1, M, Oi)).truncated(Oi);
        FracSeries den = (jtheta(z0, M, Oi) * jtheta(z1, M, Oi)).truncated(Oi);
        den = (den * jtheta(x * z0, M, Oi)).truncated(Oi);
        den = (den * jtheta(x * z1, M, Oi)).truncated(Oi);
        FracExp inv_upto = Oi - std::min(FracExp(0), *num.val());
        FracSeries r = (num * den.inverse(inv_upto)).shifted(rat(z0.sign), z0.exp);
        if (!r.order() || *r.order() >= O) return r.truncated(O);
    }
    throw std::logic_error("changing_z_correction: order shortfall");
}

}  // namespace heckeq

#endif
