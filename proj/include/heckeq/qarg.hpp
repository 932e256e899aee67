#ifndef HECKEQ_QARG_HPP
#define HECKEQ_QARG_HPP

#include <stdexcept>
#include <string>

#include "heckeq/frac_exp.hpp"
#include "heckeq/series.hpp"

namespace heckeq {

// A signed rational power of q: sign * q^exp with sign in {+1, -1}. This is
// the argument class of every theta/Appell/Hecke specialization in the suite.
struct QArg {
    int sign = 1;
    FracExp exp;

    QArg() = default;
    QArg(int s, FracExp e) : sign(s), exp(e) {
        if (s != 1 && s != -1) throw std::invalid_argument("QArg sign must be +-1");
    }

    static QArg q(FracExp e) { return QArg(1, e); }
    static QArg neg_q(FracExp e) { return QArg(-1, e); }
    static QArg one() { return QArg(1, FracExp(0)); }
    static QArg minus_one() { return QArg(-1, FracExp(0)); }

    QArg negated() const { return QArg(-sign, exp); }
    QArg inverse() const { return QArg(sign, -exp); }

    // (sign q^exp)^k for integer k; sign^k depends only on parity.
    QArg pow(long long k) const {
        int s = (sign == -1 && (k % 2 != 0)) ? -1 : 1;
        return QArg(s, exp * k);
    }

    friend QArg operator*(QArg a, QArg b) { return QArg(a.sign * b.sign, a.exp + b.exp); }

    // q^de * this.
    QArg shifted(FracExp de) const { return QArg(sign, exp + de); }

    FracSeries series() const { return FracSeries::monomial(rat(sign), exp); }

    friend bool operator==(QArg a, QArg b) { return a.sign == b.sign && a.exp == b.exp; }

    std::string str() const {
        std::string s = sign < 0 ? "-q" : "q";
        if (exp == FracExp(0)) return sign < 0 ? "-1" : "1";
        if (exp == FracExp(1)) return s;
        if (exp.is_integer()) return s + "^" + exp.str();
        return s + "^(" + exp.str() + ")";
    }
};

}  // namespace heckeq

#endif
