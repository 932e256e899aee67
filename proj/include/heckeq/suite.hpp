#ifndef HECKEQ_SUITE_HPP
#define HECKEQ_SUITE_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "heckeq/expr.hpp"

namespace heckeq {

struct UnknownSuiteError : std::runtime_error {
    explicit UnknownSuiteError(const std::string& name)
        : std::runtime_error("unknown suite: " + name) {}
};

struct Discrepancy {
    FracExp exponent;
    Rat lhs_coeff, rhs_coeff;
};

struct IdentityReport {
    std::string identity_id;
    std::string lhs, rhs;
    FracExp order;
    enum class Status { Verified, Failed, Error } status = Status::Verified;
    std::optional<Discrepancy> first_discrepancy;
    std::string error_message;
    long long runtime_ms = 0;
};

// A coefficient perturbation applied to the left side of one identity;
// exercises the failure path end to end.
struct FaultSpec {
    std::string identity_id;
    FracExp exponent;
    Rat delta = rat(1);
};

struct SuiteOptions {
    std::optional<FracExp> order;  // overrides every member's default
    std::uint64_t seed = 0x51ab5eedULL;
    std::optional<FaultSpec> fault;
};

using SeriesFn = std::function<FracSeries(FracExp)>;

struct SuiteMember {
    std::string id;
    std::string lhs_text, rhs_text;
    FracExp default_order;
    // When a side has no closure its text is parsed and evaluated.
    SeriesFn lhs_fn, rhs_fn;
};

namespace detail {

// Deterministic generator: avoids std::uniform_int_distribution so member
// lists are reproducible across standard libraries.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    long long below(long long n) { return static_cast<long long>(eng() % static_cast<std::uint64_t>(n)); }
    long long range(long long lo, long long hi) { return lo + below(hi - lo + 1); }
    int sign() { return below(2) == 0 ? 1 : -1; }
    FracExp fexp(long long mag, std::initializer_list<long long> dens) {
        long long den = *(dens.begin() + below(static_cast<long long>(dens.size())));
        return FracExp(range(-mag * den, mag * den), den);
    }
    QArg qarg(long long mag, std::initializer_list<long long> dens) {
        return QArg(sign(), fexp(mag, dens));
    }
};

inline std::string q_text(const QArg& a) { return a.str(); }

inline std::string mono_text(int sgn, FracExp e) {  // "q^(e)" / "-q^(e)" factors
    return QArg(sgn, e).str();
}

inline std::string jt_text(const QArg& x, FracExp M) {
    return "jt(" + q_text(x) + "," + M.str() + ")";
}

inline std::string am_text(const QArg& x, FracExp M, const QArg& z) {
    return "am(" + q_text(x) + "," + M.str() + "," + q_text(z) + ")";
}

inline std::string f_text(long long a, long long b, long long c, const QArg& x, const QArg& y) {
    return "f(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "; " +
           q_text(x) + ", " + q_text(y) + ")";
}

inline SuiteMember mem(std::string id, std::string lhs, std::string rhs, FracExp O,
                       SeriesFn lf = nullptr, SeriesFn rf = nullptr) {
    return SuiteMember{std::move(id), std::move(lhs), std::move(rhs), O, std::move(lf),
                       std::move(rf)};
}

// ---- suite builders ------------------------------------------------------

inline std::vector<SuiteMember> suite_notation() {
    const FracExp O(60);
    return {
        mem("notation/Jb01-is-2Jb14", "Jb(0,1)", "2*Jb(1,4)", O),
        mem("notation/Jb01-product", "Jb(0,1)", "2*Jp(2)^2/Jp(1)", O),
        mem("notation/Jb12-product", "Jb(1,2)", "Jp(2)^5/(Jp(1)^2*Jp(4)^2)", O),
        mem("notation/J12-product", "J(1,2)", "Jp(1)^2/Jp(2)", O),
        mem("notation/Jb13-product", "Jb(1,3)", "Jp(2)*Jp(3)^2/(Jp(1)*Jp(6))", O),
        mem("notation/J14-product", "J(1,4)", "Jp(1)*Jp(4)/Jp(2)", O),
        mem("notation/J16-product", "J(1,6)", "Jp(1)*Jp(6)^2/(Jp(2)*Jp(3))", O),
        mem("notation/Jb16-product", "Jb(1,6)", "Jp(2)^2*Jp(3)*Jp(12)/(Jp(1)*Jp(4)*Jp(6))", O),
        mem("notation/J15-J25", "J(1,5)*J(2,5)", "Jp(1)*Jp(5)", O),
        mem("notation/J610-split", "J(6,10)", "J(6,30)*J(16,30)*J(26,30)*Jp(10)/Jp(30)^3", O),
        mem("notation/J315-split", "J(3,15)", "J(3,30)*J(18,30)*Jp(15)/Jp(30)^2", O),
    };
}

inline bool any_singular(std::initializer_list<std::pair<QArg, FracExp>> args) {
    for (const auto& [x, M] : args)
        if (is_singular_theta_arg(x, M)) return true;
    return false;
}

inline std::vector<SuiteMember> suite_theta_id(std::uint64_t seed) {
    std::vector<SuiteMember> out;
    const FracExp O(40);
    Rng rng(seed ^ 0x7e7aULL);

    // sum form == product form, 50 instances
    for (int i = 0; i < 50; ++i) {
        QArg x = rng.qarg(3, {1, 2, 3, 4});
        FracExp M(rng.range(1, 3));
        SeriesFn sum_form = [x, M](FracExp Ot) { return jtheta(x, M, ThetaForm::Sum, Ot); };
        out.push_back(mem("theta-id/sum-vs-product[" + std::to_string(i) + "]",
                          "jtheta_sum(" + q_text(x) + "," + M.str() + ")", jt_text(x, M), O,
                          sum_form, nullptr));
    }
    // j-elliptic for n in {-2,-1,1,2}
    for (int i = 0; i < 7; ++i) {
        QArg x = rng.qarg(3, {2, 3, 4});
        FracExp M(rng.range(1, 3));
        for (long long n : {-2, -1, 1, 2}) {
            FracExp pe = -(M * binom2(n)) - n * x.exp;
            int pc = ((n % 2 != 0) ? -1 : 1) * ((x.sign == -1 && n % 2 != 0) ? -1 : 1);
            out.push_back(mem(
                "theta-id/j-elliptic[" + std::to_string(i) + ",n=" + std::to_string(n) + "]",
                jt_text(x.shifted(n * M), M), mono_text(pc, pe) + "*" + jt_text(x, M), O));
        }
    }
    // j(x;q) = j(q/x;q)
    for (int i = 0; i < 25; ++i) {
        QArg x = rng.qarg(3, {2, 3, 4});
        FracExp M(rng.range(1, 2));
        out.push_back(mem("theta-id/inversion[" + std::to_string(i) + "]", jt_text(x, M),
                          jt_text(QArg(x.sign, M - x.exp), M), O));
    }
    // j-split for m = 2, 3
    for (int i = 0; i < 26; ++i) {
        long long msplit = 2 + (i % 2);
        QArg z = rng.qarg(3, {2, 3, 4});
        std::string rhs;
        for (long long k = 0; k < msplit; ++k) {
            QArg zk = z.pow(k);
            int cs = ((k % 2 != 0) ? -1 : 1) * zk.sign;
            // inner argument (-1)^{m+1} q^{binom(m,2)+mk} z^m at base q^{m^2}
            QArg inner(((msplit + 1) % 2 != 0 ? -1 : 1) *
                           ((z.sign == -1 && msplit % 2 != 0) ? -1 : 1),
                       binom2(msplit) + FracExp(msplit * k) + msplit * z.exp);
            if (k) rhs += " + ";
            rhs += mono_text(cs, binom2(k) + zk.exp) + "*" +
                   jt_text(inner, FracExp(msplit * msplit));
        }
        out.push_back(mem("theta-id/j-split[m=" + std::to_string(msplit) + "," +
                              std::to_string(i) + "]",
                          jt_text(z, FracExp(1)), rhs, O));
    }
    // (1.10) for n = 2, 3
    for (int i = 0; i < 26; ++i) {
        long long n = 2 + (i % 2);
        QArg x = rng.qarg(3, {2, 3, 4});
        std::string rhs = "Jp(1)";
        for (long long t = 0; t < n; ++t) rhs += "*" + jt_text(x.shifted(t), FracExp(n));
        rhs += "/Jp(" + std::to_string(n) + ")^" + std::to_string(n);
        out.push_back(mem("theta-id/base-split[n=" + std::to_string(n) + "," + std::to_string(i) +
                              "]",
                          jt_text(x, FracExp(1)), rhs, O));
    }
    // (1.11): j(x;-q) = j(x;q^2) j(-qx;q^2)/J_{1,4}
    for (int i = 0; i < 25; ++i) {
        QArg x = rng.qarg(3, {2, 3, 4});
        SeriesFn lhs = [x](FracExp Ot) { return jtheta_minus_base(x, FracExp(1), Ot); };
        out.push_back(mem("theta-id/negative-base[" + std::to_string(i) + "]",
                          "jtheta_minus_base(" + q_text(x) + ",1)",
                          jt_text(x, FracExp(2)) + "*" + jt_text(x.negated().shifted(FracExp(1)), FracExp(2)) +
                              "/J(1,4)",
                          O, lhs, nullptr));
    }
    // (1.12) for n = 2: j(x^2;q^2) = J_2 j(x;q) j(-x;q)/J_1^2
    for (int i = 0; i < 25; ++i) {
        QArg x = rng.qarg(3, {2, 3, 4});
        out.push_back(mem("theta-id/square-split[" + std::to_string(i) + "]",
                          jt_text(QArg(1, FracExp(2) * x.exp), FracExp(2)),
                          "Jp(2)*" + jt_text(x, FracExp(1)) + "*" + jt_text(x.negated(), FracExp(1)) +
                              "/Jp(1)^2",
                          O));
    }
    // Weierstrass three-term relation
    for (int i = 0; i < 25;) {
        QArg a = rng.qarg(1, {2, 3, 4, 5}), b = rng.qarg(1, {2, 3, 4, 5}),
             c = rng.qarg(1, {2, 3, 4, 5}), d = rng.qarg(1, {2, 3, 4, 5});
        auto pr = [&](const QArg& u, const QArg& v) { return u * v.inverse(); };
        std::vector<QArg> args = {a * c, pr(a, c), b * d, pr(b, d), a * d, pr(a, d),
                                  b * c, pr(b, c), a * b, pr(a, b), c * d, pr(c, d)};
        bool sing = false;
        for (const auto& ar : args) sing = sing || is_singular_theta_arg(ar, FracExp(1));
        if (sing) continue;
        auto j4 = [&](int i0) {
            std::string s = jt_text(args[i0], FracExp(1));
            for (int t = 1; t < 4; ++t) s += "*" + jt_text(args[i0 + t], FracExp(1));
            return s;
        };
        QArg bc = pr(b, c);
        out.push_back(mem("theta-id/weierstrass[" + std::to_string(i) + "]", j4(0),
                          j4(4) + " + " + q_text(bc) + "*" + j4(8), O));
        ++i;
    }
    // H1Thm1.2A/B
    for (int i = 0; i < 25; ++i) {
        QArg x = rng.qarg(2, {2, 3, 4, 5}), y = rng.qarg(2, {2, 3, 4, 5});
        std::string jl = jt_text(x.negated(), 1) + "*" + jt_text(y, 1);
        std::string jr = jt_text(x, 1) + "*" + jt_text(y.negated(), 1);
        QArg two_x = x;  // coefficient 2x
        out.push_back(mem("theta-id/split-odd[" + std::to_string(i) + "]", jl + " - " + jr,
                          "2*" + q_text(two_x) + "*" + jt_text(y * x.inverse(), 2) + "*" +
                              jt_text((x * y).shifted(1), 2),
                          O));
        out.push_back(mem("theta-id/split-even[" + std::to_string(i) + "]", jl + " + " + jr,
                          "2*" + jt_text(x * y, 2) + "*" + jt_text((y * x.inverse()).shifted(1), 2),
                          O));
    }
    // Lemma: two concrete eta-quotient identities used by the f661 evaluation
    const std::string bracket =
        "(J(6,60)*Jb(5,30)*Jb(10,30)/(Jb(0,5)*Jb(0,30)*Jb(3,30)))*(Jp(6)*Jp(60)/Jp(30)^4)";
    out.push_back(mem("theta-id/f661-lemma-A",
                      "Jp(30)^3*J(3,6)/(Jb(0,5)*J(3,30)) - 2*" + bracket +
                          "*J(9,30)*J(21,30)*J(15,30)*J(5,30)",
                      "0", FracExp(60)));
    out.push_back(mem("theta-id/f661-lemma-B",
                      "4*" + bracket + "*J(16,30)*J(20,30)*J(26,30)*J(10,30)", "J(4,10)*J(3,15)",
                      FracExp(60)));
    return out;
}

inline std::vector<SuiteMember> suite_appell(std::uint64_t seed) {
    std::vector<SuiteMember> out;
    const FracExp O(40);
    Rng rng(seed ^ 0xA99eULL);
    out.push_back(mem("appell/eval-half", "am(q,2,-1)", "1/2", O));
    out.push_back(mem("appell/eval-zero", "am(-1,2,q)", "0", O));
    out.push_back(
        mem("appell/sixth-order-phi", "f(1,2,1; q, -q)", "2*Jb(1,4)*am(q,3,-1)", O));

    const long long bases[] = {1, 2, 3, 5, 12};
    auto draw_spec = [&](auto&& extra_ok) {
        while (true) {
            FracExp M(bases[rng.below(5)]);
            QArg x = rng.qarg(2, {1, 2, 3, 4});
            QArg z = rng.qarg(2, {1, 2, 3, 4});
            if (is_singular_theta_arg(z, M) || is_singular_theta_arg(x * z, M)) continue;
            if (!extra_ok(x, M, z)) continue;
            return std::tuple{x, M, z};
        }
    };
    for (int i = 0; i < 25; ++i) {  // m(x,q,z) = m(x,q,qz)
        auto [x, M, z] = draw_spec([](const QArg& x, FracExp M, const QArg& z) {
            return !is_singular_theta_arg(z.shifted(M), M) &&
                   !is_singular_theta_arg(x * z.shifted(M), M);
        });
        out.push_back(mem("appell/z-shift[" + std::to_string(i) + "]", am_text(x, M, z),
                          am_text(x, M, z.shifted(M)), O));
    }
    for (int i = 0; i < 25; ++i) {  // m(x,q,z) = x^{-1} m(x^{-1},q,z^{-1})
        auto [x, M, z] = draw_spec([](const QArg&, FracExp, const QArg&) { return true; });
        out.push_back(mem("appell/flip[" + std::to_string(i) + "]", am_text(x, M, z),
                          mono_text(x.sign, -x.exp) + "*" + am_text(x.inverse(), M, z.inverse()),
                          O));
    }
    for (int i = 0; i < 25; ++i) {  // m(qx,q,z) = 1 - x m(x,q,z)
        auto [x, M, z] = draw_spec([](const QArg&, FracExp, const QArg&) { return true; });
        out.push_back(mem("appell/x-shift[" + std::to_string(i) + "]",
                          am_text(x.shifted(M), M, z),
                          std::string("1 ") + (x.sign > 0 ? "-" : "+") + " " +
                              mono_text(1, x.exp) + "*" + am_text(x, M, z),
                          O));
    }
    for (int i = 0; i < 25; ++i) {  // m(x,q,z) = m(x,q,x^{-1}z^{-1})
        auto [x, M, z] = draw_spec([](const QArg& x, FracExp M, const QArg& z) {
            return !is_singular_theta_arg((x * z).inverse(), M);
        });
        out.push_back(mem("appell/z-reflect[" + std::to_string(i) + "]", am_text(x, M, z),
                          am_text(x, M, (x * z).inverse()), O));
    }
    for (int i = 0; i < 25; ++i) {  // z-translation correction
        auto [x, M, z0] = draw_spec([](const QArg&, FracExp, const QArg&) { return true; });
        QArg z1 = QArg(z0.sign * rng.sign(), z0.exp + rng.fexp(1, {1, 2}));
        if (is_singular_theta_arg(z1, M) || is_singular_theta_arg(x * z1, M) || z1 == z0 ||
            is_singular_theta_arg(x * z0, M) || is_singular_theta_arg(z1 * z0.inverse(), M) ||
            is_singular_theta_arg(x * z0 * z1, M)) {
            --i;
            continue;
        }
        QArg xq = x;
        FracExp Mq = M;
        QArg z0q = z0, z1q = z1;
        SeriesFn rhs = [xq, Mq, z0q, z1q](FracExp Ot) {
            return changing_z_correction(xq, Mq, z0q, z1q, Ot);
        };
        std::string Ms = Mq.str();
        std::string rtext = q_text(z0) + "*Jp(" + Ms + ")^3*" + jt_text(z1 * z0.inverse(), M) +
                            "*" + jt_text(x * z0 * z1, M) + "/(" + jt_text(z0, M) + "*" +
                            jt_text(z1, M) + "*" + jt_text(x * z0, M) + "*" + jt_text(x * z1, M) +
                            ")";
        out.push_back(mem("appell/z-translation[" + std::to_string(i) + "]",
                          am_text(x, M, z1) + " - " + am_text(x, M, z0), rtext, O, nullptr, rhs));
    }
    return out;
}

inline std::vector<SuiteMember> suite_hecke_fe(std::uint64_t seed) {
    std::vector<SuiteMember> out;
    const FracExp O(30);
    Rng rng(seed ^ 0xF1FeULL);
    auto draw_params = [&] {
        while (true) {
            long long a = rng.range(1, 3), c = rng.range(1, 2);
            long long b = rng.range(2, 4);
            if (b * b <= a * c) continue;  // indefinite type only
            return DoubleSumParams(a, b, c, rng.qarg(5, {1, 2}), rng.qarg(5, {1, 2}));
        }
    };
    for (int i = 0; i < 25; ++i) {
        DoubleSumParams p = draw_params();
        long long R = rng.range(-2, 2), S = rng.range(-2, 2);
        SeriesFn rhs = [p, R, S](FracExp Ot) { return f_shift_rhs(p, R, S, Ot); };
        out.push_back(mem("hecke-fe/index-shift[" + std::to_string(i) + "]",
                          f_text(p.a, p.b, p.c, p.x, p.y),
                          "f_shift_rhs(" + std::to_string(p.a) + "," + std::to_string(p.b) + "," +
                              std::to_string(p.c) + "; " + q_text(p.x) + ", " + q_text(p.y) +
                              "; R=" + std::to_string(R) + ", S=" + std::to_string(S) + ")",
                          O, nullptr, rhs));
    }
    for (int i = 0; i < 25; ++i) {
        DoubleSumParams p = draw_params();
        SeriesFn rhs = [p](FracExp Ot) { return f_flip_rhs(p, Ot); };
        out.push_back(mem("hecke-fe/flip[" + std::to_string(i) + "]",
                          f_text(p.a, p.b, p.c, p.x, p.y),
                          "f_flip_rhs(" + std::to_string(p.a) + "," + std::to_string(p.b) + "," +
                              std::to_string(p.c) + "; " + q_text(p.x) + ", " + q_text(p.y) + ")",
                          O, nullptr, rhs));
    }
    for (int i = 0; i < 25; ++i) {  // f = -y f(q^b x, q^c y) + j(x;q^a)
        DoubleSumParams p = draw_params();
        out.push_back(mem("hecke-fe/step-y[" + std::to_string(i) + "]",
                          f_text(p.a, p.b, p.c, p.x, p.y),
                          q_text(p.y.negated()) + "*" +
                              f_text(p.a, p.b, p.c, p.x.shifted(p.b), p.y.shifted(p.c)) + " + " +
                              jt_text(p.x, FracExp(p.a)),
                          O));
    }
    for (int i = 0; i < 25; ++i) {  // f = -x f(q^a x, q^b y) + j(y;q^c)
        DoubleSumParams p = draw_params();
        out.push_back(mem("hecke-fe/step-x[" + std::to_string(i) + "]",
                          f_text(p.a, p.b, p.c, p.x, p.y),
                          q_text(p.x.negated()) + "*" +
                              f_text(p.a, p.b, p.c, p.x.shifted(p.a), p.y.shifted(p.b)) + " + " +
                              jt_text(p.y, FracExp(p.c)),
                          O));
    }
    for (int i = 0; i < 25; ++i) {  // x <-> y symmetry of f_{1,1+N,1}
        long long N = rng.range(1, 4);
        QArg x = rng.qarg(5, {1, 2}), y = rng.qarg(5, {1, 2});
        out.push_back(mem("hecke-fe/symmetry[" + std::to_string(i) + "]",
                          f_text(1, 1 + N, 1, x, y), f_text(1, 1 + N, 1, y, x), O));
    }
    return out;
}

inline std::vector<SuiteMember> suite_expansion(std::uint64_t seed) {
    std::vector<SuiteMember> out;
    const FracExp O(25);
    Rng rng(seed ^ 0xE4BA0ULL);
    for (long long p = 1; p <= 3; ++p) {
        for (int i = 0; i < 10;) {
            QArg x(rng.sign(), FracExp(rng.range(-3, 5)));
            QArg y(rng.sign(), FracExp(rng.range(-3, 5)));
            try {
                f1p1_expansion(p, x, y, FracExp(2));
            } catch (const SingularSpecError&) {
                continue;
            }
            SeriesFn rhs = [p, x, y](FracExp Ot) { return f1p1_expansion(p, x, y, Ot); };
            out.push_back(mem("expansion/f1p1[p=" + std::to_string(p) + "," + std::to_string(i) +
                                  "]",
                              f_text(1, p + 1, 1, x, y),
                              "f1p1_expansion(" + std::to_string(p) + "; " + q_text(x) + ", " +
                                  q_text(y) + ")",
                              O, nullptr, rhs));
            ++i;
        }
    }
    for (long long n = 2; n <= 6; ++n) {
        for (int i = 0; i < 10;) {
            QArg x(rng.sign(), FracExp(rng.range(-3, 5)));
            QArg y(rng.sign(), FracExp(rng.range(-3, 5)));
            try {
                fnn1_expansion(n, x, y, FracExp(2));
            } catch (const SingularSpecError&) {
                continue;
            }
            SeriesFn rhs = [n, x, y](FracExp Ot) { return fnn1_expansion(n, x, y, Ot); };
            out.push_back(mem("expansion/fnn1[n=" + std::to_string(n) + "," + std::to_string(i) +
                                  "]",
                              f_text(n, n, 1, x, y),
                              "fnn1_expansion(" + std::to_string(n) + "; " + q_text(x) + ", " +
                                  q_text(y) + ")",
                              O, nullptr, rhs));
            ++i;
        }
    }
    const FracExp O17(50);
    out.push_back(mem("expansion/f551-eval", "f(5,5,1; q^5, q^4)", "Jp(2)*Jp(10)", O17));
    out.push_back(mem("expansion/f441-eval",
                      "f(4,4,1; -q^5, q^3) - q^(-1)*f(4,4,1; -q^3, q)", "-q^(-1)*Jp(1)^2", O17));
    out.push_back(mem("expansion/f331-eval",
                      "f(3,3,1; -q^4, q^3) - q^(-1)*f(3,3,1; -q^2, q)", "-q^(-1)*Jp(1)*J(1,2)",
                      O17));
    return out;
}

inline std::vector<SuiteMember> suite_string_sym() {
    std::vector<SuiteMember> out;
    const FracExp O(25);
    const long long idx[6][3] = {{2, 1, 1}, {4, 2, 0}, {4, 2, 2},
                                 {6, 5, 1}, {8, 6, 2}, {10, 9, 1}};
    for (const auto& t : idx) {
        std::string N = std::to_string(t[0]), m = std::to_string(t[1]), l = std::to_string(t[2]);
        std::string base = "S(" + N + "," + m + "," + l + ")";
        std::string tag = N + "," + m + "," + l;
        out.push_back(mem("string-sym/negate-m[" + tag + "]", base,
                          "S(" + N + "," + std::to_string(-t[1]) + "," + l + ")", O));
        out.push_back(mem("string-sym/reflect-2N[" + tag + "]", base,
                          "S(" + N + "," + std::to_string(2 * t[0] - t[1]) + "," + l + ")", O));
        out.push_back(mem("string-sym/complement[" + tag + "]", base,
                          "S(" + N + "," + std::to_string(t[0] - t[1]) + "," +
                              std::to_string(t[0] - t[2]) + ")",
                          O));
    }
    return out;
}

inline std::vector<SuiteMember> suite_cross() {
    std::vector<SuiteMember> out;
    const FracExp O(20);
    const long long idx[6][3] = {{2, 1, 1}, {4, 2, 0}, {4, 2, 2},
                                 {6, 5, 1}, {8, 6, 2}, {10, 9, 1}};
    for (const auto& t : idx) {
        std::string args = std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                           std::to_string(t[2]);
        out.push_back(mem("cross/direct-vs-hecke[" + args + "]", "C(" + args + ")",
                          "S(" + args + ")", O));
        out.push_back(mem("cross/direct-vs-lattice[" + args + "]", "C(" + args + ")",
                          "KPL(" + args + ")", O));
    }
    return out;
}

inline std::vector<SuiteMember> suite_kp_hecke() {
    const FracExp O(60);
    return {
        mem("kp-hecke/level1", "f(1,2,1; q, q)", "Jp(1)^2", O),
        mem("kp-hecke/level2", "f(2,2,1; q^2, q)", "Jp(1)*Jp(2)", O),
        mem("kp-hecke/level4A", "q^(-1)*f(3,3,1; q^2, 1)", "Jp(1)*Jb(6,24)", O),
        mem("kp-hecke/level4B", "f(3,3,1; -q^2, q) - q*f(3,3,1; -q^4, q^3)", "Jp(1)*J(1,2)", O),
        mem("kp-hecke/level6A", "f(4,4,1; q^4, q^3)", "Jp(2)*J(3,12)", O),
        mem("kp-hecke/level6B", "f(4,4,1; q^3, q^2) + q*f(4,4,1; q^5, q^4)", "Jp(2)*J(6,12)", O),
        mem("kp-hecke/level6C", "f(4,4,1; -q^3, q^2) - q*f(4,4,1; -q^5, q^4)", "Jp(1)^2", O),
        mem("kp-hecke/level8A", "f(5,5,1; q^5, q^4)", "Jp(2)*Jp(10)", O),
        mem("kp-hecke/level8B", "f(5,5,1; -q^4, q^3) - q*f(5,5,1; -q^6, q^5)", "J(1,2)*J(8,20)",
            O),
        mem("kp-hecke/level10A", "q^(-1)*f(6,6,1; q^5, 1)", "Jp(2)*Jb(5,20)", O),
        mem("kp-hecke/level10B", "f(6,6,1; q^6, q^4)", "J(4,10)*J(3,15)", O),
        mem("kp-hecke/level10C", "f(6,6,1; -q^4, q^2) - q^2*f(6,6,1; -q^8, q^6)",
            "Jp(1)*Jp(2)*Jp(20)/J(4,20)", O),
        mem("kp-hecke/level10B-wide", "f(1,11,1; q^4, q^3)", "J(4,10)*J(3,15)", O),
    };
}

inline std::vector<SuiteMember> suite_kp_eta() {
    const FracExp O(40);
    return {
        mem("kp-eta/level1", "C(1,0,0)", "eta(1)^-1", O),
        mem("kp-eta/level2", "C(2,1,1)", "eta(1)^-2*eta(2)", O),
        mem("kp-eta/level4A", "C(4,2,0)", "eta(1)^-2*eta(6)^-1*eta(12)^2", O),
        mem("kp-eta/level4B", "C(4,0,0) - C(4,4,0)", "eta(2)^-1", O),
        mem("kp-eta/level6A", "C(6,1,3)", "eta(1)^-3*eta(2)*eta(3)*eta(6)^-1*eta(12)", O),
        mem("kp-eta/level6B", "C(6,1,1) + C(6,5,1)", "eta(1)^-3*eta(2)*eta(6)^2*eta(12)^-1", O),
        mem("kp-eta/level6C", "C(6,1,1) - C(6,5,1)", "eta(1)^-1", O),
        mem("kp-eta/level8A", "C(8,2,4)", "eta(1)^-3*eta(2)*eta(10)", O),
        mem("kp-eta/level8B", "C(8,2,2) - C(8,6,2)", "eta(1)^-1*eta(2)^-1*q^(1/10)*rp(4,5,1,4,1)",
            O),
        mem("kp-eta/level10A", "C(10,5,3)", "eta(1)^-3*eta(2)*eta(5)^-1*eta(10)^2", O),
        mem("kp-eta/level10B", "C(10,1,5)", "eta(1)^-3*q^(29/40)*rp(2,5,1,4,1)*rp(3,5,2,3,1)", O),
        mem("kp-eta/level10C", "C(10,1,1) - C(10,9,1)",
            "eta(1)^-2*eta(2)*q^(-1/15)*rp(4,5,0,2,3,-1)", O),
    };
}

inline std::vector<SuiteMember> suite_main_thm(std::uint64_t seed) {
    std::vector<SuiteMember> out;
    const FracExp O(25);
    const long long sets[6][3] = {{1, 1, 1}, {2, 0, 0}, {2, 2, 0},
                                  {3, 5, 1}, {4, 6, 2}, {5, 9, 1}};
    for (const auto& t : sets) {
        long long K = t[0], m = t[1], l = t[2];
        for (int sign : {1, -1}) {
            std::string lhs = "C(" + std::to_string(2 * K) + "," + std::to_string(m) + "," +
                              std::to_string(l) + ") " + (sign > 0 ? "+" : "-") + " C(" +
                              std::to_string(2 * K) + "," + std::to_string(2 * K - m) + "," +
                              std::to_string(l) + ")";
            FracExp s = s_exponent(StringIndex(2 * K, m, l));
            QArg x1(sign, FracExp(1) + FracExp(K + l, 2));
            QArg y1(1, FracExp(1) + FracExp(m + l, 2));
            QArg x2(sign, FracExp(1) + FracExp(3 * K - l, 2));
            QArg y2(1, FracExp(1 + K) + FracExp(m - l, 2));
            std::string rhs = "q^(" + s.str_canonical() + ")/Jp(1)^3*(" +
                              f_text(K + 1, K + 1, 1, x1, y1) + " " + (sign > 0 ? "+" : "-") +
                              " " + mono_text(1, FracExp(K - l, 2)) + "*" +
                              f_text(K + 1, K + 1, 1, x2, y2) + ")";
            SeriesFn rf = [K, m, l, sign](FracExp Ot) { return split_rhs(K, m, l, sign, Ot); };
            out.push_back(mem("main-thm/split[K=" + std::to_string(K) + ",m=" + std::to_string(m) +
                                  ",l=" + std::to_string(l) + "," + (sign > 0 ? "+" : "-") + "]",
                              lhs, rhs, O, nullptr, rf));
        }
    }
    const long long cor2[6][2] = {{1, 1}, {2, 0}, {2, 2}, {3, 1}, {4, 2}, {5, 3}};
    for (const auto& t : cor2) {
        long long K = t[0], m = t[1];
        SeriesFn rf = [K, m](FracExp Ot) {
            return corollary_rhs(CorollaryKind::MaximalL, K, m, Ot);
        };
        out.push_back(mem(
            "main-thm/corollary-lK[K=" + std::to_string(K) + ",m=" + std::to_string(m) + "]",
            "C(" + std::to_string(2 * K) + "," + std::to_string(m) + "," + std::to_string(K) + ")",
            "q^(" + s_exponent(StringIndex(2 * K, m, K)).str_canonical() + ")/Jp(1)^3*" +
                f_text(K + 1, K + 1, 1, QArg::q(FracExp(K + 1)),
                       QArg::q(FracExp(1) + FracExp(m + K, 2))),
            O, nullptr, rf));
    }
    const long long cor3[6][2] = {{1, 1}, {2, 0}, {2, 2}, {3, 1}, {4, 2}, {5, 5}};
    for (const auto& t : cor3) {
        long long K = t[0], l = t[1];
        SeriesFn rf = [K, l](FracExp Ot) { return corollary_rhs(CorollaryKind::MiddleM, K, l, Ot); };
        out.push_back(mem(
            "main-thm/corollary-mK[K=" + std::to_string(K) + ",l=" + std::to_string(l) + "]",
            "C(" + std::to_string(2 * K) + "," + std::to_string(K) + "," + std::to_string(l) + ")",
            "q^(" + s_exponent(StringIndex(2 * K, K, l)).str_canonical() + ")/Jp(1)^3*" +
                f_text(K + 1, K + 1, 1, QArg::q(FracExp(1) + FracExp(K + l, 2)),
                       QArg::q(FracExp(1) - FracExp(K - l, 2))),
            O, nullptr, rf));
    }
    // Proposition: f_{1,2K+1,1} pairs versus f_{K+1,K+1,1} pairs, both signs.
    Rng rng(seed ^ 0x9B0BULL);
    for (int i = 0; i < 10; ++i) {
        long long K = rng.range(1, 4);
        FracExp d = rng.fexp(3, {1, 2}), e = rng.fexp(3, {1, 2});
        for (int sign : {1, -1}) {
            SeriesFn lf = [K, d, e, sign](FracExp Ot) {
                return prop51_sides(K, d, e, sign, Ot).first;
            };
            SeriesFn rf = [K, d, e, sign](FracExp Ot) {
                return prop51_sides(K, d, e, sign, Ot).second;
            };
            FracExp half = (FracExp(K) + d + e) * FracExp(1, 2);
            FracExp half2 = (FracExp(K + 2) - d - e) * FracExp(1, 2);
            std::string lhs = f_text(1, 2 * K + 1, 1, QArg::q(d), QArg::q(e)) + " " +
                              (sign > 0 ? "+" : "-") + " " + mono_text(1, half) + "*" +
                              f_text(1, 2 * K + 1, 1, QArg::q(FracExp(1 + K) + d),
                                     QArg::q(FracExp(1 + K) + e));
            std::string rhs =
                f_text(K + 1, K + 1, 1, QArg(-sign, half), QArg::q(d)) + " " +
                (sign > 0 ? "-" : "+") + " " + mono_text(1, half2) + "*" +
                f_text(K + 1, K + 1, 1,
                       QArg(-sign, FracExp(2) + (FracExp(3 * K) - d - e) * FracExp(1, 2)),
                       QArg::q(FracExp(K + 2) - e));
            out.push_back(mem("main-thm/disguise[" + std::to_string(i) + ",K=" +
                                  std::to_string(K) + "," + (sign > 0 ? "+" : "-") + "]",
                              lhs, rhs, O, lf, rf));
        }
    }
    return out;
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "notation", "theta-id", "appell",   "hecke-fe", "expansion",
        "string-sym", "cross",  "kp-hecke", "kp-eta",   "main-thm",
    };
    return names;
}

inline std::vector<SuiteMember> suite_members(const std::string& name, std::uint64_t seed) {
    if (name == "notation") return detail::suite_notation();
    if (name == "theta-id") return detail::suite_theta_id(seed);
    if (name == "appell") return detail::suite_appell(seed);
    if (name == "hecke-fe") return detail::suite_hecke_fe(seed);
    if (name == "expansion") return detail::suite_expansion(seed);
    if (name == "string-sym") return detail::suite_string_sym();
    if (name == "cross") return detail::suite_cross();
    if (name == "kp-hecke") return detail::suite_kp_hecke();
    if (name == "kp-eta") return detail::suite_kp_eta();
    if (name == "main-thm") return detail::suite_main_thm(seed);
    if (name == "all") {
        std::vector<SuiteMember> out;
        for (const auto& n : suite_names()) {
            auto ms = suite_members(n, seed);
            out.insert(out.end(), std::make_move_iterator(ms.begin()),
                       std::make_move_iterator(ms.end()));
        }
        return out;
    }
    throw UnknownSuiteError(name);
}

inline std::vector<IdentityReport> run_suite(const std::string& name, const SuiteOptions& opt) {
    std::vector<IdentityReport> out;
    for (const SuiteMember& m : suite_members(name, opt.seed)) {
        IdentityReport rep;
        rep.identity_id = m.id;
        rep.lhs = m.lhs_text;
        rep.rhs = m.rhs_text;
        FracExp O = opt.order.value_or(m.default_order);
        rep.order = O;
        auto t0 = std::chrono::steady_clock::now();
        try {
            FracSeries lhs = m.lhs_fn ? m.lhs_fn(O).truncated(O) : eval_to_order(m.lhs_text, O);
            FracSeries rhs = m.rhs_fn ? m.rhs_fn(O).truncated(O) : eval_to_order(m.rhs_text, O);
            if (opt.fault && opt.fault->identity_id == m.id)
                lhs = lhs + FracSeries::monomial(opt.fault->delta, opt.fault->exponent);
            Verdict v = lhs.equal_to_order(rhs, O);
            if (v.equal) {
                rep.status = IdentityReport::Status::Verified;
            } else {
                rep.status = IdentityReport::Status::Failed;
                rep.first_discrepancy = Discrepancy{v.exponent, v.lhs, v.rhs};
            }
        } catch (const std::exception& ex) {
            rep.status = IdentityReport::Status::Error;
            rep.error_message = ex.what();
        }
        rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        out.push_back(std::move(rep));
    }
    return out;
}

enum class ReportFormat { Json, Text };

inline std::string status_str(IdentityReport::Status s) {
    switch (s) {
        case IdentityReport::Status::Verified:
            return "verified";
        case IdentityReport::Status::Failed:
            return "failed";
        default:
            return "error";
    }
}

inline std::string emit_report(const std::vector<IdentityReport>& reports, ReportFormat fmt) {
    if (fmt == ReportFormat::Json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) {
            nlohmann::json o;
            o["identity_id"] = r.identity_id;
            o["lhs"] = r.lhs;
            o["rhs"] = r.rhs;
            o["order"] = r.order.str_canonical();
            o["status"] = status_str(r.status);
            if (r.first_discrepancy) {
                o["first_discrepancy"] = {
                    {"exponent", r.first_discrepancy->exponent.str_canonical()},
                    {"lhs_coeff", rat_str(r.first_discrepancy->lhs_coeff)},
                    {"rhs_coeff", rat_str(r.first_discrepancy->rhs_coeff)},
                };
            } else {
                o["first_discrepancy"] = nullptr;
            }
            o["runtime_ms"] = r.runtime_ms;
            arr.push_back(std::move(o));
        }
        return arr.dump(2) + "\n";
    }
    std::size_t wid = 8;
    for (const auto& r : reports) wid = std::max(wid, r.identity_id.size());
    std::ostringstream os;
    for (const auto& r : reports) {
        os << std::left << std::setw(static_cast<int>(wid) + 2) << r.identity_id
           << std::setw(10) << status_str(r.status) << "order " << std::setw(8) << r.order.str()
           << std::setw(10) << (std::to_string(r.runtime_ms) + " ms");
        if (r.first_discrepancy)
            os << "  first discrepancy at q^" << r.first_discrepancy->exponent.str() << ": "
               << rat_str_pretty(r.first_discrepancy->lhs_coeff) << " vs "
               << rat_str_pretty(r.first_discrepancy->rhs_coeff);
        if (!r.error_message.empty()) os << "  " << r.error_message;
        os << "\n";
    }
    return os.str();
}

// 0 when everything verified, 1 on any failure, 2 on any error.
inline int reports_exit_code(const std::vector<IdentityReport>& reports) {
    int code = 0;
    for (const auto& r : reports) {
        if (r.status == IdentityReport::Status::Error) return 2;
        if (r.status == IdentityReport::Status::Failed) code = 1;
    }
    return code;
}

}  // namespace heckeq

#endif
