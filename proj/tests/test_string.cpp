#include <doctest.h>

#include <random>

#include "heckeq/string_functions.hpp"
#include "oracles.hpp"

using namespace heckeq;

namespace {

bool equal_upto(const FracSeries& a, const FracSeries& b, FracExp O) {
    Verdict v = a.equal_to_order(b, O);
    if (!v.equal)
        MESSAGE("first discrepancy at q^", v.exponent.str(), ": ", rat_str_pretty(v.lhs), " vs ",
                rat_str_pretty(v.rhs));
    return v.equal;
}

const long long kSuiteIndices[6][3] = {{2, 1, 1},  {4, 2, 0}, {4, 2, 2},
                                       {6, 5, 1},  {8, 6, 2}, {10, 9, 1}};

}  // namespace

TEST_CASE("normalization exponent values") {
    CHECK(s_exponent(StringIndex(1, 0, 0)) == FracExp(-1, 24));
    CHECK(s_exponent(StringIndex(2, 1, 1)) == FracExp(0));
    CHECK(s_exponent(StringIndex(6, 5, 1)) == FracExp(-25, 24));
    CHECK_THROWS_AS(StringIndex(2, 1, 2), std::invalid_argument);  // parity
    CHECK_THROWS_AS(StringIndex(2, 0, 4), std::invalid_argument);  // l > N
}

TEST_CASE("index reduction into range") {
    StringIndex r = reduced_index(StringIndex(3, 7, 1));
    CHECK(r.m == 1);
    StringIndex r2 = reduced_index(StringIndex(3, -1, 1));
    CHECK(r2.m == 1);
    StringIndex r3 = reduced_index(StringIndex(4, 2, 0));
    CHECK(r3.m == 2);
}

TEST_CASE("level one string function is the partition generating series") {
    const FracExp O(10);
    FracSeries c = string_c_direct(StringIndex(1, 0, 0), O);
    CHECK(*c.val() == FracExp(-1, 24));
    for (long long n = 0; n <= 8; ++n)
        CHECK(c.coeff(FracExp(-1, 24) + FracExp(n)) == rat(oracle::partition_count(n)));
}

TEST_CASE("level two matches the eta quotient") {
    const FracExp O(30);
    FracSeries c = string_c_direct(StringIndex(2, 1, 1), O);
    FracSeries e2 = eta(2, FracExp(34));
    FracSeries rhs = e2 * eta(1, FracExp(36)).pow(2).inverse(FracExp(33));
    CHECK(equal_upto(c, rhs.truncated(O), O));
}

TEST_CASE("multiplicities are nonnegative integers") {
    const FracExp O(20);
    for (const auto& t : kSuiteIndices) {
        StringIndex idx(t[0], t[1], t[2]);
        FracSeries c = string_c_direct(idx, O);
        FracSeries mult = c.shifted(rat(1), -s_exponent(idx));
        for (const auto& [e, co] : mult.terms()) {
            CHECK(e.is_integer());
            CHECK(e >= FracExp(0));
            CHECK(is_integer(co));
            CHECK(co > 0);
        }
        REQUIRE_FALSE(mult.is_zero());
    }
}

TEST_CASE("three evaluation methods agree") {
    const FracExp O(20);
    for (const auto& t : kSuiteIndices) {
        StringIndex idx(t[0], t[1], t[2]);
        FracSeries c = string_c_direct(idx, O);
        FracSeries s = string_s_hecke(idx, O);
        FracSeries k = string_kp_lattice(idx, O);
        CHECK(equal_upto(c, s, O));
        CHECK(equal_upto(c, k, O));
    }
    // and a few higher-order instances for the first two methods
    for (auto [N, m, l] : {std::tuple{1LL, 0LL, 0LL}, {6LL, 5LL, 1LL}, {10LL, 9LL, 1LL}}) {
        StringIndex idx(N, m, l);
        CHECK(equal_upto(string_c_direct(idx, FracExp(30)), string_s_hecke(idx, FracExp(30)),
                         FracExp(30)));
    }
}

TEST_CASE("classic symmetries of the hecke form") {
    const FracExp O(25);
    for (const auto& t : kSuiteIndices) {
        long long N = t[0], m = t[1], l = t[2];
        FracSeries base = string_s_hecke(StringIndex(N, m, l), O);
        CHECK(equal_upto(base, string_s_hecke(StringIndex(N, -m, l), O), O));
        CHECK(equal_upto(base, string_s_hecke(StringIndex(N, 2 * N - m, l), O), O));
        CHECK(equal_upto(base, string_s_hecke(StringIndex(N, N - m, N - l), O), O));
    }
}

TEST_CASE("splitting identity, both signs") {
    const FracExp O(25);
    const long long sets[6][3] = {{1, 1, 1}, {2, 0, 0}, {2, 2, 0},
                                  {3, 5, 1}, {4, 6, 2}, {5, 9, 1}};
    for (const auto& t : sets) {
        long long K = t[0], m = t[1], l = t[2];
        FracSeries cm = string_c_direct(StringIndex(2 * K, m, l), O);
        FracSeries cr = string_c_direct(StringIndex(2 * K, 2 * K - m, l), O);
        CHECK(equal_upto(cm + cr, split_rhs(K, m, l, 1, O), O));
        CHECK(equal_upto(cm - cr, split_rhs(K, m, l, -1, O), O));
    }
}

TEST_CASE("single-double-sum corollaries") {
    const FracExp O(30);
    // l = K family
    for (auto [K, m] : {std::tuple{1LL, 1LL}, {2LL, 0LL}, {2LL, 2LL}, {3LL, 1LL}}) {
        FracSeries lhs = string_c_direct(StringIndex(2 * K, m, K), O);
        CHECK(equal_upto(lhs, corollary_rhs(CorollaryKind::MaximalL, K, m, O), O));
    }
    // m = K family
    for (auto [K, l] : {std::tuple{1LL, 1LL}, {2LL, 0LL}, {2LL, 2LL}, {5LL, 5LL}}) {
        FracSeries lhs = string_c_direct(StringIndex(2 * K, K, l), O);
        CHECK(equal_upto(lhs, corollary_rhs(CorollaryKind::MiddleM, K, l, O), O));
    }
    CHECK_THROWS_AS(corollary_rhs(CorollaryKind::MaximalL, 2, 1, FracExp(10)),
                    std::invalid_argument);  // parity violation
}

TEST_CASE("double-sum disguise, fixed and random parameters") {
    const FracExp O(25);
    for (auto [K, d, e, sign] : {std::tuple{1LL, FracExp(1), FracExp(1), 1},
                                 {2LL, FracExp(2), FracExp(1), -1},
                                 {3LL, FracExp(4), FracExp(3), 1}}) {
        auto [lhs, rhs] = prop51_sides(K, d, e, sign, O);
        CHECK(equal_upto(lhs, rhs, O));
    }
    std::mt19937_64 rng(515151);
    for (int t = 0; t < 10; ++t) {
        long long K = 1 + static_cast<long long>(rng() % 4);
        FracExp d(static_cast<long long>(rng() % 13) - 6, 1 + static_cast<long long>(rng() % 2));
        FracExp e(static_cast<long long>(rng() % 13) - 6, 1 + static_cast<long long>(rng() % 2));
        for (int sign : {1, -1}) {
            auto [lhs, rhs] = prop51_sides(K, d, e, sign, O);
            CHECK(equal_upto(lhs, rhs, O));
        }
    }
}

TEST_CASE("lattice enumeration never visits the x = 0 boundary for suite indices") {
    // (l+1)/(2(N+2)) = 0 or 1/2 (mod 1) is impossible for 0 <= l <= N, so no
    // lattice point with x = 0 satisfies either congruence.
    for (const auto& t : kSuiteIndices) {
        FracExp cx(t[2] + 1, 2 * (t[0] + 2));
        CHECK_FALSE((cx).is_integer());
        CHECK_FALSE((cx - FracExp(1, 2)).is_integer());
        CHECK_FALSE((FracExp(1, 2) - cx).is_integer());
    }
}

TEST_CASE("hecke form is stable under recomputation at twice the order") {
    for (const auto& t : kSuiteIndices) {
        StringIndex idx(t[0], t[1], t[2]);
        FracSeries lo = string_s_hecke(idx, FracExp(12));
        FracSeries hi = string_s_hecke(idx, FracExp(24));
        CHECK(equal_upto(hi.truncated(FracExp(12)), lo, FracExp(12)));
    }
}
