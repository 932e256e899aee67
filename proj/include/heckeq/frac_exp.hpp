#ifndef HECKEQ_FRAC_EXP_HPP
#define HECKEQ_FRAC_EXP_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace heckeq {

// Exact rational exponent of q: num/den, den >= 1, always stored reduced.
// Exponent magnitudes in this suite are small (|num| well below 2^40, den a
// few hundred), so int64 with 128-bit cross products is exact.
struct FracExp {
    long long num = 0;
    long long den = 1;

    constexpr FracExp() = default;

    FracExp(long long n, long long d) {
        if (d == 0) throw std::invalid_argument("FracExp: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        num = n;
        den = d;
    }

    // Intentional implicit conversion: integer orders/exponents are pervasive.
    FracExp(long long n) : num(n), den(1) {}  // NOLINT
    FracExp(int n) : num(n), den(1) {}        // NOLINT

    bool is_integer() const { return den == 1; }

    friend FracExp operator+(FracExp a, FracExp b) {
        return FracExp(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend FracExp operator-(FracExp a, FracExp b) {
        return FracExp(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    FracExp operator-() const {
        FracExp r;
        r.num = -num;
        r.den = den;
        return r;
    }
    friend FracExp operator*(FracExp a, FracExp b) {
        return FracExp(a.num * b.num, a.den * b.den);
    }
    friend FracExp operator*(long long k, FracExp a) { return FracExp(k * a.num, a.den); }
    friend FracExp operator*(FracExp a, long long k) { return k * a; }
    friend FracExp operator/(FracExp a, FracExp b) {
        if (b.num == 0) throw std::invalid_argument("FracExp: division by zero");
        return FracExp(a.num * b.den, a.den * b.num);
    }

    friend bool operator==(FracExp a, FracExp b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(FracExp a, FracExp b) { return !(a == b); }
    friend bool operator<(FracExp a, FracExp b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(FracExp a, FracExp b) { return b < a; }
    friend bool operator<=(FracExp a, FracExp b) { return !(b < a); }
    friend bool operator>=(FracExp a, FracExp b) { return !(a < b); }

    // Largest integer <= value.
    long long floor() const {
        long long q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    long long ceil() const { return -(-*this).floor(); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
    // Canonical "num/den" form used by the JSON report.
    std::string str_canonical() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// binom(n, 2) = n(n-1)/2 for any integer n.
inline FracExp binom2(long long n) { return FracExp(n * (n - 1), 2); }

}  // namespace heckeq

#endif
