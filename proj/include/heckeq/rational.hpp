#ifndef HECKEQ_RATIONAL_HPP
#define HECKEQ_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace heckeq {

// Exact rational coefficients. mpq_class does not canonicalize the (num, den)
// constructor, so construction goes through rat().
using Rat = mpq_class;

inline Rat rat(long long num, long long den = 1) {
    Rat r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Canonical "num/den" form, denominator always present ("5/1", "-1/24").
inline std::string rat_str(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Human form: "5", "-1/24".
inline std::string rat_str_pretty(const Rat& r) {
    if (is_integer(r)) return r.get_num().get_str();
    return rat_str(r);
}

}  // namespace heckeq

#endif
