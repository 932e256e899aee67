#ifndef HECKEQ_TESTS_ORACLES_HPP
#define HECKEQ_TESTS_ORACLES_HPP

// Test-only oracles, independent of the library's series pipeline.

#include <cstdint>
#include <vector>

namespace oracle {

// Number of partitions of n, by brute-force recursion over largest part.
inline long long partition_count(long long n, long long max_part) {
    if (n == 0) return 1;
    if (n < 0 || max_part == 0) return 0;
    return partition_count(n - max_part, max_part) + partition_count(n, max_part - 1);
}

inline long long partition_count(long long n) { return partition_count(n, n); }

// Coefficients of prod_{i=1}^{nfac} (1 - q^i) up to degree deg, by direct
// dense polynomial multiplication.
inline std::vector<long long> euler_product_coeffs(int nfac, int deg) {
    std::vector<long long> c(static_cast<size_t>(deg) + 1, 0);
    c[0] = 1;
    for (int i = 1; i <= nfac; ++i)
        for (int d = deg; d >= i; --d) c[static_cast<size_t>(d)] -= c[static_cast<size_t>(d - i)];
    return c;
}

}  // namespace oracle

#endif
