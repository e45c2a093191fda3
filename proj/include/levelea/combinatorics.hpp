#pragma once

#include <stdexcept>

namespace levelea {

// Binomial coefficient as a double, computed multiplicatively.
// Every intermediate product is an integer below 2^53 for n <= 50,
// so the result is exact over the whole scale this library targets.
inline double binom(int n, int k) {
    if (n < 0) throw std::domain_error("binom: negative n");
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return c;
}

}  // namespace levelea
