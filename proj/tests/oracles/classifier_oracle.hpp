#pragma once

// Independent case analysis of the 3-dimensional moduli space on the circle
// bundle of degree ell over a genus-g surface, for a class of twisting degrees.
// Components are encoded as strings so the comparison does not depend on the
// library's types.

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline bool same_class(long long a, long long b, long long ell) {
    if (ell == 0) return a == b;
    long long diff = a - b;
    return diff % ell == 0;
}

/// ell != 0: residue in [0, |ell|); ell == 0: exact degree.
inline std::multiset<std::string> classify(long long g, long long ell, long long residue) {
    std::multiset<std::string> out;
    // Scan a wide window of twisting degrees and keep the irreducible ones.
    for (long long deg = -4 * g - 8; deg <= 6 * g + 8; ++deg) {
        if (!same_class(deg, residue, ell)) continue;
        const long long m = deg - (g - 1);
        const bool effective_both = deg >= 0 && (2 * g - 2 - deg) >= 0;
        if (!effective_both || m == 0) continue;
        const long long sym = m < 0 ? deg : 2 * g - 2 - deg;
        std::string csd = "0";
        if (ell != 0) {
            long long num = 4 * m * m, den = ell;
            if (den < 0) { num = -num; den = -den; }
            long long a = std::llabs(num), b = den;
            while (b) { long long t = a % b; a = b; b = t; }
            csd = std::to_string(num / a) + (den / a == 1 ? "" : "/" + std::to_string(den / a));
        }
        out.insert("irr m=" + std::to_string(m) + " sym=" + std::to_string(sym) + " csd=" + csd);
    }
    if (ell != 0) {
        // The reducible torus sits over the theta divisor when deg L = 2m is 0 mod ell.
        const long long m = residue - (g - 1);
        const bool theta = (2 * m) % ell == 0;
        out.insert(std::string("red T^") + std::to_string(2 * g) + (theta ? " theta" : ""));
    } else {
        out.insert(residue == g - 1 ? "red T^" + std::to_string(2 * g + 1) : std::string("red empty"));
    }
    return out;
}

inline unsigned long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
    return r;
}

/// Number of d-element subsets of n labelled points, by bitmask enumeration.
inline unsigned long long count_subsets(int n, int d) {
    unsigned long long c = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
        if (__builtin_popcount(mask) == d) ++c;
    return c;
}

}  // namespace oracle
