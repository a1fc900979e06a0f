#pragma once

#include <vector>

#include "relsw/catalog.hpp"
#include "relsw/topology.hpp"

namespace fixtures {

using namespace relsw;

inline IntMatrix diagonal(const std::vector<Int>& d) {
    IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
    return m;
}

inline HomologyClass to_class(const std::vector<long long>& v) {
    IntVector c(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) c(static_cast<Eigen::Index>(i)) = v[i];
    return HomologyClass(c);
}

inline ClosedFourManifold from_oracle(const std::vector<std::vector<long long>>& Q, Int euler, Int signature,
                                      Int b_plus) {
    const auto r = static_cast<Eigen::Index>(Q.size());
    IntMatrix f(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j) f(i, j) = Q[i][j];
    return ClosedFourManifold("random", euler, signature, b_plus, f);
}

/// CP^2 # r (-CP^2).
inline ClosedFourManifold plane_blowup(Int r) { return blown_up_plane(r); }

/// Rank-one lattice <n>, n != 0, with chi = 3.
inline ClosedFourManifold rank_one(Int n) {
    IntMatrix f(1, 1);
    f << n;
    return ClosedFourManifold("<" + std::to_string(n) + ">", 3, n > 0 ? 1 : -1, n > 0 ? 1 : 0, f);
}

/// S^2 x S^2: hyperbolic lattice H, chi = 4, sigma = 0.
inline ClosedFourManifold hyperbolic() {
    IntMatrix f(2, 2);
    f << 0, 1, 1, 0;
    return ClosedFourManifold("S2xS2", 4, 0, 1, f);
}

/// A pair whose only relevant data is (g, Sigma.Sigma).
inline PairXSigma model_pair(Int g, Int self) {
    if (self == 0) return build_pair(hyperbolic(), HomologyClass{1, 0}, g, 1);
    return build_pair(rank_one(self), HomologyClass{1}, g, self > 0 ? 1 : 0);
}

}  // namespace fixtures
