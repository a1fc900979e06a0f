#pragma once

// Built-in manifold data. Elliptic surfaces E(n): chi = 12n, sigma = -8n,
// b_plus = 2n - 1, fiber F with F.F = 0 and genus 1, canonical class (n-2)F.
// Lattices: odd n uses (2n-1)<1> + (10n-1)<-1>; even n uses
// (2n-1)H + n(-E8). Every entry is checked against the usual
// characteristic-number relations when it is built.

#include <string>

#include "relsw/topology.hpp"

namespace relsw {

struct CatalogEntry {
    ClosedFourManifold manifold;
    HomologyClass fiber;      // F, genus 1, F.F = 0
    HomologyClass canonical;  // K
    std::string provenance;
};

namespace detail {

inline IntMatrix e8_cartan() {
    // Chain 0-1-2-3-4-5-6 with node 7 attached to node 4 (arms 4, 2, 1).
    IntMatrix m = IntMatrix::Zero(8, 8);
    for (int i = 0; i < 8; ++i) m(i, i) = 2;
    auto link = [&](int a, int b) { m(a, b) = m(b, a) = -1; };
    for (int i = 0; i < 6; ++i) link(i, i + 1);
    link(4, 7);
    return m;
}

inline IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
    Eigen::Index n = 0;
    for (const auto& b : blocks) n += b.rows();
    IntMatrix m = IntMatrix::Zero(n, n);
    Eigen::Index off = 0;
    for (const auto& b : blocks) {
        m.block(off, off, b.rows(), b.cols()) = b;
        off += b.rows();
    }
    return m;
}

}  // namespace detail

/// Validates the relations every entry must satisfy. Throws Schema on failure.
inline void validate_catalog_entry(const CatalogEntry& e) {
    const auto& X = e.manifold;
    const std::string& n = X.name();
    // Simply connected entries: b_2 = chi - 2.
    require(X.rank() == X.euler() - 2, ErrorKind::Schema, n + ": rank != chi - 2");
    require(mod_floor(X.euler() + X.signature(), 4) == 0, ErrorKind::Schema, n + ": chi + sigma not divisible by 4");
    require(X.square(e.canonical) == 2 * X.euler() + 3 * X.signature(), ErrorKind::Schema, n + ": K^2 != 2chi + 3sigma");
    require(X.is_characteristic(e.canonical), ErrorKind::Schema, n + ": K is not characteristic");
    require(X.square(e.fiber) == 0, ErrorKind::Schema, n + ": F.F != 0");
    require(X.pair(e.canonical, e.fiber) + X.square(e.fiber) == 0, ErrorKind::Schema, n + ": adjunction fails for F");
}

inline CatalogEntry elliptic_surface(Int n) {
    require(n >= 1, ErrorKind::Precondition, "E(n) needs n >= 1");
    const Int b_plus = 2 * n - 1;
    const Int b_minus = 10 * n - 1;
    const Int rank = b_plus + b_minus;
    IntMatrix form;
    IntVector fiber = IntVector::Zero(rank);
    if (n % 2 == 1) {
        form = IntMatrix::Zero(rank, rank);
        for (Int i = 0; i < rank; ++i) form(i, i) = i < b_plus ? 1 : -1;
        // Characteristic isotropic fiber: n coefficients 3 and n-1 coefficients 1
        // on the positive part, all ones on the negative part.
        for (Int i = 0; i < b_plus; ++i) fiber(i) = i < n ? 3 : 1;
        for (Int i = b_plus; i < rank; ++i) fiber(i) = 1;
    } else {
        std::vector<IntMatrix> blocks;
        IntMatrix h(2, 2);
        h << 0, 1, 1, 0;
        for (Int i = 0; i < b_plus; ++i) blocks.push_back(h);
        for (Int i = 0; i < n; ++i) blocks.push_back(-detail::e8_cartan());
        form = detail::block_diagonal(blocks);
        fiber(0) = 1;
    }
    CatalogEntry e{ClosedFourManifold("E(" + std::to_string(n) + ")", 12 * n, -8 * n, b_plus, form),
                   HomologyClass(fiber), HomologyClass((n - 2) * fiber),
                   "elliptic surface E(n): chi=12n, sigma=-8n, F.F=0, g(F)=1, K=(n-2)F"};
    validate_catalog_entry(e);
    return e;
}

/// CP^2 blown up r times: lattice <1> + r<-1>, chi = 3 + r, sigma = 1 - r.
inline ClosedFourManifold blown_up_plane(Int r) {
    require(r >= 0, ErrorKind::Precondition, "blow-up count must be non-negative");
    IntMatrix form = IntMatrix::Zero(r + 1, r + 1);
    form(0, 0) = 1;
    for (Int i = 1; i <= r; ++i) form(i, i) = -1;
    return ClosedFourManifold("CP2#" + std::to_string(r) + "-CP2", 3 + r, 1 - r, 1, form);
}

}  // namespace relsw
