#pragma once

// Spin^c structures on the logarithmic tangent bundle TX(-log Sigma),
// recorded through c_1(L) and the half-degree m = deg(L|Sigma)/2.

#include <optional>
#include <string>

#include "relsw/topology.hpp"

namespace relsw {

/// A spin^c structure on TX(-log Sigma). Besides c_1(L) it caches the scalars
/// of the pair that the degree/xi formulas need, so those formulas can be
/// evaluated from the structure alone.
struct LogSpinc {
    HomologyClass c1L;                     // Poincare dual of c_1(L)
    Rational m{0};                         // deg(L|Sigma) / 2, exact
    Int genus = 0;                         // g(Sigma)
    Int sigma_self = 0;                    // Sigma.Sigma
    std::optional<HomologyClass> twisting;  // e, when built from a twisting class
};

inline LogSpinc make_log_spinc(const PairXSigma& pair, HomologyClass c1L) {
    pair.manifold().check_member(c1L);
    LogSpinc s;
    s.m = Rational(pair.manifold().pair(c1L, pair.sigma_class()), 2);
    s.c1L = std::move(c1L);
    s.genus = pair.genus();
    s.sigma_self = pair.sigma_self();
    return s;
}

/// Twist of the relatively canonical structure by E with PD(c_1(E)) = e.
/// The canonical structure has c_1 equal to minus the logarithmic canonical
/// class K_X + Sigma, so c_1(L) = -(K_X + Sigma) + 2e.
inline LogSpinc log_spinc_from_twisting(const PairXSigma& pair, const HomologyClass& canonical,
                                        const HomologyClass& twisting) {
    LogSpinc s = make_log_spinc(pair, -(canonical + pair.sigma_class()) + 2 * twisting);
    s.twisting = twisting;
    return s;
}

inline Rational abs_rational(const Rational& r) { return r < 0 ? -r : r; }

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

/// d(s) = (g - 1) - |m|. Negative values signal empty moduli.
inline Rational degree_along_sigma(const LogSpinc& s) {
    return Rational(s.genus - 1) - abs_rational(s.m);
}

/// deg(E|Sigma) = m + (g - 1): the degree of the twisting bundle on Sigma.
inline Rational twisting_degree(const LogSpinc& s) { return s.m + Rational(s.genus - 1); }

/// Two twisting degrees pull back to the same class on Y iff they agree mod l
/// (l != 0), or are equal (l = 0).
inline bool pullback_equivalent(Int d1, Int d2, Int ell) {
    if (ell == 0) return d1 == d2;
    return mod_floor(d1 - d2, ell) == 0;
}

struct PullbackClassOnY {
    CircleBundle bundle;
    Int degree_residue = 0;  // deg(E|Sigma) mod l, or the exact degree when l = 0

    std::optional<Int> torsion_k;  // k in [0, |l|) when l != 0
};

inline Int torsion_class_k(Int m_representative, Int ell) {
    require(ell != 0, ErrorKind::Precondition, "torsion class needs l != 0 (H^2(Y) is torsion-free for l = 0)");
    return mod_floor(m_representative, ell);
}

inline PullbackClassOnY pullback_class(const CircleBundle& Y, Int twisting_degree_value) {
    PullbackClassOnY c;
    c.bundle = Y;
    if (Y.degree == 0) {
        c.degree_residue = twisting_degree_value;
    } else {
        c.degree_residue = mod_floor(twisting_degree_value, Y.degree);
        c.torsion_k = torsion_class_k(twisting_degree_value - (Y.base_genus - 1), Y.degree);
    }
    return c;
}

struct GysinH2 {
    Int free_rank = 0;
    Int torsion_order = 0;  // 0 means no torsion summand
};

/// H^2(Y;Z) = Z^{2g} + Z/l for l != 0, and Z^{2g+1} for the product bundle.
inline GysinH2 gysin_h2(const CircleBundle& Y) {
    if (Y.degree == 0) return {2 * Y.base_genus + 1, 0};
    return {2 * Y.base_genus, abs_int(Y.degree)};
}

/// Total Chern class truncated at real degree 4: 1 + c1 + c2, with c2
/// recorded as the number <c2, [X]>.
struct ClassPolynomial {
    HomologyClass c1;
    Int c2 = 0;
};

/// (1 + a1 + a2)(1 + b1 + b2) truncated at degree 4.
inline ClassPolynomial multiply(const ClosedFourManifold& X, const ClassPolynomial& a, const ClassPolynomial& b) {
    return {a.c1 + b.c1, a.c2 + b.c2 + X.pair(a.c1, b.c1)};
}

/// c(TX(-log Sigma)) = c(TX) / (1 + PD(Sigma)).
inline ClassPolynomial log_chern_total(const PairXSigma& pair, const ClassPolynomial& cTX) {
    const auto& X = pair.manifold();
    const auto& S = pair.sigma_class();
    return {cTX.c1 - S, cTX.c2 - X.pair(cTX.c1, S) + pair.sigma_self()};
}

}  // namespace relsw
