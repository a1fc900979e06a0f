#pragma once

// Exact dimension and xi-invariant formulas for moduli spaces on X - Sigma.
// Everything here is integer/rational arithmetic; no floating point.

#include <optional>
#include <string>

#include "relsw/spinc.hpp"

namespace relsw {

namespace detail {

inline Int divide_by_four(Int numerator, const std::string& what) {
    require(mod_floor(numerator, 4) == 0, ErrorKind::NonCharacteristic,
            "non-characteristic input: " + what + " numerator " + std::to_string(numerator) +
                " is not divisible by 4");
    return numerator / 4;
}

inline Int to_integer(const Rational& r, ErrorKind kind, const std::string& what) {
    require(is_integer(r), kind, what + " evaluates to the non-integer " + std::to_string(r.numerator()) + "/" +
                                     std::to_string(r.denominator()));
    return r.numerator();
}

}  // namespace detail

/// (c1^2 - 2 chi(X - Sigma) - 3 sigma(X - Sigma)) / 4, the part of every
/// cylindrical-end dimension formula that does not involve xi.
inline Rational complement_index_term(const PairXSigma& pair, const HomologyClass& c1L) {
    const Int c1sq = pair.manifold().square(c1L);
    return Rational(c1sq - 2 * pair.euler_complement() - 3 * pair.signature_complement(), 4);
}

/// xi for the unperturbed main component: deg(E|Sigma) + (Sigma.Sigma - 3 sign(Sigma.Sigma)) / 4.
inline Rational xi_compact(const LogSpinc& s) {
    return twisting_degree(s) + Rational(s.sigma_self - 3 * sign_of(s.sigma_self), 4);
}

/// xi for adapted perturbations: (Sigma.Sigma - 3 sign(Sigma.Sigma)) / 4,
/// independent of the twisting.
inline Rational xi_adapted(const PairXSigma& pair) {
    return Rational(pair.sigma_self() - 3 * pair.epsilon(), 4);
}

/// Closed-manifold dimension (c1^2 - 2 chi - 3 sigma) / 4.
inline Int dim_classic_closed(const ClosedFourManifold& X, const HomologyClass& c1L) {
    return detail::divide_by_four(X.square(c1L) - 2 * X.euler() - 3 * X.signature(), "closed dimension");
}

inline Int dim_classic_closed(Int c1_square, Int euler, Int signature) {
    return detail::divide_by_four(c1_square - 2 * euler - 3 * signature, "closed dimension");
}

/// ((c1(L) + Sigma)^2 - 2 chi(X) - 3 sigma(X)) / 4, evaluated topologically.
inline Int dim_main_topological(const PairXSigma& pair, const LogSpinc& s) {
    const auto& X = pair.manifold();
    const HomologyClass shifted = s.c1L + pair.sigma_class();
    return detail::divide_by_four(X.square(shifted) - 2 * X.euler() - 3 * X.signature(), "main dimension");
}

/// The same dimension assembled from the complement: index term plus xi.
inline Rational dim_main_xi_route(const PairXSigma& pair, const LogSpinc& s) {
    return complement_index_term(pair, s.c1L) + xi_compact(s);
}

/// Dimension of the main component; cross-checks the xi route.
inline Int dim_main(const PairXSigma& pair, const LogSpinc& s) {
    const Int d = dim_main_topological(pair, s);
    require(dim_main_xi_route(pair, s) == Rational(d), ErrorKind::Internal,
            "main dimension: topological and xi routes disagree");
    return d;
}

/// Dimension for adapted perturbations: dim_main - d(s).
inline Int dim_adapted(const PairXSigma& pair, const LogSpinc& s) {
    const Rational d = Rational(dim_main(pair, s)) - degree_along_sigma(s);
    const Int out = detail::to_integer(d, ErrorKind::NonCharacteristic, "adapted dimension");
    if (s.m <= 0) {
        // On the deg(L|Sigma) <= 0 branch the xi route applies verbatim.
        require(complement_index_term(pair, s.c1L) + xi_adapted(pair) == Rational(out), ErrorKind::Internal,
                "adapted dimension: topological and xi routes disagree");
    }
    return out;
}

/// Symplectic shortcuts for c1(L) = -(K + Sigma) + 2e: e.e - K.e and e.e - (K + Sigma).e.
inline Int symplectic_dim_main(const PairXSigma& pair, const HomologyClass& canonical, const HomologyClass& e) {
    const auto& X = pair.manifold();
    return X.square(e) - X.pair(canonical, e);
}

inline Int symplectic_dim_adapted(const PairXSigma& pair, const HomologyClass& canonical, const HomologyClass& e) {
    const auto& X = pair.manifold();
    return X.square(e) - X.pair(canonical + pair.sigma_class(), e);
}

/// Dimension of the component ending at reducibles, for 1/2 c1(L_Y) = [k]
/// torsion with 0 < k < |l| and (g - 1) != 0 mod l. The structure s must be
/// the one with m = k.
inline Int dim_reducible(const PairXSigma& pair, const LogSpinc& s) {
    const Int ell = -pair.sigma_self();
    const Int g = pair.genus();
    require(ell != 0, ErrorKind::Hypothesis, "reducible-end dimension needs l = -Sigma.Sigma != 0");
    require(mod_floor(g - 1, ell) != 0, ErrorKind::Hypothesis,
            "reducible-end dimension: (g - 1) = 0 mod l is not supported");
    require(is_integer(s.m), ErrorKind::Hypothesis, "reducible-end dimension: m must be an integer k");
    const Int k = s.m.numerator();
    require(k > 0 && k < abs_int(ell), ErrorKind::Hypothesis,
            "reducible-end dimension: k = " + std::to_string(k) + " outside (0, |l|)");
    const Int eps = pair.epsilon();
    const Rational value = complement_index_term(pair, s.c1L) + Rational(2 * g - 1, 2) +
                           Rational(pair.sigma_self() - eps, 4) - Rational(k * eps);
    return detail::to_integer(value, ErrorKind::NonCharacteristic, "reducible-end dimension");
}

/// Expected dimension of monopoles on the cylinder P - Sigma in the class
/// a Sigma_- + b_+ F = a Sigma_+ + b_- F (so b_- - b_+ = a l).
inline Int dim_tunneling(Int a, Int b_plus, Int b_minus, Int g, Int ell, bool adapted) {
    require(b_minus - b_plus == a * ell, ErrorKind::Precondition,
            "tunneling class violates b_- - b_+ = a l (a=" + std::to_string(a) + ", l=" + std::to_string(ell) +
                ", b_+=" + std::to_string(b_plus) + ", b_-=" + std::to_string(b_minus) + ")");
    if (adapted) return a * (b_minus + b_plus + 2 * (1 - g));
    return (a + 1) * (b_minus + b_plus) + 2 * a * (1 - g);
}

/// -(-1)^{d/2}, the b^+ = 1 wall-crossing jump.
inline Int wall_crossing_delta(Int d) {
    require(mod_floor(d, 2) == 0, ErrorKind::Precondition, "wall crossing needs an even dimension");
    return mod_floor(d / 2, 2) == 0 ? -1 : 1;
}

struct DimensionReport {
    Int d_main = 0;
    Int d_adapted = 0;
    std::optional<Int> d_reducible;
    Rational xi_compact{0};
    Rational xi_adapted{0};
    Rational degree_along_sigma{0};
    bool route_check = false;
};

/// Evaluates every applicable formula. d_reducible is filled when s itself
/// satisfies the reducible-end hypotheses.
inline DimensionReport evaluate_dimensions(const PairXSigma& pair, const LogSpinc& s) {
    DimensionReport r;
    r.d_main = dim_main_topological(pair, s);
    r.xi_compact = xi_compact(s);
    r.xi_adapted = xi_adapted(pair);
    r.degree_along_sigma = degree_along_sigma(s);
    r.d_adapted = dim_adapted(pair, s);
    bool ok = dim_main_xi_route(pair, s) == Rational(r.d_main);
    ok = ok && Rational(r.d_adapted) == Rational(r.d_main) - r.degree_along_sigma;
    if (s.m <= 0) ok = ok && complement_index_term(pair, s.c1L) + r.xi_adapted == Rational(r.d_adapted);
    r.route_check = ok;
    try {
        r.d_reducible = dim_reducible(pair, s);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Hypothesis && e.kind() != ErrorKind::NonCharacteristic) throw;
    }
    return r;
}

}  // namespace relsw
