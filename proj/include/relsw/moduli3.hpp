#pragma once

// Components of the 3-dimensional monopole moduli space on the circle bundle
// Y -> Sigma, the perturbed finite moduli S_d(nu), CSD ordering, tunnelings
// and broken-trajectory strata.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "relsw/dimension.hpp"

namespace relsw {

enum class ComponentKind { ReducibleTorus2g, ReducibleTorus2gPlus1, ReducibleEmpty, Irreducible };

inline const char* to_string(ComponentKind k) {
    switch (k) {
        case ComponentKind::ReducibleTorus2g: return "reducible_T2g";
        case ComponentKind::ReducibleTorus2gPlus1: return "reducible_T2g+1";
        case ComponentKind::ReducibleEmpty: return "reducible_empty";
        case ComponentKind::Irreducible: return "irreducible";
    }
    return "?";
}

struct ModuliComponent3 {
    ComponentKind kind = ComponentKind::ReducibleEmpty;
    Int m = 0;              // irreducible only
    Int d = 0;              // irreducible: model Sym^d(Sigma)
    Int twisting_degree = 0;  // deg(E|Sigma) of the irreducible component
    bool theta_flag = false;   // reducible with deg(L) = 0 mod l
    bool nondegenerate = true;  // reducible only
    Rational csd_level{0};

    bool is_reducible() const { return kind != ComponentKind::Irreducible; }
    /// Real dimension; -1 for the empty reducible.
    Int real_dimension(Int g) const {
        switch (kind) {
            case ComponentKind::ReducibleTorus2g: return 2 * g;
            case ComponentKind::ReducibleTorus2gPlus1: return 2 * g + 1;
            case ComponentKind::ReducibleEmpty: return -1;
            case ComponentKind::Irreducible: return 2 * d;
        }
        return -1;
    }

    bool operator==(const ModuliComponent3&) const = default;
};

/// (2m)^2 / l with the positive normalizing constant set to 1.
inline Rational csd_level(const Rational& m, Int ell) {
    require(ell != 0, ErrorKind::Precondition, "CSD level needs l != 0; for l = 0 all levels are 0");
    return Rational(4) * m * m / Rational(ell);
}

/// Lists the reducible component first, then irreducibles by increasing
/// twisting degree. For l = 0 all CSD levels are reported as 0.
inline std::vector<ModuliComponent3> enumerate_components(const CircleBundle& Y, const PullbackClassOnY& cls) {
    require(Y.base_genus >= 0, ErrorKind::Precondition, "genus must be non-negative");
    const Int g = Y.base_genus;
    const Int ell = Y.degree;
    std::vector<ModuliComponent3> out;

    ModuliComponent3 red;
    if (ell != 0) {
        red.kind = ComponentKind::ReducibleTorus2g;
        const Int m = cls.degree_residue - (g - 1);
        red.theta_flag = mod_floor(2 * m, ell) == 0;
        red.nondegenerate = !red.theta_flag;
    } else {
        red.kind = cls.degree_residue == g - 1 ? ComponentKind::ReducibleTorus2gPlus1 : ComponentKind::ReducibleEmpty;
        red.nondegenerate = false;
    }
    out.push_back(red);

    for (Int deg = 0; deg <= 2 * g - 2; ++deg) {
        if (deg == g - 1) continue;
        if (!pullback_equivalent(deg, cls.degree_residue, ell)) continue;
        ModuliComponent3 c;
        c.kind = ComponentKind::Irreducible;
        c.m = deg - (g - 1);
        c.d = (g - 1) - abs_int(c.m);
        c.twisting_degree = deg;
        c.csd_level = ell != 0 ? csd_level(Rational(c.m), ell) : Rational(0);
        out.push_back(c);
    }
    return out;
}

inline bool tunneling_admissible(const ModuliComponent3& from, const ModuliComponent3& to) {
    return from.csd_level < to.csd_level;
}

/// Zeros of a holomorphic 1-form nu on Sigma: abstract points p_0, p_1, ...
/// with multiplicities summing to 2g - 2.
struct NuZeroSet {
    Int genus = 1;
    std::vector<Int> multiplicities;

    Int total() const {
        Int s = 0;
        for (Int m : multiplicities) s += m;
        return s;
    }
};

inline NuZeroSet make_nu_zero_set(Int genus, std::vector<Int> multiplicities) {
    require(genus >= 1, ErrorKind::Precondition, "nu zero set needs g >= 1");
    NuZeroSet z{genus, std::move(multiplicities)};
    for (Int m : z.multiplicities) require(m >= 1, ErrorKind::Schema, "zero multiplicities must be positive");
    require(z.total() == 2 * genus - 2, ErrorKind::Schema,
            "zero multiplicities sum to " + std::to_string(z.total()) + ", expected 2g - 2 = " +
                std::to_string(2 * genus - 2));
    return z;
}

inline NuZeroSet simple_zeros(Int genus) {
    return make_nu_zero_set(genus, std::vector<Int>(static_cast<std::size_t>(2 * genus - 2), 1));
}

/// A sub-multiset of Div(nu): counts[i] copies of p_i.
using Divisor = std::vector<Int>;

inline Int divisor_degree(const Divisor& q) {
    Int s = 0;
    for (Int c : q) s += c;
    return s;
}

/// "p0+2p3"; the empty divisor is "empty".
inline std::string divisor_label(const Divisor& q) {
    std::string s;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (q[i] > 1) s += std::to_string(q[i]);
        s += "p" + std::to_string(i);
    }
    return s.empty() ? "empty" : s;
}

inline Divisor complement_divisor(const NuZeroSet& z, const Divisor& q) {
    Divisor c(z.multiplicities.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = z.multiplicities[i] - q[i];
    return c;
}

/// Streams S_d(nu) in lexicographic order of the count vectors.
inline void for_each_sub_divisor(const NuZeroSet& z, Int d, const std::function<void(const Divisor&)>& visit) {
    const Int top = 2 * z.genus - 2;
    require(d >= 0 && d <= top, ErrorKind::Precondition,
            "S_d(nu) needs 0 <= d <= 2g - 2, got d = " + std::to_string(d));
    const std::size_t n = z.multiplicities.size();
    std::vector<Int> suffix(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + z.multiplicities[i];
    Divisor q(n, 0);
    std::function<void(std::size_t, Int)> rec = [&](std::size_t i, Int left) {
        if (i == n) {
            if (left == 0) visit(q);
            return;
        }
        if (left > suffix[i]) return;
        for (Int c = 0; c <= std::min(left, z.multiplicities[i]); ++c) {
            q[i] = c;
            rec(i + 1, left - c);
        }
        q[i] = 0;
    };
    rec(0, d);
}

inline std::vector<Divisor> perturbed_components(const NuZeroSet& z, Int d) {
    std::vector<Divisor> out;
    for_each_sub_divisor(z, d, [&](const Divisor& q) { out.push_back(q); });
    return out;
}

/// Div(Psi_+) + Div(conj Psi_-) = Div(nu) as multisets.
inline bool nu_constraint_check(const Divisor& plus, const Divisor& minus, const NuZeroSet& z) {
    const std::size_t n = z.multiplicities.size();
    if (plus.size() != n || minus.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (plus[i] + minus[i] != z.multiplicities[i]) return false;
    return true;
}

/// Codimension of level-k broken trajectories; a chain may start at the
/// reducible locus only when Sigma.Sigma < 0.
inline Int stratum_codimension(Int k, bool starts_at_reducible, Int sigma_self) {
    require(k >= 1, ErrorKind::Precondition, "stratum level k must be >= 1");
    if (!starts_at_reducible) return 2 * k;
    require(sigma_self < 0, ErrorKind::Hypothesis,
            "a broken trajectory can start at the reducible locus only when Sigma.Sigma < 0 (got " +
                std::to_string(sigma_self) + ")");
    return 2 * k + 1;
}

/// Sigma.Sigma > 2g - 2 leaves a single irreducible component per class,
/// so the moduli space is compact.
inline bool compactness_certificate(const PairXSigma& pair) {
    return pair.sigma_self() > 2 * pair.genus() - 2;
}

struct TunnelingClass {
    Int a = 0, b_plus = 0, b_minus = 0, g = 0, ell = 0;
};

inline TunnelingClass make_tunneling_class(Int a, Int b_plus, Int b_minus, Int g, Int ell) {
    require(b_minus - b_plus == a * ell, ErrorKind::Precondition, "tunneling class violates b_- - b_+ = a l");
    return {a, b_plus, b_minus, g, ell};
}

struct TunnelingModuli {
    bool empty = true;
    bool fiberwise_constant = false;
    bool holomorphic_data = false;  // Phi_+ in H^0(O(e)), conj Phi_- in H^0(K_P(log Sigma) (x) O(-e))
    std::optional<Int> dimension;
    std::optional<Int> symmetric_power;  // Sym^b or S_b
    std::optional<std::size_t> finite_count;  // |S_b(nu)| when a zero set is given
    std::string model;
};

inline TunnelingModuli tunneling_moduli(const TunnelingClass& tc, bool adapted,
                                        const std::optional<NuZeroSet>& zeros = std::nullopt) {
    require(tc.b_minus - tc.b_plus == tc.a * tc.ell, ErrorKind::Precondition,
            "tunneling class violates b_- - b_+ = a l");
    TunnelingModuli r;
    const Int top = 2 * tc.g - 2;
    const bool in_range = tc.b_plus >= 0 && tc.b_plus <= top && tc.b_minus >= 0 && tc.b_minus <= top;
    if (adapted) {
        if (tc.b_plus != tc.b_minus || !in_range) {
            r.model = "empty";
            return r;
        }
        r.empty = false;
        r.fiberwise_constant = true;
        r.symmetric_power = tc.b_plus;
        r.dimension = 0;
        r.model = "S_" + std::to_string(tc.b_plus) + "(nu), fiber-wise constant";
        if (zeros) r.finite_count = perturbed_components(*zeros, tc.b_plus).size();
        return r;
    }
    if (!in_range) {
        r.model = "empty";
        return r;
    }
    r.empty = false;
    r.dimension = dim_tunneling(tc.a, tc.b_plus, tc.b_minus, tc.g, tc.ell, false);
    if (tc.a == 0) {
        r.fiberwise_constant = true;
        r.symmetric_power = tc.b_plus;
        r.model = "Sym^" + std::to_string(tc.b_plus) + "(Sigma), fiber-wise constant";
    } else {
        r.holomorphic_data = true;
        r.model = "holomorphic pairs (Phi_+, conj Phi_-)";
    }
    return r;
}

}  // namespace relsw
