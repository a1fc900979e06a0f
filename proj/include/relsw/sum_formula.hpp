#pragma once

// Combinatorics of the fiber-sum formula: splittings, the pointwise
// right-hand side from relative invariant tables, Kunneth degree bookkeeping,
// Betti numbers of symmetric products, partitions and dimension checks.

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "relsw/moduli3.hpp"

namespace relsw {

struct SplitProblem {
    PairXSigma pair1;
    PairXSigma pair2;
    Int rho1 = 0;  // twisting-degree residues encoding [s]
    Int rho2 = 0;

    Int genus() const { return pair1.genus(); }
};

inline SplitProblem make_split_problem(PairXSigma pair1, PairXSigma pair2, Int rho1, Int rho2) {
    require(pair1.genus() == pair2.genus(), ErrorKind::Precondition,
            "fiber sum needs surfaces of equal genus (" + std::to_string(pair1.genus()) + " vs " +
                std::to_string(pair2.genus()) + ")");
    require(pair1.sigma_self() == -pair2.sigma_self(), ErrorKind::Precondition,
            "fiber sum needs dual self-intersections (" + std::to_string(pair1.sigma_self()) + " vs " +
                std::to_string(pair2.sigma_self()) + ")");
    return {std::move(pair1), std::move(pair2), rho1, rho2};
}

using Splitting = std::pair<Int, Int>;

/// All (m1, m2) with 0 < |m_i| <= g - 1, |m1| = |m2| and deg(E_i) = m_i + g - 1
/// in the residue class rho_i mod l_i.
inline std::vector<Splitting> enumerate_splittings(const SplitProblem& sp) {
    const Int g = sp.genus();
    const Int ell1 = -sp.pair1.sigma_self(), ell2 = -sp.pair2.sigma_self();
    std::vector<Splitting> out;
    for (Int m1 = -(g - 1); m1 <= g - 1; ++m1) {
        if (m1 == 0 || !pullback_equivalent(m1 + g - 1, sp.rho1, ell1)) continue;
        for (Int m2 : {-abs_int(m1), abs_int(m1)})
            if (pullback_equivalent(m2 + g - 1, sp.rho2, ell2)) out.emplace_back(m1, m2);
    }
    return out;
}

/// Values of the adapted relative invariant keyed by (m, divisor label).
class RelativeInvariantTable {
public:
    void set(Int m, const std::string& q, Int value) { entries_[{m, q}] = value; }
    bool contains(Int m, const std::string& q) const { return entries_.count({m, q}) != 0; }
    Int at(Int m, const std::string& q) const {
        auto it = entries_.find({m, q});
        require(it != entries_.end(), ErrorKind::MissingEntry,
                "missing table entry for m = " + std::to_string(m) + ", q = " + q);
        return it->second;
    }
    const std::map<std::pair<Int, std::string>, Int>& entries() const { return entries_; }

    /// Total adapted invariant sum_q SW(s; q) for one structure.
    Int total(Int m) const {
        Int s = 0;
        for (const auto& [k, v] : entries_)
            if (k.first == m) s += v;
        return s;
    }

    friend RelativeInvariantTable operator+(const RelativeInvariantTable& a, const RelativeInvariantTable& b) {
        RelativeInvariantTable r = a;
        for (const auto& [k, v] : b.entries_) r.entries_[k] += v;
        return r;
    }
    friend RelativeInvariantTable operator*(Int c, const RelativeInvariantTable& a) {
        RelativeInvariantTable r = a;
        for (auto& [k, v] : r.entries_) v *= c;
        return r;
    }

private:
    std::map<std::pair<Int, std::string>, Int> entries_;
};

/// Orientation signs epsilon(s1, s2, q); unspecified entries are +1.
class SignTable {
public:
    void set(Int m1, Int m2, const std::string& q, int sign) {
        require(sign == 1 || sign == -1, ErrorKind::Schema, "signs must be +1 or -1");
        signs_[{m1, m2, q}] = sign;
    }
    int at(Int m1, Int m2, const std::string& q) const {
        auto it = signs_.find({m1, m2, q});
        return it == signs_.end() ? 1 : it->second;
    }

private:
    std::map<std::tuple<Int, Int, std::string>, int> signs_;
};

inline Int sum_rhs_pointwise(const SplitProblem& sp, const RelativeInvariantTable& t1,
                             const RelativeInvariantTable& t2, const NuZeroSet& zeros,
                             const SignTable& signs = {}) {
    require(zeros.genus == sp.genus(), ErrorKind::Precondition, "zero set genus differs from the surface genus");
    Int total = 0;
    for (const auto& [m1, m2] : enumerate_splittings(sp)) {
        const Int d = (sp.genus() - 1) - abs_int(m1);
        for_each_sub_divisor(zeros, d, [&](const Divisor& q) {
            const std::string label = divisor_label(q);
            total += signs.at(m1, m2, label) * t1.at(m1, label) * t2.at(m2, label);
        });
    }
    return total;
}

struct KunnethEntry {
    Int deg_omega = 0;
    Int r1 = 0;
    Int r2 = 0;
    bool operator==(const KunnethEntry&) const = default;
};

/// Betti numbers b_0 .. b_{2d} of Sym^d of a genus-g surface: the coefficient
/// of x^d in (1 + t x)^{2g} / ((1 - x)(1 - t^2 x)).
inline std::vector<Int> poincare_polynomial_symd(Int g, Int d) {
    require(g >= 0 && d >= 0, ErrorKind::Precondition, "Poincare polynomial needs g, d >= 0");
    using Poly = std::vector<Int>;  // in t
    auto mul_add = [](Poly& acc, const Poly& p, Int shift) {
        if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0);
        for (std::size_t i = 0; i < p.size(); ++i) acc[i + shift] += p[i];
    };
    // series[k] = coefficient of x^k, as a polynomial in t.
    std::vector<Poly> series(d + 1, Poly{});
    series[0] = Poly{1};
    // (1 + t x)^{2g}
    for (Int f = 0; f < 2 * g; ++f)
        for (Int k = d; k >= 1; --k) mul_add(series[k], series[k - 1], 1);
    // 1 / (1 - x): prefix sums in x.
    for (Int k = 1; k <= d; ++k) mul_add(series[k], series[k - 1], 0);
    // 1 / (1 - t^2 x)
    for (Int k = 1; k <= d; ++k) mul_add(series[k], series[k - 1], 2);
    Poly out = series[d];
    out.resize(2 * d + 1, 0);
    return out;
}

/// (deg Omega, r1, r2) with deg Omega + 2 r1 = d_sw1 and
/// (2d - deg Omega) + 2 r2 = d_sw2, restricted to degrees where Sym^d has
/// nonzero cohomology.
inline std::vector<KunnethEntry> kunneth_degree_ledger(Int d, Int g, Int d_sw1, Int d_sw2) {
    require(d >= 0, ErrorKind::Precondition, "Kunneth ledger needs d >= 0");
    const auto betti = poincare_polynomial_symd(g, d);
    std::vector<KunnethEntry> out;
    for (Int deg = 0; deg <= 2 * d; ++deg) {
        if (betti[deg] == 0) continue;
        const Int a = d_sw1 - deg, b = d_sw2 - (2 * d - deg);
        if (a < 0 || b < 0 || a % 2 != 0 || b % 2 != 0) continue;
        out.push_back({deg, a / 2, b / 2});
    }
    return out;
}

struct Partition {
    std::vector<Int> parts;  // ascending
    Int total() const {
        Int s = 0;
        for (Int p : parts) s += p;
        return s;
    }
    bool operator==(const Partition&) const = default;
};

/// All partitions of d, largest first part first; d = 0 gives the empty partition.
inline std::vector<Partition> partitions_of(Int d) {
    require(d >= 0, ErrorKind::Precondition, "partitions need d >= 0");
    std::vector<Partition> out;
    std::vector<Int> cur;
    auto rec = [&](auto&& self, Int left, Int max_part) -> void {
        if (left == 0) {
            Partition p{cur};
            std::reverse(p.parts.begin(), p.parts.end());
            out.push_back(std::move(p));
            return;
        }
        for (Int part = std::min(left, max_part); part >= 1; --part) {
            cur.push_back(part);
            self(self, left - part, part);
            cur.pop_back();
        }
    };
    rec(rec, d, d);
    return out;
}

struct DivTModel {
    std::vector<Int> factors;  // multiplicities of the distinct part values, ascending values
    Int real_dimension = 0;
    Int pd_codegree = 0;
};

/// Div_t(Sigma) = Sym^{i_1} x ... x Sym^{i_n}: one factor per distinct part.
inline DivTModel div_t_model(const Partition& t, Int g) {
    require(g >= 0, ErrorKind::Precondition, "genus must be non-negative");
    std::vector<Int> parts = t.parts;
    std::sort(parts.begin(), parts.end());
    DivTModel m;
    for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        m.factors.push_back(static_cast<Int>(j - i));
        i = j;
    }
    const Int k = static_cast<Int>(parts.size());
    m.real_dimension = 2 * k;
    m.pd_codegree = 2 * (t.total() - k);
    return m;
}

struct GluedData {
    Int euler = 0;
    Int signature = 0;
    Int c1_square = 0;
};

inline void validate_glued(const SplitProblem& sp, const GluedData& glued) {
    const Int g = sp.genus();
    const Int euler = sp.pair1.manifold().euler() + sp.pair2.manifold().euler() - 2 * (2 - 2 * g);
    const Int sig = sp.pair1.manifold().signature() + sp.pair2.manifold().signature();
    require(glued.euler == euler, ErrorKind::Precondition,
            "inconsistent glued data: euler " + std::to_string(glued.euler) + ", expected " + std::to_string(euler));
    require(glued.signature == sig, ErrorKind::Precondition,
            "inconsistent glued data: signature " + std::to_string(glued.signature) + ", expected " +
                std::to_string(sig));
}

/// dim of the glued closed moduli space equals d~(s1) + d~(s2).
inline bool dimension_additivity_check(const SplitProblem& sp, const LogSpinc& s1, const LogSpinc& s2,
                                       const GluedData& glued) {
    validate_glued(sp, glued);
    require(abs_rational(s1.m) == abs_rational(s2.m), ErrorKind::Precondition,
            "splitting needs equal degrees along Sigma on both sides");
    const Int closed = dim_classic_closed(glued.c1_square, glued.euler, glued.signature);
    return closed == dim_adapted(sp.pair1, s1) + dim_adapted(sp.pair2, s2);
}

/// Expected dimension of the glued moduli space minus that of the fiber
/// product of the two reducible-end moduli spaces over the torus T^{2g}.
inline Int reducible_defect(const PairXSigma& pair1, const LogSpinc& s1, const PairXSigma& pair2,
                            const LogSpinc& s2) {
    const SplitProblem sp = make_split_problem(pair1, pair2, 0, 0);
    require(s1.m == s2.m, ErrorKind::Hypothesis, "reducible defect needs the same torsion class k on both sides");
    const Int g = pair1.genus();
    const Int dj1 = dim_reducible(pair1, s1);
    const Int dj2 = dim_reducible(pair2, s2);
    GluedData glued;
    glued.euler = pair1.manifold().euler() + pair2.manifold().euler() - 2 * (2 - 2 * g);
    glued.signature = pair1.manifold().signature() + pair2.manifold().signature();
    glued.c1_square = pair1.manifold().square(s1.c1L) + pair2.manifold().square(s2.c1L);
    validate_glued(sp, glued);
    const Int closed = dim_classic_closed(glued.c1_square, glued.euler, glued.signature);
    return closed - (dj1 + dj2 - 2 * g);
}

}  // namespace relsw
