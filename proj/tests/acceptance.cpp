// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles/classifier_oracle.hpp"
#include "oracles/lattice_oracle.hpp"
#include "relsw/specflow.hpp"
#include "relsw/sum_formula.hpp"
#include "relsw/vortex.hpp"

using namespace relsw;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct RandomInput {
    PairXSigma pair;
    LogSpinc s;
    long long four_d = 0;
};

// Random odd diagonal lattice, Sigma and a characteristic c1 + Sigma.
RandomInput random_input(std::mt19937_64& rng) {
    const auto m = oracle::random_diagonal_manifold(rng, 8);
    const std::size_t r = m.Q.size();
    const auto X = fixtures::from_oracle(m.Q, m.euler, m.signature, m.b_plus);
    const auto sigma = oracle::random_vector(rng, r, 3);
    const auto chr = oracle::random_characteristic(rng, r, 3);
    std::uniform_int_distribution<int> gd(0, 8);
    const auto pair = build_pair(X, fixtures::to_class(sigma), gd(rng), 0);
    auto s = make_log_spinc(pair, fixtures::to_class(oracle::add(chr, sigma, -1)));
    return {pair, s, oracle::pair(m.Q, chr, chr) - 2 * m.euler - 3 * m.signature};
}

std::multiset<std::string> encode(const std::vector<ModuliComponent3>& comps, Int g) {
    std::multiset<std::string> out;
    for (const auto& c : comps) {
        if (c.kind == ComponentKind::Irreducible) {
            std::string csd = std::to_string(c.csd_level.numerator());
            if (c.csd_level.denominator() != 1) csd += "/" + std::to_string(c.csd_level.denominator());
            out.insert("irr m=" + std::to_string(c.m) + " sym=" + std::to_string(c.d) + " csd=" + csd);
        } else if (c.kind == ComponentKind::ReducibleTorus2g) {
            out.insert("red T^" + std::to_string(2 * g) + (c.theta_flag ? " theta" : ""));
        } else if (c.kind == ComponentKind::ReducibleTorus2gPlus1) {
            out.insert("red T^" + std::to_string(2 * g + 1));
        } else {
            out.insert("red empty");
        }
    }
    return out;
}

Outcome dimension_routes() {
    std::mt19937_64 rng(1);
    const auto t0 = std::chrono::steady_clock::now();
    int bad = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const auto in = random_input(rng);
        const Int top = dim_main_topological(in.pair, in.s);
        if (dim_main_xi_route(in.pair, in.s) != Rational(top) || 4 * top != in.four_d) ++bad;
    }
    const double t = since(t0);
    std::ostringstream os;
    os << n << " inputs, " << bad << " mismatches, " << t << " s";
    return {bad == 0 && t < 5.0, os.str()};
}

Outcome adapted_and_symplectic() {
    std::mt19937_64 rng(1);
    int bad_adapted = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto in = random_input(rng);
        if (Rational(dim_adapted(in.pair, in.s)) != Rational(dim_main(in.pair, in.s)) - degree_along_sigma(in.s))
            ++bad_adapted;
    }
    // Symplectic lattice CP^2 # r with K = (-3, 1, ..., 1); the genus comes from adjunction.
    std::mt19937_64 srng(2);
    std::uniform_int_distribution<int> rr(1, 8), c(-3, 3);
    int main_checked = 0, main_bad = 0, adapted_checked = 0, adapted_bad = 0, positive_m = 0;
    while (main_checked < 1000 || adapted_checked < 1000) {
        const Int r = rr(srng);
        const auto X = fixtures::plane_blowup(r);
        IntVector k = IntVector::Ones(r + 1), sv(r + 1), ev(r + 1);
        k(0) = -3;
        for (Int i = 0; i <= r; ++i) {
            sv(i) = c(srng);
            ev(i) = c(srng);
        }
        const HomologyClass K(k), S(sv), E(ev);
        const Int g = (X.pair(K, S) + X.square(S)) / 2 + 1;
        if (g < 0) continue;
        const auto pair = build_pair(X, S, g, 1);
        const auto s = log_spinc_from_twisting(pair, K, E);
        if (main_checked < 1000) {
            ++main_checked;
            if (symplectic_dim_main(pair, K, E) != dim_main(pair, s)) ++main_bad;
        }
        if (s.m > 0) {
            ++positive_m;
            continue;
        }
        if (adapted_checked < 1000) {
            ++adapted_checked;
            if (symplectic_dim_adapted(pair, K, E) != dim_adapted(pair, s)) ++adapted_bad;
        }
    }
    std::ostringstream os;
    os << "d~ = d - d(s) on 10000 inputs: " << bad_adapted << " mismatches; e.e - K.e on " << main_checked << ": "
       << main_bad << " mismatches; e.e - (K+S).e on " << adapted_checked << " instances with m <= 0: " << adapted_bad
       << " mismatches (" << positive_m << " draws with m > 0 skipped)";
    return {bad_adapted == 0 && main_bad == 0 && adapted_bad == 0, os.str()};
}

Outcome mst_consistency() {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> rk(1, 6), c(-4, 4);
    int checked = 0, bad = 0;
    for (Int g = 1; g <= 20; ++g)
        for (int trial = 0; trial < 25; ++trial) {
            // CP^2 # r with Sigma = h + e1 (Sigma.Sigma = 0).
            const Int r = rk(rng);
            const auto X = fixtures::plane_blowup(r);
            IntVector sv = IntVector::Zero(r + 1), cv(r + 1);
            sv(0) = 1;
            sv(1) = 1;
            for (Int i = 0; i <= r; ++i) cv(i) = 2 * c(rng);
            // c1L.Sigma = c0 - c1 = 2g - 2; c1L + Sigma needs odd entries.
            cv(1) = cv(0) - (2 * g - 2);
            for (Int i = 2; i <= r; ++i) cv(i) += 1;
            const auto pair = build_pair(X, HomologyClass(sv), g, 1);
            const auto s = make_log_spinc(pair, HomologyClass(cv));
            ++checked;
            if (pair.sigma_self() != 0 || s.m != Rational(g - 1) || degree_along_sigma(s) != Rational(0) ||
                dim_adapted(pair, s) != dim_main(pair, s))
                ++bad;
        }
    std::ostringstream os;
    os << checked << " inputs over g = 1..20, " << bad << " failures";
    return {bad == 0, os.str()};
}

Outcome classifier() {
    int cases = 0, bad = 0;
    for (Int g = 0; g <= 5; ++g)
        for (Int ell = -6; ell <= 6; ++ell) {
            const Int span = ell == 0 ? 2 * g + 4 : abs_int(ell);
            for (Int r = (ell == 0 ? -2 : 0); r < span; ++r) {
                const CircleBundle Y{g, ell};
                ++cases;
                if (encode(enumerate_components(Y, pullback_class(Y, r)), g) != oracle::classify(g, ell, r)) ++bad;
            }
        }
    int counts = 0, count_bad = 0;
    for (Int g = 1; 2 * g - 2 <= 10; ++g)
        for (Int d = 0; d <= 2 * g - 2; ++d) {
            ++counts;
            const auto n = perturbed_components(simple_zeros(g), d).size();
            if (n != oracle::count_subsets(static_cast<int>(2 * g - 2), static_cast<int>(d)) ||
                n != oracle::binomial(static_cast<int>(2 * g - 2), static_cast<int>(d)))
                ++count_bad;
        }
    std::ostringstream os;
    os << cases << " (g, l, class) cases vs case analysis: " << bad << " mismatches; " << counts
       << " |S_d(nu)| counts vs subset enumeration: " << count_bad << " mismatches";
    return {bad == 0 && count_bad == 0, os.str()};
}

Outcome spectral_flow() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(5);
    int compared = 0, agree = 0, degenerate = 0, interior = 0;
    int by_order[4] = {0, 0, 0, 0};
    for (int i = 0; i < 1000; ++i) {
        const auto inst = random_spectral_instance(rng, 12, 4, 3);
        BruteForceFlow bf;
        try {
            bf = spectral_flow_bruteforce(inst.path);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Precondition) throw;
            ++degenerate;
            continue;
        }
        const auto rp = resonance_prediction(inst.path.H0, inst.path.P, 3);
        ++compared;
        ++by_order[inst.planted_order];
        if (!bf.crossings.empty()) ++interior;
        if (bf.start_contribution == rp.predicted_flow) ++agree;
    }
    int q_cases = 0, q_bad = 0;
    for (Int g = 1; g <= 10; ++g)
        for (Int dp = 1; dp <= g; ++dp)
            for (Int dm = 1; dp + dm - 1 <= g; ++dm) {
                ++q_cases;
                const auto q = q_signature_closed_form(g, dp, dm);
                if (q.dim_ker + q.dim_neg != 2 * g + 2) ++q_bad;
            }
    const double t = since(t0);
    std::ostringstream os;
    os << agree << "/" << compared << " instances agree (orders 1/2/3: " << by_order[1] << "/" << by_order[2] << "/"
       << by_order[3] << ", " << degenerate << " degenerate skipped, " << interior
       << " with additional interior crossings); Q signature identity on " << q_cases << " inputs: " << q_bad
       << " failures";
    return {compared >= 500 && agree == compared && q_bad == 0 && t < 60.0, os.str()};
}

Outcome vortex() {
    std::ostringstream os;
    bool ok = true;
    double worst_time = 0.0;
    const std::vector<std::vector<TorusPoint>> divisors = {{}, {{0.0, 0.0}}, {{0.25, 0.25}, {0.75, 0.5}}};
    for (const auto& div : divisors) {
        const int d = static_cast<int>(div.size());
        VortexProblem p;
        p.geometry.N = 128;
        p.divisor = div;
        std::vector<Grid> moduli;
        double plaq_err = 0.0, res = 0.0;
        int zeros = -1;
        for (unsigned long long seed = 1; seed <= 5; ++seed) {
            p.seed = seed;
            const auto t0 = std::chrono::steady_clock::now();
            const auto sol = solve_vortex(p);
            worst_time = std::max(worst_time, since(t0));
            plaq_err = std::max(plaq_err, std::abs(sol.plaquette_phase_sum + 2.0 * std::numbers::pi * d));
            res = std::max(res, sol.residual_sup);
            int z = 0;
            for (const auto& zz : sol.zero_locations) z += zz.multiplicity;
            if (zeros >= 0 && z != zeros) ok = false;
            zeros = z;
            moduli.push_back(sol.phi_modulus);
        }
        double gauge = 0.0;
        for (std::size_t k = 1; k < moduli.size(); ++k)
            for (std::size_t i = 0; i < moduli[0].size(); ++i)
                gauge = std::max(gauge, std::abs(moduli[k][i] - moduli[0][i]));
        ok = ok && plaq_err <= 1e-8 && res <= 1e-10 && zeros == d && gauge <= 1e-9;
        os << "d=" << d << ": plaquette err " << plaq_err << ", residual " << res << ", zeros " << zeros
           << ", gauge sup " << gauge << "; ";
    }
    os << "slowest solve " << worst_time << " s";
    return {ok && worst_time < 30.0, os.str()};
}

Outcome tunneling() {
    int checked = 0, bad = 0, rejected = 0, emptiness_bad = 0;
    for (Int a = -3; a <= 3; ++a)
        for (Int bp = 0; bp <= 8; ++bp)
            for (Int bm = 0; bm <= 8; ++bm)
                for (Int g = 0; g <= 5; ++g)
                    for (Int ell = -8; ell <= 8; ++ell) {
                        if (ell == 0) continue;
                        if (bm - bp != a * ell) {
                            try {
                                dim_tunneling(a, bp, bm, g, ell, false);
                                ++bad;
                            } catch (const Error&) {
                                ++rejected;
                            }
                            continue;
                        }
                        ++checked;
                        if (dim_tunneling(a, bp, bm, g, ell, false) != (a + 1) * (bm + bp) + 2 * a * (1 - g)) ++bad;
                        if (dim_tunneling(a, bp, bm, g, ell, true) != a * (bm + bp + 2 * (1 - g))) ++bad;
                        const auto m = tunneling_moduli(make_tunneling_class(a, bp, bm, g, ell), true);
                        if (!m.empty && bp != bm) ++emptiness_bad;
                    }
    std::ostringstream os;
    os << checked << " admissible classes: " << bad << " formula mismatches, " << emptiness_bad
       << " adapted emptiness violations; " << rejected << " inadmissible classes rejected";
    return {bad == 0 && emptiness_bad == 0 && checked > 0, os.str()};
}

RelativeInvariantTable random_table(std::mt19937_64& rng, const SplitProblem& sp, const NuZeroSet& z, bool side1) {
    std::uniform_int_distribution<Int> v(-6, 6);
    RelativeInvariantTable t;
    for (const auto& [m1, m2] : enumerate_splittings(sp)) {
        const Int m = side1 ? m1 : m2;
        for (const auto& q : perturbed_components(z, sp.genus() - 1 - abs_int(m))) t.set(m, divisor_label(q), v(rng));
    }
    return t;
}

Outcome sum_formula() {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<Int> scale(-5, 5);
    int bilinear_bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const Int g = 2 + i % 4;
        const auto sp = make_split_problem(fixtures::model_pair(g, -1), fixtures::model_pair(g, 1), 0, 0);
        const auto z = simple_zeros(g);
        const auto a = random_table(rng, sp, z, true), b = random_table(rng, sp, z, true);
        const auto u = random_table(rng, sp, z, false), w = random_table(rng, sp, z, false);
        const Int k = scale(rng);
        if (sum_rhs_pointwise(sp, a + b, u, z) != sum_rhs_pointwise(sp, a, u, z) + sum_rhs_pointwise(sp, b, u, z) ||
            sum_rhs_pointwise(sp, a, u + w, z) != sum_rhs_pointwise(sp, a, u, z) + sum_rhs_pointwise(sp, a, w, z) ||
            sum_rhs_pointwise(sp, k * a, u, z) != k * sum_rhs_pointwise(sp, a, u, z))
            ++bilinear_bad;
    }

    // c1 = jF on each side with j = 2k on even E(n) and j = 2k + 1 on E(1), the
    // nearest characteristic multiples of F there.
    int fixtures_checked = 0, additivity_bad = 0;
    for (auto [n1, n2] : {std::pair<Int, Int>{1, 1}, {1, 2}, {2, 2}})
        for (Int k = -2; k <= 2; ++k) {
            const auto e1 = elliptic_surface(n1), e2 = elliptic_surface(n2), glued = elliptic_surface(n1 + n2);
            const auto p1 = build_pair(e1.manifold, e1.fiber, 1, e1.manifold.b_plus());
            const auto p2 = build_pair(e2.manifold, e2.fiber, 1, e2.manifold.b_plus());
            auto lift = [&](const CatalogEntry& e, Int n) {
                const Int j = n % 2 == 1 ? 2 * k + 1 : 2 * k;
                return HomologyClass(e.fiber.coords * (j - 1));
            };
            const auto s1 = make_log_spinc(p1, lift(e1, n1)), s2 = make_log_spinc(p2, lift(e2, n2));
            const auto sp = make_split_problem(p1, p2, 0, 0);
            ++fixtures_checked;
            if (!dimension_additivity_check(sp, s1, s2, {glued.manifold.euler(), glued.manifold.signature(), 0}))
                ++additivity_bad;
        }

    const auto X = fixtures::plane_blowup(4);
    const auto q1 = build_pair(X, HomologyClass{-3, -3, -1, -1, -1}, 2, 1);
    const auto q2 = build_pair(X, HomologyClass{-3, -2, -1, -1, 0}, 2, 1);
    const Int defect_a = reducible_defect(q1, make_log_spinc(q1, HomologyClass{0, 0, -2, 0, 4}), q2,
                                          make_log_spinc(q2, HomologyClass{0, -1, 0, 4, -3}));
    const Int defect_b = reducible_defect(q1, make_log_spinc(q1, HomologyClass{0, 0, -2, 2, 4}), q2,
                                          make_log_spinc(q2, HomologyClass{0, -1, 2, 4, -3}));
    std::ostringstream os;
    os << "bilinearity on 1000 cases: " << bilinear_bad << " failures; E(n) additivity on " << fixtures_checked
       << " fixtures: " << additivity_bad << " failures; reducible defects " << defect_a << ", " << defect_b;
    return {bilinear_bad == 0 && additivity_bad == 0 && defect_a == 1 && defect_b == 1, os.str()};
}

Outcome strata() {
    int checked = 0, bad = 0;
    for (Int k = 1; k <= 50; ++k)
        for (Int self = -20; self <= 20; ++self) {
            ++checked;
            const Int c = stratum_codimension(k, false, self);
            if (c < 2 || c != 2 * k) ++bad;
            if (self < 0) {
                const Int r = stratum_codimension(k, true, self);
                if (r < 2 || r != 2 * k + 1) ++bad;
            } else if (self > 0) {
                try {
                    stratum_codimension(k, true, self);
                    ++bad;
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::Hypothesis) ++bad;
                }
            }
        }
    std::ostringstream os;
    os << checked << " (k, Sigma.Sigma) inputs, " << bad << " failures";
    return {bad == 0, os.str()};
}

}  // namespace

int main() {
    criterion(1, "dimension route equality", dimension_routes);
    criterion(2, "adapted dimension and symplectic shortcuts", adapted_and_symplectic);
    criterion(3, "degree-along-Sigma consistency for Sigma.Sigma = 0", mst_consistency);
    criterion(4, "component classifier", classifier);
    criterion(5, "spectral-flow oracle equivalence", spectral_flow);
    criterion(6, "vortex conservation", vortex);
    criterion(7, "tunneling formulas", tunneling);
    criterion(8, "sum-formula engine", sum_formula);
    criterion(9, "stratum codimension", strata);
    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
