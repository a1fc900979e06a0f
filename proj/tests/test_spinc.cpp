#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "relsw/spinc.hpp"

using namespace relsw;

namespace {

LogSpinc with_m(Int g, Rational m) {
    LogSpinc s;
    s.genus = g;
    s.m = m;
    return s;
}

}  // namespace

TEST(Spinc, DegreeAlongSigma) {
    EXPECT_EQ(degree_along_sigma(with_m(3, 0)), Rational(2));
    EXPECT_EQ(degree_along_sigma(with_m(1, 2)), Rational(-2));
    EXPECT_EQ(degree_along_sigma(with_m(1, -2)), Rational(-2));
    // deg(L|Sigma) = 2g - 2 gives m = g - 1 and d(s) = 0.
    for (Int g = 1; g <= 20; ++g) EXPECT_EQ(degree_along_sigma(with_m(g, g - 1)), Rational(0));
}

TEST(Spinc, DegreeAlongSigmaDependsOnlyOnAbsM) {
    for (Int g = 0; g <= 6; ++g)
        for (Int twice = -12; twice <= 12; ++twice)
            EXPECT_EQ(degree_along_sigma(with_m(g, Rational(twice, 2))), degree_along_sigma(with_m(g, Rational(-twice, 2))));
}

TEST(Spinc, MakeLogSpincStoresHalfDegree) {
    const auto pair = build_pair(fixtures::plane_blowup(1), HomologyClass{1, 0}, 0, 1);
    const auto s = make_log_spinc(pair, HomologyClass{1, 1});
    EXPECT_EQ(s.m, Rational(1, 2));
    EXPECT_EQ(Rational(pair.manifold().pair(s.c1L, pair.sigma_class())), 2 * s.m);
}

TEST(Spinc, PullbackEquivalence) {
    EXPECT_TRUE(pullback_equivalent(0, 3, 3));
    EXPECT_FALSE(pullback_equivalent(0, 1, 3));
    EXPECT_FALSE(pullback_equivalent(2, 5, 0));
    EXPECT_TRUE(pullback_equivalent(2, 2, 0));
    EXPECT_TRUE(pullback_equivalent(-1, 2, -3));
}

TEST(Spinc, PullbackEquivalenceIsEquivalenceRelation) {
    for (Int ell = -5; ell <= 5; ++ell)
        for (Int a = -6; a <= 6; ++a) {
            EXPECT_TRUE(pullback_equivalent(a, a, ell));
            for (Int b = -6; b <= 6; ++b) {
                EXPECT_EQ(pullback_equivalent(a, b, ell), pullback_equivalent(b, a, ell));
                for (Int c = -6; c <= 6; ++c) {
                    if (pullback_equivalent(a, b, ell) && pullback_equivalent(b, c, ell)) {
                        EXPECT_TRUE(pullback_equivalent(a, c, ell));
                    }
                }
            }
        }
}

TEST(Spinc, PullbackClassRespectsEquivalence) {
    for (Int ell : {-4, -1, 0, 2, 3})
        for (Int d1 = -5; d1 <= 5; ++d1)
            for (Int d2 = -5; d2 <= 5; ++d2) {
                const CircleBundle Y{2, ell};
                const auto c1 = pullback_class(Y, d1), c2 = pullback_class(Y, d2);
                const bool same = c1.degree_residue == c2.degree_residue && c1.torsion_k == c2.torsion_k;
                EXPECT_EQ(same, pullback_equivalent(d1, d2, ell));
            }
}

TEST(Spinc, GysinH2) {
    auto h = gysin_h2({2, 3});
    EXPECT_EQ(h.free_rank, 4);
    EXPECT_EQ(h.torsion_order, 3);
    h = gysin_h2({1, 0});
    EXPECT_EQ(h.free_rank, 3);
    EXPECT_EQ(h.torsion_order, 0);
    h = gysin_h2({0, 1});
    EXPECT_EQ(h.free_rank, 0);
    EXPECT_EQ(h.torsion_order, 1);
    EXPECT_EQ(gysin_h2({1, -5}).torsion_order, 5);
}

TEST(Spinc, TorsionClassK) {
    EXPECT_EQ(torsion_class_k(4, 3), 1);
    EXPECT_EQ(torsion_class_k(0, 5), 0);
    EXPECT_EQ(torsion_class_k(-1, 3), 2);
    EXPECT_THROW(torsion_class_k(1, 0), Error);
}

TEST(Spinc, LogChernTotal) {
    const auto e = elliptic_surface(2);
    const auto pair = build_pair(e.manifold, e.fiber, 1, 3);
    const auto& X = pair.manifold();
    // Sigma = 0 is the identity.
    const auto p0 = build_pair(X, HomologyClass::zero(X.rank()), 1, 3);
    const ClassPolynomial c{-e.canonical, X.euler()};
    const auto id = log_chern_total(p0, c);
    EXPECT_EQ(id.c1, c.c1);
    EXPECT_EQ(id.c2, c.c2);
    // c1 = 0, c2 = chi: c1(log) = -Sigma, c2(log) = chi + Sigma.Sigma.
    const auto lc = log_chern_total(pair, {HomologyClass::zero(X.rank()), X.euler()});
    EXPECT_EQ(lc.c1, -e.fiber);
    EXPECT_EQ(lc.c2, X.euler() + pair.sigma_self());
    // E(2): c1(TX) = -K = 0, so c1(log) = -F.
    EXPECT_EQ(log_chern_total(pair, c).c1, -e.fiber);
}

TEST(Spinc, LogChernTimesOnePlusSigmaIsIdentity) {
    std::mt19937_64 rng(3);
    const auto X = fixtures::plane_blowup(5);
    std::uniform_int_distribution<int> c(-4, 4);
    for (int trial = 0; trial < 300; ++trial) {
        HomologyClass S{c(rng), c(rng), c(rng), c(rng), c(rng), c(rng)};
        HomologyClass c1{c(rng), c(rng), c(rng), c(rng), c(rng), c(rng)};
        const auto pair = build_pair(X, S, 2, 1);
        const ClassPolynomial total{c1, c(rng)};
        const auto quotient = log_chern_total(pair, total);
        const auto back = multiply(X, quotient, {S, 0});
        EXPECT_EQ(back.c1, total.c1);
        EXPECT_EQ(back.c2, total.c2);
    }
}

TEST(Spinc, TwistingConvention) {
    const auto e = elliptic_surface(2);
    const auto pair = build_pair(e.manifold, e.fiber, 1, 3);
    const auto s = log_spinc_from_twisting(pair, e.canonical, HomologyClass::zero(pair.manifold().rank()));
    EXPECT_EQ(s.c1L, -(e.canonical + e.fiber));
    EXPECT_EQ(twisting_degree(s), Rational(0));
}
