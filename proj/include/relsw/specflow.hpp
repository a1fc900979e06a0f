#pragma once

// Finite-dimensional spectral flow along H_t = H0 + t P: brute-force zero
// crossing counts, the order-by-order resonance expansion on ker H0, and the
// closed forms for the circle-bundle Dirac model.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "relsw/error.hpp"
#include "relsw/topology.hpp"

namespace relsw {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

struct SpectralPath {
    RealMatrix H0;
    RealMatrix P;
    int samples = 64;
};

namespace detail {

inline void check_symmetric(const RealMatrix& M, const char* name) {
    require(M.rows() == M.cols(), ErrorKind::Schema, std::string(name) + " must be square");
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    require((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale, ErrorKind::Schema,
            std::string(name) + " must be symmetric");
}

inline double operator_scale(const RealMatrix& M) {
    if (M.size() == 0) return 0.0;
    return M.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace detail

struct ResonanceReport {
    int dim_ker_H0 = 0;
    int neg_Q = 0;
    int pos_Q = 0;
    int ker_R_dim = 0;
    std::vector<std::pair<int, int>> higher_order;  // (order k >= 2, negatives at that order)
    int predicted_flow = 0;
};

/// Counts the kernel eigenvalues of H0 that leave zero downward for small t > 0.
///
/// With K = ker H0 and A the restriction of H0 to its complement U, inertia
/// additivity gives n_-(H_t) = n_-(A) + n_-(S(t)) for the Schur complement
/// S(t)/t = P_KK - t P_KU (A + t P_UU)^{-1} P_UK. The series of S(t)/t is
/// resolved level by level: at each level the kernel of the leading
/// coefficient is kept and the Schur complement onto it, divided by t, gives
/// the next series.
inline ResonanceReport resonance_prediction(const RealMatrix& H0, const RealMatrix& P, int depth) {
    require(depth >= 1, ErrorKind::Precondition, "resonance depth must be >= 1");
    detail::check_symmetric(H0, "H0");
    detail::check_symmetric(P, "P");
    require(H0.rows() == P.rows(), ErrorKind::Schema, "H0 and P dimensions differ");
    const Eigen::Index n = H0.rows();
    const double scale = std::max({1.0, detail::operator_scale(H0), detail::operator_scale(P)});
    const double cut = 1e-9 * scale;

    Eigen::SelfAdjointEigenSolver<RealMatrix> es(H0);
    std::vector<Eigen::Index> ker, rest;
    for (Eigen::Index i = 0; i < n; ++i) (std::abs(es.eigenvalues()(i)) <= cut ? ker : rest).push_back(i);

    ResonanceReport r;
    r.dim_ker_H0 = static_cast<int>(ker.size());
    if (ker.empty()) return r;

    RealMatrix K(n, ker.size()), U(n, rest.size());
    RealVector a_inv(rest.size());
    for (std::size_t j = 0; j < ker.size(); ++j) K.col(j) = es.eigenvectors().col(ker[j]);
    for (std::size_t j = 0; j < rest.size(); ++j) {
        U.col(j) = es.eigenvectors().col(rest[j]);
        a_inv(j) = 1.0 / es.eigenvalues()(rest[j]);
    }

    // S_0 = K'PK, S_j = (-1)^j K'PU (A^{-1} U'PU)^{j-1} A^{-1} U'PK.
    std::vector<RealMatrix> series;
    series.push_back(K.transpose() * P * K);
    const RealMatrix PUU = U.transpose() * P * U;
    RealMatrix right = a_inv.asDiagonal() * (U.transpose() * P * K);
    const RealMatrix PKU = K.transpose() * P * U;
    for (int j = 1; j < depth; ++j) {
        RealMatrix term = PKU * right;
        series.push_back((j % 2 == 1 ? -1.0 : 1.0) * term);
        right = a_inv.asDiagonal() * (PUU * right);
    }

    int total_neg = 0;
    for (int level = 1; level <= depth; ++level) {
        const Eigen::Index r_dim = series[0].rows();
        Eigen::SelfAdjointEigenSolver<RealMatrix> lead(0.5 * (series[0] + series[0].transpose()));
        std::vector<Eigen::Index> nz, zero;
        int neg = 0, pos = 0;
        for (Eigen::Index i = 0; i < r_dim; ++i) {
            const double lam = lead.eigenvalues()(i);
            if (std::abs(lam) <= cut) {
                zero.push_back(i);
            } else {
                nz.push_back(i);
                (lam < 0 ? neg : pos) += 1;
            }
        }
        total_neg += neg;
        if (level == 1) {
            r.neg_Q = neg;
            r.pos_Q = pos;
            r.ker_R_dim = static_cast<int>(zero.size());
        } else {
            r.higher_order.emplace_back(level, neg);
        }
        if (zero.empty()) {
            r.predicted_flow = -total_neg;
            return r;
        }
        if (level == depth) break;

        RealMatrix V(r_dim, nz.size()), N(r_dim, zero.size());
        RealVector d_inv(nz.size());
        for (std::size_t j = 0; j < nz.size(); ++j) {
            V.col(j) = lead.eigenvectors().col(nz[j]);
            d_inv(j) = 1.0 / lead.eigenvalues()(nz[j]);
        }
        for (std::size_t j = 0; j < zero.size(); ++j) N.col(j) = lead.eigenvectors().col(zero[j]);

        const std::size_t L = series.size();
        std::vector<RealMatrix> vv(L), vn(L), nv(L), nn(L), inv(L);
        for (std::size_t j = 0; j < L; ++j) {
            vv[j] = V.transpose() * series[j] * V;
            vn[j] = V.transpose() * series[j] * N;
            nv[j] = N.transpose() * series[j] * V;
            nn[j] = N.transpose() * series[j] * N;
        }
        inv[0] = d_inv.asDiagonal();
        for (std::size_t j = 1; j < L; ++j) {
            RealMatrix acc = RealMatrix::Zero(nz.size(), nz.size());
            for (std::size_t i = 1; i <= j; ++i) acc += vv[i] * inv[j - i];
            inv[j] = -(d_inv.asDiagonal() * acc);
        }
        // Schur complement coefficients C_j; C_0 = 0, keep C_1 .. C_{L-1}.
        std::vector<RealMatrix> next;
        for (std::size_t j = 1; j < L; ++j) {
            RealMatrix c = nn[j];
            for (std::size_t a = 1; a < j; ++a)
                for (std::size_t b = 0; a + b < j; ++b) {
                    const std::size_t e = j - a - b;
                    if (e >= 1) c -= nv[a] * inv[b] * vn[e];
                }
            next.push_back(c);
        }
        series = std::move(next);
    }
    fail(ErrorKind::Convergence, "resonance expansion: depth " + std::to_string(depth) +
                                     " exhausted with a residual kernel of dimension " +
                                     std::to_string(series[0].rows()));
}

struct Crossing {
    double t = 0.0;
    int change = 0;  // change in the number of non-negative eigenvalues
};

struct BruteForceFlow {
    int flow = 0;
    int start_contribution = 0;  // from the kernel of H0 leaving zero
    int interior = 0;
    std::vector<Crossing> crossings;
};

namespace detail {

struct Count {
    int negative = 0;
    double min_abs = 0.0;
};

inline Count count_negative(const RealMatrix& H0, const RealMatrix& P, double t) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(H0 + t * P, Eigen::EigenvaluesOnly);
    Count c;
    c.min_abs = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()(i);
        if (lam < 0) ++c.negative;
        c.min_abs = std::min(c.min_abs, std::abs(lam));
    }
    return c;
}

}  // namespace detail

/// Signed count of eigenvalue crossings of zero along t in (0, 1], with the
/// convention that an eigenvalue leaving zero downward at t = 0 counts -1.
inline BruteForceFlow spectral_flow_bruteforce(const SpectralPath& path) {
    detail::check_symmetric(path.H0, "H0");
    detail::check_symmetric(path.P, "P");
    require(path.H0.rows() == path.P.rows(), ErrorKind::Schema, "H0 and P dimensions differ");
    require(path.samples >= 2, ErrorKind::Precondition, "need at least 2 samples");
    const RealMatrix& H0 = path.H0;
    const RealMatrix& P = path.P;
    const double scale = std::max({1.0, detail::operator_scale(H0), detail::operator_scale(P)});
    const double near_zero = 1e-8 * scale;
    const double noise = 1e-13 * scale;

    const auto end = detail::count_negative(H0, P, 1.0);
    require(end.min_abs > near_zero, ErrorKind::Precondition, "endpoint H0 + P is degenerate");

    Eigen::SelfAdjointEigenSolver<RealMatrix> es0(H0, Eigen::EigenvaluesOnly);
    int neg0 = 0;
    for (Eigen::Index i = 0; i < es0.eigenvalues().size(); ++i)
        if (es0.eigenvalues()(i) < -near_zero) ++neg0;

    // Dyadic descent toward t = 0 while every eigenvalue stays resolved.
    const std::size_t need = 3;
    std::vector<int> resolved;
    double t = 1.0;
    for (int step = 0; step < 60; ++step, t *= 0.5) {
        const auto c = detail::count_negative(H0, P, t);
        if (c.min_abs <= noise) {
            // an exact crossing on a dyadic point is skipped
            if (resolved.size() < need) continue;
            break;
        }
        resolved.push_back(c.negative);
    }
    bool stable = resolved.size() >= need;
    for (std::size_t i = resolved.size() >= need ? resolved.size() - need : 0; stable && i < resolved.size(); ++i)
        stable = resolved[i] == resolved.back();
    require(stable, ErrorKind::Convergence, "spectral flow: refinement budget exhausted near t = 0");
    const int start_neg = resolved.back();

    BruteForceFlow out;
    out.start_contribution = -(start_neg - neg0);

    // Interior: locate count changes on the sample grid by bisection.
    auto count_at = [&](double s) { return detail::count_negative(H0, P, s).negative; };
    int prev = start_neg;
    double prev_t = 2.0 * t;
    for (int i = 1; i <= path.samples; ++i) {
        const double ti = static_cast<double>(i) / path.samples;
        const int cur = count_at(ti);
        if (cur != prev) {
            double lo = prev_t, hi = ti;
            while (hi - lo > 1e-10) {
                const double mid = 0.5 * (lo + hi);
                if (count_at(mid) == prev) lo = mid; else hi = mid;
            }
            out.crossings.push_back({0.5 * (lo + hi), prev - cur});
        }
        prev = cur;
        prev_t = ti;
    }
    out.interior = -(end.negative - start_neg);
    out.flow = out.start_contribution + out.interior;
    return out;
}

struct QSignature {
    Int dim_ker = 0;
    Int dim_neg = 0;
};

inline QSignature q_signature_closed_form(Int g, Int d_plus, Int d_minus) {
    require(d_plus >= 1 && d_minus >= 1, ErrorKind::Precondition, "Q signature needs d_+, d_- >= 1");
    require(g >= d_plus + d_minus - 1, ErrorKind::Precondition, "Q signature needs g >= d_+ + d_- - 1");
    return {2 * (g - (d_plus + d_minus - 1)) + 1, 2 * (d_plus + d_minus - 1) + 1};
}

struct ClosedFormFlow {
    Int minus_sf = 0;
    Int x = 0;
};

inline ClosedFormFlow sf_closed_form(Int g, Int d_plus, Int d_minus, Int ell) {
    require(ell != 0, ErrorKind::Precondition, "closed-form spectral flow needs l != 0");
    const Int base = g - (d_plus + d_minus - 1);
    if (ell > 0) return {g + d_plus + d_minus + 1, base + 1};
    return {g + d_plus + d_minus, base};
}

/// alpha = -mass / (2 l): negative exactly when l > 0 for a positive mass.
inline double pairing_alpha(double mass, Int ell) {
    require(ell != 0, ErrorKind::Precondition, "pairing block needs l != 0");
    return -mass / (2.0 * static_cast<double>(ell));
}

inline RealMatrix pairing_matrix(const RealMatrix& X, const RealMatrix& Y, double alpha) {
    const Eigen::Index k = X.rows();
    RealMatrix M = RealMatrix::Zero(2 * k + 1, 2 * k + 1);
    M(0, 0) = alpha;
    M.block(1, 1, k, k) = X;
    M.block(1, 1 + k, k, k) = -Y;
    M.block(1 + k, 1, k, k) = -Y;
    M.block(1 + k, 1 + k, k, k) = -X;
    return M;
}

/// True iff the spectrum of the (X, Y) block is symmetric under lambda -> -lambda.
inline bool pairing_structure_check(const RealMatrix& X, const RealMatrix& Y, double alpha) {
    detail::check_symmetric(X, "X");
    detail::check_symmetric(Y, "Y");
    require(X.rows() == Y.rows(), ErrorKind::Schema, "X and Y dimensions differ");
    const Eigen::Index k = X.rows();
    const RealMatrix M = pairing_matrix(X, Y, alpha);
    const RealMatrix block = M.block(1, 1, 2 * k, 2 * k);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(block, Eigen::EigenvaluesOnly);
    const RealVector& ev = es.eigenvalues();
    const double tol = 1e-10 * std::max(1.0, detail::operator_scale(block));
    for (Eigen::Index i = 0; i < 2 * k; ++i)
        if (std::abs(ev(i) + ev(2 * k - 1 - i)) > tol) return false;
    return true;
}

struct RandomInstance {
    SpectralPath path;
    int kernel = 0;
    int planted_order = 1;  // highest order at which the construction resolves the kernel
};

/// Random path with a prescribed kernel of H0 whose resolution needs
/// resonance orders up to max_order (<= 3). P is kept small relative to the
/// spectral gap of H0, so nonzero eigenvalues do not cross zero on [0, 1].
inline RandomInstance random_spectral_instance(std::mt19937_64& rng, int max_dim = 12, int max_kernel = 4,
                                               int max_order = 3) {
    std::uniform_int_distribution<int> pick_order(1, std::max(1, std::min(max_order, 3)));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(1.0, 3.0);
    std::bernoulli_distribution coin(0.5);

    RandomInstance inst;
    inst.planted_order = pick_order(rng);
    std::uniform_int_distribution<int> pick_k(1, max_kernel);
    int kk = pick_k(rng);
    // A planted kernel vector consumes two complementary modes of opposite sign.
    std::uniform_int_distribution<int> pick_first(0, kk);
    int first = inst.planted_order == 1 ? kk : pick_first(rng);
    while (kk + 2 * (kk - first) + 1 > max_dim) {
        if (first < kk) ++first; else first = --kk;
    }
    if (first == kk) inst.planted_order = 1;
    inst.kernel = kk;
    std::uniform_int_distribution<int> pick_n(kk + std::max(1, 2 * (kk - first)), max_dim);
    const int n = pick_n(rng);
    const int u = n - kk;

    RealVector a(u);
    for (int i = 0; i < u; ++i) a(i) = unif(rng) * ((i % 2 == 0) ? 1.0 : -1.0);

    RealMatrix PKK = RealMatrix::Zero(kk, kk), C = RealMatrix::Zero(kk, u), PUU(u, u);
    for (int i = 0; i < u; ++i)
        for (int j = 0; j <= i; ++j) PUU(i, j) = PUU(j, i) = 0.5 * normal(rng);

    for (int i = 0; i < first; ++i) {
        PKK(i, i) = unif(rng) * (coin(rng) ? 1.0 : -1.0);
        for (int j = 0; j < u; ++j) C(i, j) = 0.3 * normal(rng);
    }
    for (int i = first; i < kk; ++i) {
        const int p = 2 * (i - first), q = p + 1;
        const double s = unif(rng) * (coin(rng) ? 1.0 : -1.0);
        if (inst.planted_order == 2) {
            C(i, coin(rng) ? p : q) = s;
        } else {
            // Isotropic for A^{-1}: c_p^2 / a_p + c_q^2 / a_q = 0.
            C(i, p) = s * std::sqrt(a(p));
            C(i, q) = (coin(rng) ? 1.0 : -1.0) * s * std::sqrt(-a(q));
        }
    }
    RealMatrix Pb(n, n);
    Pb << PKK, C, C.transpose(), PUU;
    RealMatrix Hb = RealMatrix::Zero(n, n);
    for (int i = 0; i < u; ++i) Hb(kk + i, kk + i) = a(i);

    RealMatrix G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = normal(rng);
    Eigen::HouseholderQR<RealMatrix> qr(G);
    const RealMatrix Q = qr.householderQ();

    const double eps = 0.1;
    inst.path.H0 = Q * Hb * Q.transpose();
    inst.path.P = eps * (Q * Pb * Q.transpose());
    inst.path.H0 = 0.5 * (inst.path.H0 + inst.path.H0.transpose()).eval();
    inst.path.P = 0.5 * (inst.path.P + inst.path.P.transpose()).eval();
    return inst;
}

}  // namespace relsw
