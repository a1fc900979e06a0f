#pragma once

// Topological input data: closed 4-manifolds described by their
// characteristic numbers and integer intersection lattice, homology classes,
// embedded surfaces and the circle bundle bounding a tubular neighbourhood.

#include <Eigen/Dense>

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relsw/error.hpp"

namespace relsw {

using Int = std::int64_t;
using Rational = boost::rational<Int>;
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

inline Int sign_of(Int x) { return (x > 0) - (x < 0); }

inline Int abs_int(Int x) { return x < 0 ? -x : x; }

/// Mathematical modulus, always in [0, |m|).
inline Int mod_floor(Int a, Int m) {
    const Int mm = abs_int(m);
    Int r = a % mm;
    return r < 0 ? r + mm : r;
}

/// A class in H_2(X;Z)/torsion, in coordinates of the manifold's lattice basis.
struct HomologyClass {
    IntVector coords;

    HomologyClass() = default;
    explicit HomologyClass(IntVector c) : coords(std::move(c)) {}
    HomologyClass(std::initializer_list<Int> c) : coords(static_cast<Eigen::Index>(c.size())) {
        Eigen::Index i = 0;
        for (Int v : c) coords(i++) = v;
    }

    static HomologyClass zero(Eigen::Index rank) { return HomologyClass(IntVector::Zero(rank)); }
    static HomologyClass basis(Eigen::Index rank, Eigen::Index i) {
        IntVector v = IntVector::Zero(rank);
        v(i) = 1;
        return HomologyClass(std::move(v));
    }

    Eigen::Index rank() const { return coords.size(); }

    friend HomologyClass operator+(const HomologyClass& a, const HomologyClass& b) {
        return HomologyClass(a.coords + b.coords);
    }
    friend HomologyClass operator-(const HomologyClass& a, const HomologyClass& b) {
        return HomologyClass(a.coords - b.coords);
    }
    friend HomologyClass operator-(const HomologyClass& a) { return HomologyClass(-a.coords); }
    friend HomologyClass operator*(Int k, const HomologyClass& a) { return HomologyClass(k * a.coords); }
    friend bool operator==(const HomologyClass& a, const HomologyClass& b) {
        return a.coords.size() == b.coords.size() && a.coords == b.coords;
    }
};

/// Counts of positive, negative and zero eigenvalues of a symmetric integer form.
struct Inertia {
    Int positive = 0;
    Int negative = 0;
    Int zero = 0;
};

inline Inertia inertia_of(const IntMatrix& form) {
    Inertia in;
    if (form.rows() == 0) return in;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(form.cast<double>(), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > 1e-9 * scale) ++in.positive;
        else if (ev(i) < -1e-9 * scale) ++in.negative;
        else ++in.zero;
    }
    return in;
}

class ClosedFourManifold {
public:
    ClosedFourManifold() = default;

    /// Validates: symmetric form, b^- = b^+ - signature >= 0, rank = b^+ + b^-,
    /// and the form's inertia agrees with (b^+, b^-).
    ClosedFourManifold(std::string name, Int euler, Int signature, Int b_plus, IntMatrix form)
        : name_(std::move(name)), euler_(euler), signature_(signature), b_plus_(b_plus),
          form_(std::move(form)) {
        require(b_plus_ >= 0, ErrorKind::Schema, name_ + ": b_plus must be non-negative");
        require(form_.rows() == form_.cols(), ErrorKind::Schema, name_ + ": intersection form must be square");
        require(form_ == form_.transpose(), ErrorKind::Schema, name_ + ": intersection form must be symmetric");
        require(b_minus() >= 0, ErrorKind::Schema, name_ + ": b_minus = b_plus - signature is negative");
        require(form_.rows() == b_plus_ + b_minus(), ErrorKind::Schema,
                name_ + ": lattice rank " + std::to_string(form_.rows()) + " differs from b_plus + b_minus = " +
                    std::to_string(b_plus_ + b_minus()));
        const Inertia in = inertia_of(form_);
        require(in.zero == 0 && in.positive == b_plus_ && in.negative == b_minus(), ErrorKind::Schema,
                name_ + ": inertia of the intersection form does not match (b_plus, b_minus)");
    }

    const std::string& name() const { return name_; }
    Int euler() const { return euler_; }
    Int signature() const { return signature_; }
    Int b_plus() const { return b_plus_; }
    Int b_minus() const { return b_plus_ - signature_; }
    Eigen::Index rank() const { return form_.rows(); }
    const IntMatrix& form() const { return form_; }

    Int pair(const HomologyClass& a, const HomologyClass& b) const {
        check_member(a);
        check_member(b);
        return a.coords.dot(form_ * b.coords);
    }
    Int square(const HomologyClass& a) const { return pair(a, a); }

    bool contains(const HomologyClass& a) const { return a.rank() == rank(); }

    void check_member(const HomologyClass& a) const {
        require(contains(a), ErrorKind::Schema,
                name_ + ": class of rank " + std::to_string(a.rank()) + " does not lie in a lattice of rank " +
                    std::to_string(rank()));
    }

    /// k is characteristic iff k.x = x.x (mod 2) for every basis vector x.
    bool is_characteristic(const HomologyClass& k) const {
        check_member(k);
        const IntVector kx = form_ * k.coords;
        for (Eigen::Index i = 0; i < rank(); ++i)
            if (mod_floor(kx(i) - form_(i, i), 2) != 0) return false;
        return true;
    }

    /// The same manifold in a new basis: form' = U^T form U for unimodular U.
    ClosedFourManifold rebased(const IntMatrix& unimodular) const {
        return ClosedFourManifold(name_, euler_, signature_, b_plus_, unimodular.transpose() * form_ * unimodular);
    }

private:
    std::string name_;
    Int euler_ = 2;
    Int signature_ = 0;
    Int b_plus_ = 0;
    IntMatrix form_;
};

/// A closed oriented surface of genus g embedded in X, with cached
/// self-intersection and complement invariants.
class PairXSigma {
public:
    PairXSigma() = default;

    const ClosedFourManifold& manifold() const { return manifold_; }
    Int genus() const { return genus_; }
    const HomologyClass& sigma_class() const { return sigma_; }
    Int sigma_self() const { return sigma_self_; }
    Int b_plus_complement() const { return b_plus_complement_; }

    /// sign(Sigma.Sigma) in {-1, 0, 1}.
    Int epsilon() const { return sign_of(sigma_self_); }
    /// chi(X - Sigma) = chi(X) - chi(Sigma).
    Int euler_complement() const { return manifold_.euler() - (2 - 2 * genus_); }
    /// sigma(X - Sigma) = sigma(X) - sign(Sigma.Sigma).
    Int signature_complement() const { return manifold_.signature() - epsilon(); }

    friend PairXSigma build_pair(ClosedFourManifold manifold, HomologyClass sigma, Int genus, Int b_plus_complement);

private:
    ClosedFourManifold manifold_;
    Int genus_ = 0;
    HomologyClass sigma_;
    Int sigma_self_ = 0;
    Int b_plus_complement_ = 0;
};

inline PairXSigma build_pair(ClosedFourManifold manifold, HomologyClass sigma, Int genus, Int b_plus_complement) {
    require(genus >= 0, ErrorKind::Precondition, "genus must be non-negative");
    require(manifold.contains(sigma), ErrorKind::Schema,
            "lattice dimension mismatch: sigma has rank " + std::to_string(sigma.rank()) + ", lattice has rank " +
                std::to_string(manifold.rank()));
    require(b_plus_complement >= 0 && b_plus_complement <= manifold.b_plus() + 1, ErrorKind::Schema,
            "b_plus of the complement must lie in [0, b_plus(X) + 1]");
    PairXSigma p;
    p.sigma_self_ = manifold.square(sigma);
    p.manifold_ = std::move(manifold);
    p.sigma_ = std::move(sigma);
    p.genus_ = genus;
    p.b_plus_complement_ = b_plus_complement;
    return p;
}

/// Unit circle bundle Y of the normal bundle, oriented as the boundary of the
/// cylindrical end of X - Sigma, so that degree = -Sigma.Sigma.
struct CircleBundle {
    Int base_genus = 0;
    Int degree = 0;

    friend bool operator==(const CircleBundle&, const CircleBundle&) = default;
};

inline CircleBundle circle_bundle_of(const PairXSigma& pair) {
    return CircleBundle{pair.genus(), -pair.sigma_self()};
}

}  // namespace relsw
