#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <ostream>

#include <Eigen/Dense>

#include "sprim/config.hpp"

namespace sprim {

/// A point of the Riemann sphere: a finite complex number or infinity.
template <typename Scalar>
class RiemannPoint {
   public:
    using Real = RealOf_t<Scalar>;

    RiemannPoint() : value_(Scalar(0)) {}
    RiemannPoint(Scalar z) : value_(z) {}  // NOLINT(google-explicit-constructor)
    RiemannPoint(RealOf_t<Scalar> x) : value_(Scalar(x)) {}  // NOLINT(google-explicit-constructor)
    static RiemannPoint infinity() {
        RiemannPoint p;
        p.value_.reset();
        return p;
    }

    bool is_infinity() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }
    /// Precondition: is_finite().
    Scalar value() const { return *value_; }

    friend bool operator==(const RiemannPoint& a, const RiemannPoint& b) {
        if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
        return a.value() == b.value();
    }

    friend std::ostream& operator<<(std::ostream& os, const RiemannPoint& p) {
        if (p.is_infinity()) return os << "inf";
        return os << p.value();
    }

   private:
    std::optional<Scalar> value_;
};

using SpherePoint = RiemannPoint<Complex>;

/// Chordal distance on the unit sphere; infinity is a regular point.
template <typename Scalar>
RealOf_t<Scalar> chordal_distance(const RiemannPoint<Scalar>& a, const RiemannPoint<Scalar>& b) {
    using Real = RealOf_t<Scalar>;
    if (a.is_infinity() && b.is_infinity()) return Real(0);
    if (a.is_infinity()) return Real(2) / std::sqrt(Real(1) + std::norm(b.value()));
    if (b.is_infinity()) return Real(2) / std::sqrt(Real(1) + std::norm(a.value()));
    return Real(2) * std::abs(a.value() - b.value()) /
           (std::sqrt(Real(1) + std::norm(a.value())) * std::sqrt(Real(1) + std::norm(b.value())));
}

/// Equality up to a relative tolerance; infinity only matches infinity.
template <typename Scalar>
bool near(const RiemannPoint<Scalar>& a, const RiemannPoint<Scalar>& b, double tol) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
    const auto x = a.value();
    const auto y = b.value();
    return std::abs(x - y) <= tol * (1 + std::abs(x) + std::abs(y));
}

/// z -> (a z + b) / (c z + d), stored with determinant 1 (up to sign).
template <typename Scalar>
class Mobius {
   public:
    using Matrix = Eigen::Matrix<Scalar, 2, 2>;

    Mobius() : m_(Matrix::Identity()) {}
    Mobius(Scalar a, Scalar b, Scalar c, Scalar d) {
        m_ << a, b, c, d;
        normalize();
    }
    explicit Mobius(const Matrix& m) : m_(m) { normalize(); }

    static Mobius identity() { return Mobius(); }

    const Matrix& matrix() const { return m_; }
    Scalar a() const { return m_(0, 0); }
    Scalar b() const { return m_(0, 1); }
    Scalar c() const { return m_(1, 0); }
    Scalar d() const { return m_(1, 1); }

    Mobius inverse() const { return Mobius(d(), -b(), -c(), a()); }

    RiemannPoint<Scalar> operator()(const RiemannPoint<Scalar>& z) const {
        if (z.is_infinity()) {
            if (c() == Scalar(0)) return RiemannPoint<Scalar>::infinity();
            return RiemannPoint<Scalar>(a() / c());
        }
        const Scalar w = z.value();
        const Scalar den = c() * w + d();
        if (den == Scalar(0)) return RiemannPoint<Scalar>::infinity();
        return RiemannPoint<Scalar>((a() * w + b()) / den);
    }

    /// Finite-argument evaluation; the result may overflow to inf when z is the pole.
    Scalar eval(Scalar z) const { return (a() * z + b()) / (c() * z + d()); }

    friend Mobius operator*(const Mobius& lhs, const Mobius& rhs) { return Mobius(Matrix(lhs.m_ * rhs.m_)); }

    /// True when the matrix equals +-identity within tol.
    bool is_identity(double tol) const {
        const Matrix id = Matrix::Identity();
        return (m_ - id).cwiseAbs().maxCoeff() <= tol || (m_ + id).cwiseAbs().maxCoeff() <= tol;
    }

   private:
    void normalize() {
        const Scalar det = m_.determinant();
        if (std::abs(det) == 0) throw Error(ErrorKind::DegenerateInput, "singular Mobius matrix");
        m_ /= std::sqrt(det);
    }

    Matrix m_;
};

using MobiusMap = Mobius<Complex>;

namespace detail {
/// Matrix of the map sending (z1, z2, z3) to (0, 1, infinity).
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> to_standard_frame(const std::array<RiemannPoint<Scalar>, 3>& z) {
    Eigen::Matrix<Scalar, 2, 2> m;
    if (z[0].is_infinity()) {
        m << Scalar(0), z[1].value() - z[2].value(), Scalar(1), -z[2].value();
    } else if (z[1].is_infinity()) {
        m << Scalar(1), -z[0].value(), Scalar(1), -z[2].value();
    } else if (z[2].is_infinity()) {
        m << Scalar(1), -z[0].value(), Scalar(0), z[1].value() - z[0].value();
    } else {
        const Scalar z1 = z[0].value(), z2 = z[1].value(), z3 = z[2].value();
        m << z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1);
    }
    return m;
}
}  // namespace detail

/// The unique Mobius map carrying src[k] to dst[k] for k = 0, 1, 2.
template <typename Scalar>
Mobius<Scalar> mobius_from_triples(const std::array<RiemannPoint<Scalar>, 3>& src,
                                   const std::array<RiemannPoint<Scalar>, 3>& dst, double tol = 1e-12) {
    for (const auto* triple : {&src, &dst})
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (near((*triple)[i], (*triple)[j], tol))
                    throw Error(ErrorKind::DegenerateInput, "Mobius interpolation needs distinct points");
    const auto s = detail::to_standard_frame(src);
    const auto t = detail::to_standard_frame(dst);
    return Mobius<Scalar>(Eigen::Matrix<Scalar, 2, 2>(t.inverse() * s));
}

}  // namespace sprim
