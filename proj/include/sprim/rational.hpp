#pragma once

#include <utility>

#include "sprim/mobius.hpp"
#include "sprim/polynomial.hpp"

namespace sprim {

/// Quotient num/den of coprime polynomials with monic den. Construct through
/// rational_normalize() or the normalizing constructor.
template <typename Scalar>
class Rational {
   public:
    using Poly = Polynomial<Scalar>;

    Rational() : num_(), den_(Poly::constant(Scalar(1))) {}
    /// Normalizing constructor: cancels the approximate GCD and makes den monic.
    Rational(Poly num, Poly den, double gcd_tol = zero_tolerance()) {
        if (den.is_zero()) throw Error(ErrorKind::DegenerateInput, "rational map with zero denominator");
        if (num.is_zero()) {
            den_ = Poly::constant(Scalar(1));
            return;
        }
        const Poly g = gcd(num, den, gcd_tol);
        if (g.degree() > 0) {
            num = divmod(num, g).first;
            den = divmod(den, g).first;
        }
        const Scalar lead = den.leading();
        num_ = num / lead;
        den_ = den / lead;
    }
    /// Polynomial as a rational map.
    explicit Rational(Poly p) : num_(std::move(p)), den_(Poly::constant(Scalar(1))) {}
    explicit Rational(const Mobius<Scalar>& m)
        : Rational(Poly{m.b(), m.a()}, Poly{m.d(), m.c()}) {}

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    /// Degree as a self-map of the sphere.
    int degree() const { return std::max(num_.degree(), den_.degree()); }

    Scalar operator()(Scalar z) const { return num_(z) / den_(z); }

    RiemannPoint<Scalar> operator()(const RiemannPoint<Scalar>& z) const {
        if (z.is_infinity()) {
            const int n = num_.degree(), m = den_.degree();
            if (n > m) return RiemannPoint<Scalar>::infinity();
            if (n < m) return RiemannPoint<Scalar>(Scalar(0));
            return RiemannPoint<Scalar>(num_.leading() / den_.leading());
        }
        const Scalar d = den_(z.value());
        const Scalar n = num_(z.value());
        if (std::abs(d) <= 1e-14 * (den_.abs_eval(z.value()) + std::abs(n))) return RiemannPoint<Scalar>::infinity();
        return RiemannPoint<Scalar>(n / d);
    }

    friend Rational operator+(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.num_, x.den_ * y.den_);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.den_, x.den_ * y.num_);
    }
    friend Rational operator*(Scalar s, const Rational& x) { return Rational(x.num_ * s, x.den_); }

   private:
    Poly num_;
    Poly den_;
};

using RationalMap = Rational<Complex>;

template <typename Scalar>
Rational<Scalar> rational_normalize(const Polynomial<Scalar>& num, const Polynomial<Scalar>& den,
                                    double gcd_tol = zero_tolerance()) {
    if (num.is_zero() && den.is_zero())
        throw Error(ErrorKind::DegenerateInput, "numerator and denominator both vanish");
    return Rational<Scalar>(num, den, gcd_tol);
}

/// Wronskian num' den - num den' of the pair defining f; f' = wronskian / den^2.
template <typename Scalar>
Polynomial<Scalar> wronskian_of(const Rational<Scalar>& f) {
    return derivative(f.num()) * f.den() - f.num() * derivative(f.den());
}

template <typename Scalar>
Rational<Scalar> derivative(const Rational<Scalar>& f) {
    return Rational<Scalar>(wronskian_of(f), f.den() * f.den());
}

/// outer(inner(z)).
template <typename Scalar>
Rational<Scalar> compose(const Rational<Scalar>& outer, const Rational<Scalar>& inner) {
    using Poly = Polynomial<Scalar>;
    const int m = outer.degree();
    // outer = N/D; outer(P/Q) = sum n_k P^k Q^(m-k) / sum d_k P^k Q^(m-k).
    std::vector<Poly> ppow{Poly::constant(Scalar(1))}, qpow{Poly::constant(Scalar(1))};
    for (int k = 1; k <= m; ++k) {
        ppow.push_back(ppow.back() * inner.num());
        qpow.push_back(qpow.back() * inner.den());
    }
    Poly num, den;
    for (int k = 0; k <= m; ++k) {
        const auto& term = ppow[static_cast<std::size_t>(k)] * qpow[static_cast<std::size_t>(m - k)];
        num += term * outer.num()[static_cast<std::size_t>(k)];
        den += term * outer.den()[static_cast<std::size_t>(k)];
    }
    return Rational<Scalar>(num, den);
}

template <typename Scalar>
Rational<Scalar> compose(const Mobius<Scalar>& outer, const Rational<Scalar>& inner) {
    return compose(Rational<Scalar>(outer), inner);
}

/// Max coefficient distance between normalized forms; infinite when degrees differ.
template <typename Scalar>
double coefficient_distance(const Rational<Scalar>& x, const Rational<Scalar>& y) {
    if (x.num().degree() != y.num().degree() || x.den().degree() != y.den().degree())
        return std::numeric_limits<double>::infinity();
    double d = 0;
    for (std::size_t k = 0; k < x.num().size(); ++k)
        d = std::max(d, static_cast<double>(std::abs(x.num()[k] - y.num()[k])));
    for (std::size_t k = 0; k < x.den().size(); ++k)
        d = std::max(d, static_cast<double>(std::abs(x.den()[k] - y.den()[k])));
    return d;
}

}  // namespace sprim
