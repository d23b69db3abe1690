#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sprim/config.hpp"

namespace sprim {

/// Dense polynomial with coefficients stored in ascending degree. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is
/// nonzero with respect to zero_tolerance().
template <typename Scalar>
class Polynomial {
   public:
    using Real = RealOf_t<Scalar>;
    using Coeffs = std::vector<Scalar>;

    Polynomial() = default;
    Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) { trim(); }
    explicit Polynomial(Coeffs coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Polynomial constant(Scalar c) { return Polynomial(Coeffs{c}); }
    static Polynomial monomial(int degree, Scalar c = Scalar(1)) {
        Coeffs coeffs(static_cast<std::size_t>(degree) + 1, Scalar(0));
        coeffs.back() = c;
        return Polynomial(std::move(coeffs));
    }
    /// z - root
    static Polynomial linear(Scalar root) { return Polynomial{-root, Scalar(1)}; }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    std::size_t size() const { return coeffs_.size(); }
    const Coeffs& coeffs() const { return coeffs_; }

    Scalar operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Scalar(0); }
    Scalar leading() const { return coeffs_.empty() ? Scalar(0) : coeffs_.back(); }

    Real max_abs() const {
        Real m = 0;
        for (const auto& c : coeffs_) m = std::max(m, static_cast<Real>(std::abs(c)));
        return m;
    }

    Scalar operator()(Scalar z) const {
        Scalar acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    /// sum |c_k| |z|^k, the natural scale for backward-error tests at z.
    Real abs_eval(Scalar z) const {
        const Real r = std::abs(z);
        Real acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
        return acc;
    }

    Polynomial& operator+=(const Polynomial& rhs) {
        if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Scalar(0));
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& rhs) {
        if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Scalar(0));
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
        trim();
        return *this;
    }
    Polynomial& operator*=(Scalar s) {
        for (auto& c : coeffs_) c *= s;
        trim();
        return *this;
    }
    Polynomial& operator/=(Scalar s) {
        for (auto& c : coeffs_) c /= s;
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
    friend Polynomial operator-(Polynomial p) { return p *= Scalar(-1); }
    friend Polynomial operator*(Polynomial p, Scalar s) { return p *= s; }
    friend Polynomial operator*(Scalar s, Polynomial p) { return p *= s; }
    friend Polynomial operator/(Polynomial p, Scalar s) { return p /= s; }

    friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
        if (lhs.is_zero() || rhs.is_zero()) return {};
        Coeffs out(lhs.size() + rhs.size() - 1, Scalar(0));
        for (std::size_t i = 0; i < lhs.size(); ++i)
            for (std::size_t j = 0; j < rhs.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
        return Polynomial(std::move(out));
    }
    Polynomial& operator*=(const Polynomial& rhs) { return *this = *this * rhs; }

    template <typename Other>
    Polynomial<Other> cast() const {
        typename Polynomial<Other>::Coeffs out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.emplace_back(static_cast<Other>(c));
        return Polynomial<Other>(std::move(out));
    }

   private:
    void trim() {
        const Real threshold = static_cast<Real>(zero_tolerance()) * (Real(1) + max_abs());
        while (!coeffs_.empty() && std::abs(coeffs_.back()) <= threshold) coeffs_.pop_back();
    }

    Coeffs coeffs_;
};

using ComplexPolynomial = Polynomial<Complex>;

template <typename Scalar>
Polynomial<Scalar> derivative(const Polynomial<Scalar>& p) {
    if (p.degree() < 1) return {};
    typename Polynomial<Scalar>::Coeffs out(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) out[k - 1] = p[k] * static_cast<RealOf_t<Scalar>>(k);
    return Polynomial<Scalar>(std::move(out));
}

template <typename Scalar>
Polynomial<Scalar> derivative(const Polynomial<Scalar>& p, int order) {
    Polynomial<Scalar> out = p;
    for (int i = 0; i < order; ++i) out = derivative(out);
    return out;
}

/// p(q(z))
template <typename Scalar>
Polynomial<Scalar> compose(const Polynomial<Scalar>& p, const Polynomial<Scalar>& q) {
    Polynomial<Scalar> acc;
    for (int k = p.degree(); k >= 0; --k) acc = acc * q + Polynomial<Scalar>::constant(p[k]);
    return acc;
}

/// Polynomial long division: returns (quotient, remainder) with num = q*den + r.
template <typename Scalar>
std::pair<Polynomial<Scalar>, Polynomial<Scalar>> divmod(const Polynomial<Scalar>& num,
                                                         const Polynomial<Scalar>& den) {
    if (den.is_zero()) throw Error(ErrorKind::DegenerateInput, "polynomial division by zero");
    if (num.degree() < den.degree()) return {Polynomial<Scalar>{}, num};
    auto rem = num.coeffs();
    const int n = num.degree();
    const int m = den.degree();
    typename Polynomial<Scalar>::Coeffs quot(static_cast<std::size_t>(n - m) + 1, Scalar(0));
    const Scalar lead = den.leading();
    for (int k = n - m; k >= 0; --k) {
        const Scalar q = rem[static_cast<std::size_t>(k + m)] / lead;
        quot[static_cast<std::size_t>(k)] = q;
        for (int j = 0; j <= m; ++j) rem[static_cast<std::size_t>(k + j)] -= q * den[static_cast<std::size_t>(j)];
        rem[static_cast<std::size_t>(k + m)] = Scalar(0);
    }
    rem.resize(static_cast<std::size_t>(m));
    return {Polynomial<Scalar>(std::move(quot)), Polynomial<Scalar>(std::move(rem))};
}

/// Divides p by (z - c); returns (quotient, p(c)).
template <typename Scalar>
std::pair<Polynomial<Scalar>, Scalar> synthetic_divide(const Polynomial<Scalar>& p, Scalar c) {
    if (p.degree() < 1) return {Polynomial<Scalar>{}, p[0]};
    typename Polynomial<Scalar>::Coeffs quot(p.size() - 1);
    Scalar acc(0);
    for (int k = p.degree(); k >= 1; --k) {
        acc = acc * c + p[static_cast<std::size_t>(k)];
        quot[static_cast<std::size_t>(k - 1)] = acc;
    }
    const Scalar value = acc * c + p[0];
    return {Polynomial<Scalar>(std::move(quot)), value};
}

/// Coefficients of p(c + t) in ascending powers of t (Taylor coefficients at c).
template <typename Scalar>
std::vector<Scalar> taylor_shift(const Polynomial<Scalar>& p, Scalar c) {
    std::vector<Scalar> work = p.coeffs();
    const std::size_t n = work.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = n - 1; k > i; --k) work[k - 1] += c * work[k];
    return work;
}

template <typename Scalar>
Polynomial<Scalar> monic(const Polynomial<Scalar>& p) {
    if (p.is_zero()) return p;
    return p / p.leading();
}

template <typename Scalar>
Polynomial<Scalar> from_roots(std::span<const Scalar> roots, Scalar lead = Scalar(1)) {
    auto out = Polynomial<Scalar>::constant(lead);
    for (const auto& r : roots) out *= Polynomial<Scalar>::linear(r);
    return out;
}

/// Monic approximate GCD by the Euclidean algorithm. A remainder is treated as
/// zero once it falls below tol relative to the dividend's scale.
template <typename Scalar>
Polynomial<Scalar> gcd(Polynomial<Scalar> a, Polynomial<Scalar> b, double tol = zero_tolerance()) {
    using Real = RealOf_t<Scalar>;
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    a /= Scalar(a.max_abs());
    b /= Scalar(b.max_abs());
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero() && b.degree() > 0) {
        auto [q, r] = divmod(a, b);
        const Real scale = std::max<Real>({Real(1), q.max_abs(), a.max_abs()});
        a = std::move(b);
        if (r.is_zero() || r.max_abs() <= static_cast<Real>(tol) * scale) return monic(a);
        b = r / Scalar(r.max_abs());
    }
    return Polynomial<Scalar>::constant(Scalar(1));
}

/// Sylvester-matrix resultant with the convention
/// res(p, q) = lead(p)^deg q * lead(q)^deg p * prod (r_i - s_j).
template <typename Scalar>
Scalar resultant(const Polynomial<Scalar>& p, const Polynomial<Scalar>& q) {
    if (p.is_zero() || q.is_zero()) throw Error(ErrorKind::DegenerateInput, "resultant of the zero polynomial");
    const int m = p.degree();
    const int n = q.degree();
    const int size = m + n;
    if (size == 0) return Scalar(1);
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Matrix syl = Matrix::Zero(size, size);
    for (int row = 0; row < n; ++row)
        for (int k = 0; k <= m; ++k) syl(row, row + k) = p[static_cast<std::size_t>(m - k)];
    for (int row = 0; row < m; ++row)
        for (int k = 0; k <= n; ++k) syl(n + row, row + k) = q[static_cast<std::size_t>(n - k)];
    return syl.partialPivLu().determinant();
}

/// disc(p) = (-1)^(n(n-1)/2) / lead(p) * res(p, p').
template <typename Scalar>
Scalar discriminant(const Polynomial<Scalar>& p) {
    const int n = p.degree();
    if (n < 2) throw Error(ErrorKind::DegenerateInput, "discriminant needs degree >= 2");
    const Scalar sign = ((n * (n - 1) / 2) % 2 == 0) ? Scalar(1) : Scalar(-1);
    return sign * resultant(p, derivative(p)) / p.leading();
}

/// All roots with multiplicity, by Aberth-Ehrlich simultaneous iteration.
/// Initial guesses sit on a circle whose radius comes from the coefficient
/// magnitudes, so results are reproducible. Output is sorted lexicographically
/// by (re, im) after rounding at tol.
template <typename Scalar>
std::vector<Scalar> roots(const Polynomial<Scalar>& p, double tol = 1e-10, int max_iterations = 1000) {
    using Real = RealOf_t<Scalar>;
    if (p.degree() < 1) throw Error(ErrorKind::DegenerateInput, "roots need degree >= 1");

    std::vector<Scalar> out;
    // Exact zero roots are split off first.
    std::size_t low = 0;
    const Real zthreshold = static_cast<Real>(zero_tolerance()) * (Real(1) + p.max_abs());
    while (low < p.size() - 1 && std::abs(p[low]) <= zthreshold) {
        out.emplace_back(Scalar(0));
        ++low;
    }
    const Polynomial<Scalar> reduced(typename Polynomial<Scalar>::Coeffs(p.coeffs().begin() + static_cast<long>(low),
                                                                         p.coeffs().end()));
    const int n = reduced.degree();
    if (n >= 1) {
        const Polynomial<Scalar> dp = derivative(reduced);
        const Real radius = std::pow(std::abs(reduced[0] / reduced.leading()), Real(1) / static_cast<Real>(n));
        std::vector<Scalar> z(static_cast<std::size_t>(n));
        const Real two_pi = 2 * std::numbers::pi_v<Real>;
        for (int k = 0; k < n; ++k)
            z[static_cast<std::size_t>(k)] =
                std::polar(radius, two_pi * static_cast<Real>(k) / static_cast<Real>(n) + Real(0.4));
        std::vector<bool> done(static_cast<std::size_t>(n), false);
        const Real eps = std::numeric_limits<Real>::epsilon();
        int remaining = n;
        for (int it = 0; it < max_iterations && remaining > 0; ++it) {
            for (std::size_t k = 0; k < z.size(); ++k) {
                if (done[k]) continue;
                const Scalar pz = reduced(z[k]);
                if (std::abs(pz) <= Real(4) * static_cast<Real>(n) * eps * reduced.abs_eval(z[k])) {
                    done[k] = true;
                    --remaining;
                    continue;
                }
                const Scalar ratio = pz / dp(z[k]);
                Scalar sum(0);
                for (std::size_t j = 0; j < z.size(); ++j)
                    if (j != k) sum += Scalar(1) / (z[k] - z[j]);
                const Scalar step = ratio / (Scalar(1) - ratio * sum);
                if (!std::isfinite(std::abs(step))) continue;
                z[k] -= step;
            }
        }
        if (remaining > 0) throw Error(ErrorKind::NonConvergence, "root iteration did not converge");
        out.insert(out.end(), z.begin(), z.end());
    }

    const Real grid = static_cast<Real>(tol);
    auto key = [grid](const Scalar& c) {
        return std::pair<Real, Real>(std::round(c.real() / grid), std::round(c.imag() / grid));
    };
    std::stable_sort(out.begin(), out.end(), [&](const Scalar& a, const Scalar& b) { return key(a) < key(b); });
    return out;
}

template <typename Scalar>
struct RootCluster {
    Scalar point;
    int multiplicity;
};

/// Groups roots by single linkage at relative distance cluster_tol and refines
/// each cluster of multiplicity m by Newton on the (m-1)-th derivative.
/// A root of multiplicity m splits by roughly eps^(1/m), hence the loose default.
template <typename Scalar>
std::vector<RootCluster<Scalar>> distinct_roots(const Polynomial<Scalar>& p, double cluster_tol = 1e-4) {
    using Real = RealOf_t<Scalar>;
    const auto all = roots(p);
    const std::size_t n = all.size();
    std::vector<std::size_t> label(n);
    for (std::size_t i = 0; i < n; ++i) label[i] = i;
    auto find = [&](std::size_t i) {
        while (label[i] != i) i = label[i] = label[label[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Real scale = Real(1) + std::max(std::abs(all[i]), std::abs(all[j]));
            if (std::abs(all[i] - all[j]) <= static_cast<Real>(cluster_tol) * scale) label[find(j)] = find(i);
        }
    std::vector<RootCluster<Scalar>> clusters;
    std::vector<std::size_t> heads;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t h = find(i);
        std::size_t k = 0;
        while (k < heads.size() && heads[k] != h) ++k;
        if (k == heads.size()) {
            heads.push_back(h);
            clusters.push_back({Scalar(0), 0});
        }
        clusters[k].point += all[i];
        ++clusters[k].multiplicity;
    }
    for (auto& cl : clusters) cl.point /= static_cast<Real>(cl.multiplicity);
    for (auto& cl : clusters) {
        if (cl.multiplicity < 2) continue;
        const auto dk = derivative(p, cl.multiplicity - 1);
        const auto dk1 = derivative(dk);
        for (int it = 0; it < 8; ++it) {
            const Scalar d = dk1(cl.point);
            if (std::abs(d) == Real(0)) break;
            const Scalar step = dk(cl.point) / d;
            cl.point -= step;
            if (std::abs(step) <= std::numeric_limits<Real>::epsilon() * (Real(1) + std::abs(cl.point))) break;
        }
    }
    return clusters;
}

}  // namespace sprim
