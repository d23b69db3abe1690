#include "sprim/primitivity.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace sprim {

namespace {

using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

Matrix banded_matrix(int d, std::span<const Complex> a) {
    const auto k = k_coefficients(d);
    Matrix m = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) m(i, j) = a[static_cast<std::size_t>(i - j)];
        if (i + 1 < d) m(i, i + 1) = k[static_cast<std::size_t>(i)];
    }
    return m;
}

EquationCheck make_check(std::string name, Complex residual, double scale) {
    const double r = std::abs(residual);
    return {std::move(name), r, r <= 1e-8 * (1 + scale)};
}

}  // namespace

const char* to_string(HolonomyClass::Kind kind) {
    switch (kind) {
        case HolonomyClass::Kind::Elliptic: return "Elliptic";
        case HolonomyClass::Kind::ParabolicNonIntegerZero: return "ParabolicNonIntegerZero";
        case HolonomyClass::Kind::ParabolicObstructed: return "ParabolicObstructed";
        case HolonomyClass::Kind::Identity: return "Identity";
    }
    return "Unknown";
}

const char* to_string(RationalVariant variant) {
    switch (variant) {
        case RationalVariant::AllL_E123: return "AllL_E123";
        case RationalVariant::DropLastL: return "DropLastL";
        case RationalVariant::DropE3: return "DropE3";
        case RationalVariant::Eremenko_E2only: return "Eremenko_E2only";
    }
    return "Unknown";
}

std::vector<Complex> k_coefficients(int d) {
    if (d < 1) throw Error(ErrorKind::DegenerateInput, "local degree must be >= 1");
    std::vector<Complex> k;
    for (int j = 1; j < d; ++j) k.emplace_back(2.0 * j * (j - d));
    return k;
}

Complex condition_determinant(int d, std::span<const Complex> a) {
    if (d < 1 || static_cast<int>(a.size()) < d)
        throw Error(ErrorKind::DegenerateInput, "determinant needs a_1 .. a_d");
    return banded_matrix(d, a).partialPivLu().determinant();
}

Complex determinant_slope(int d, std::span<const Complex> x) {
    if (d < 1 || static_cast<int>(x.size()) < d - 1)
        throw Error(ErrorKind::DegenerateInput, "needs x_1 .. x_{d-1}");
    std::vector<Complex> a(x.begin(), x.begin() + (d - 1));
    a.push_back(Complex(0));
    const Complex at_zero = condition_determinant(d, a);
    a.back() = Complex(1);
    return condition_determinant(d, a) - at_zero;
}

Complex y_polynomial(int d, std::span<const Complex> x) {
    if (d < 1 || static_cast<int>(x.size()) < d - 1)
        throw Error(ErrorKind::DegenerateInput, "needs x_1 .. x_{d-1}");
    std::vector<Complex> a(x.begin(), x.begin() + (d - 1));
    a.push_back(Complex(0));
    const Complex at_zero = condition_determinant(d, a);
    return -at_zero / determinant_slope(d, x);
}

Complex series_obstruction(int d, const TruncatedSeries& q) {
    if (d < 1) throw Error(ErrorKind::DegenerateInput, "local degree must be >= 1");
    if (q.order() < d) throw Error(ErrorKind::DegenerateInput, "series obstruction needs a_1 .. a_d");
    // -k_n c_n = sum_{j<n} a_{n-j} c_j with exponent -d, so k_n = 2n(n+d) never vanishes.
    const auto n_terms = static_cast<std::size_t>(d) + 1;
    std::vector<Complex> c(n_terms, Complex(0));
    c[0] = 1;
    for (std::size_t n = 1; n < n_terms; ++n) {
        Complex rhs(0);
        for (std::size_t j = 0; j < n; ++j) rhs += q[n - j - 1] * c[j];
        c[n] = -rhs / (2.0 * static_cast<double>(n) * static_cast<double>(static_cast<int>(n) + d));
    }
    const TruncatedSeries g(Complex(0), c);
    return reciprocal(g * g)[static_cast<std::size_t>(d)];
}

HolonomyClass classify_holonomy(const LaurentData& germ, const TruncatedSeries& q_tail, double tol) {
    HolonomyClass out;
    Complex delta = std::sqrt(Complex(1) - 2.0 * germ.leading);
    if (delta.real() < 0 || (delta.real() == 0 && delta.imag() < 0)) delta = -delta;
    out.delta = delta;
    const double rounded = std::round(delta.real());
    if (std::abs(delta - rounded) <= tol * (1 + std::abs(delta))) {
        const int d = static_cast<int>(rounded);
        if (d == 0) {
            out.kind = HolonomyClass::Kind::ParabolicNonIntegerZero;
            return out;
        }
        double scale = 0;
        for (const auto& a : q_tail.coeffs()) scale = std::max(scale, std::abs(a));
        const Complex b = series_obstruction(d, q_tail);
        if (std::abs(b) <= tol * (1 + scale)) {
            out.kind = HolonomyClass::Kind::Identity;
        } else {
            out.kind = HolonomyClass::Kind::ParabolicObstructed;
            out.obstruction = b;
        }
        return out;
    }
    out.kind = HolonomyClass::Kind::Elliptic;
    out.multiplier = std::exp(Complex(0, 2 * std::numbers::pi) * delta);
    out.unitary = std::abs(std::abs(out.multiplier) - 1) <= tol;
    return out;
}

HolonomyClass classify_holonomy(const LaurentData& germ, double tol) {
    return classify_holonomy(germ, germ.q(), tol);
}

std::vector<Complex> L_values(const CriticalConfiguration& config) {
    config.validate();
    const auto& c = config.points;
    const auto& A = config.params;
    std::vector<Complex> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        Complex sum(0);
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (j == i) continue;
            const Complex diff = c[i] - c[j];
            sum += (A[j] * diff + 1.0) / (diff * diff);
        }
        out.push_back(3.0 * A[i] * A[i] - 4.0 * sum);
    }
    return out;
}

RationalMap build_phi(const CriticalConfiguration& config) {
    config.validate();
    const auto& c = config.points;
    std::vector<ComplexPolynomial> squares;
    for (const auto& ci : c) {
        const auto lin = ComplexPolynomial::linear(ci);
        squares.push_back(lin * lin);
    }
    ComplexPolynomial num;
    ComplexPolynomial den = ComplexPolynomial::constant(1);
    for (std::size_t i = 0; i < c.size(); ++i) {
        ComplexPolynomial term{1.0 - config.params[i] * c[i], config.params[i]};
        for (std::size_t j = 0; j < c.size(); ++j)
            if (j != i) term *= squares[j];
        num += term;
        den *= squares[i];
    }
    return RationalMap(num * Complex(-1.5), den);
}

namespace {

/// Scales used by the residual tests: the sums of absolute term sizes.
std::vector<double> l_scales(const CriticalConfiguration& config) {
    const auto& c = config.points;
    const auto& A = config.params;
    std::vector<double> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        double s = 3 * std::norm(A[i]);
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (j == i) continue;
            const Complex diff = c[i] - c[j];
            s += 4 * (std::abs(A[j]) / std::abs(diff) + 1 / std::norm(diff));
        }
        out.push_back(s);
    }
    return out;
}

double e_scale(const CriticalConfiguration& config, int m) {
    double s = 0;
    for (std::size_t i = 0; i < config.points.size(); ++i) {
        const double r = std::abs(config.points[i]);
        if (m > 0) s += m * std::pow(r, m - 1);
        s += std::pow(r, m) * std::abs(config.params[i]);
    }
    return s;
}

}  // namespace

DecisionRecord check_rational_criterion(const CriticalConfiguration& config, RationalVariant variant) {
    config.validate();
    const std::size_t k = config.points.size();
    if (k < 2 || k % 2 != 0)
        throw Error(ErrorKind::DegenerateInput, "rational criterion needs 2d-2 points for some d >= 2");
    const auto L = L_values(config);
    const auto E = e_sums(config, 3);
    const auto ls = l_scales(config);

    DecisionRecord rec;
    rec.variant = to_string(variant);
    for (std::size_t i = 0; i < k; ++i) {
        auto check = make_check("L_" + std::to_string(i + 1), L[i], ls[i]);
        const bool drop = variant == RationalVariant::DropLastL && i + 1 == k;
        (drop ? rec.dropped : rec.equations).push_back(std::move(check));
    }
    for (int m = 0; m < 3; ++m) {
        auto check = make_check("E_" + std::to_string(m + 1), E[static_cast<std::size_t>(m)], e_scale(config, m));
        bool drop = false;
        if (variant == RationalVariant::DropE3) drop = m == 2;
        if (variant == RationalVariant::Eremenko_E2only) drop = m != 1;
        (drop ? rec.dropped : rec.equations).push_back(std::move(check));
    }
    rec.overall = true;
    for (const auto& eq : rec.equations) rec.overall = rec.overall && eq.pass;
    if (variant == RationalVariant::Eremenko_E2only) rec.note = "external claim";
    return rec;
}

DecisionRecord check_polynomial_system(const CriticalConfiguration& config) {
    config.validate();
    const std::size_t k = config.points.size();
    const auto L = L_values(config);
    const auto E = e_sums(config, 2);
    const auto ls = l_scales(config);
    DecisionRecord rec;
    rec.variant = "polynomial";
    for (std::size_t i = 0; i < k; ++i) rec.equations.push_back(make_check("L_" + std::to_string(i + 1), L[i], ls[i]));
    rec.equations.push_back(make_check("E_1", E[0], e_scale(config, 0)));
    const double kk = static_cast<double>(k) + 1;
    const Complex target = (1 - kk * kk) / 2;
    rec.equations.push_back(make_check("E_2_leading", -1.5 * E[1] - target, 1.5 * e_scale(config, 1) + std::abs(target)));
    rec.overall = true;
    for (const auto& eq : rec.equations) rec.overall = rec.overall && eq.pass;
    return rec;
}

PolynomialCriterion check_polynomial_criterion(std::span<const Complex> points) {
    if (points.empty()) throw Error(ErrorKind::DegenerateInput, "polynomial criterion needs at least one point");
    CriticalConfiguration config{{points.begin(), points.end()}, {}};
    for (std::size_t i = 0; i < points.size(); ++i) {
        Complex sum(0);
        for (std::size_t j = 0; j < points.size(); ++j)
            if (j != i) sum += 1.0 / (points[i] - points[j]);
        config.params.push_back(2.0 / 3.0 * sum);
    }
    config.validate();
    auto record = check_polynomial_system(config);
    return {std::move(config), std::move(record)};
}

RationalMap merom_generator(std::span<const Complex> points, std::span<const Complex> residues,
                            const ComplexPolynomial& entire) {
    const CriticalConfiguration shape{{points.begin(), points.end()}, {residues.begin(), residues.end()}};
    shape.validate();
    const std::size_t k = points.size();
    const auto& c = shape.points;
    const auto& r = shape.params;

    std::vector<ComplexPolynomial> lin, squares;
    for (const auto& ci : c) {
        lin.push_back(ComplexPolynomial::linear(ci));
        squares.push_back(lin.back() * lin.back());
    }
    ComplexPolynomial prod_lin = ComplexPolynomial::constant(1), prod_sq = ComplexPolynomial::constant(1);
    for (std::size_t i = 0; i < k; ++i) {
        prod_lin *= lin[i];
        prod_sq *= squares[i];
    }

    // Principal parts over the common denominator prod (z - c_i)^2.
    ComplexPolynomial num;
    // Polynomial part: sum (-r_i^2/2 - v_i) e_i(z) + G(z) prod (z - c_i).
    ComplexPolynomial poly_part = entire * prod_lin;
    for (std::size_t i = 0; i < k; ++i) {
        ComplexPolynomial principal{-1.5 - r[i] * c[i], r[i]};
        ComplexPolynomial lagrange = ComplexPolynomial::constant(1);
        Complex v(0);
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            principal *= squares[j];
            lagrange *= lin[j] / (c[i] - c[j]);
            const Complex diff = c[i] - c[j];
            v += -1.5 / (diff * diff) + r[j] / diff;
        }
        num += principal;
        poly_part += lagrange * (-0.5 * r[i] * r[i] - v);
    }
    num += poly_part * prod_sq;
    return RationalMap(num, prod_sq);
}

CriticalConfiguration extract_configuration(const RationalMap& phi, std::span<const Complex> points, double tol) {
    CriticalConfiguration config{{points.begin(), points.end()}, {}};
    for (const auto& c : points) {
        const auto germ = laurent_at(phi, c, 2);
        if (std::abs(germ.leading + 1.5) > tol * 1.5)
            throw Error(ErrorKind::DegenerateInput, "pole without leading coefficient -3/2");
        config.params.push_back(-2.0 / 3.0 * germ.tail[0]);
    }
    config.validate();
    return config;
}

}  // namespace sprim
