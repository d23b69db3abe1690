#include "sprim/reconstruction.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace sprim {

std::vector<Complex> NormalizedMapCoords::flat() const {
    std::vector<Complex> out(a_p);
    out.insert(out.end(), a_q.begin(), a_q.end());
    return out;
}

NormalizedMapCoords NormalizedMapCoords::from_flat(int mu, std::span<const Complex> a) {
    if (mu < 1 || static_cast<int>(a.size()) != 2 * mu)
        throw Error(ErrorKind::DegenerateInput, "normalized coordinates need 2 mu entries");
    return {mu, {a.begin(), a.begin() + mu}, {a.begin() + mu, a.end()}};
}

ComplexPolynomial numerator_poly(const NormalizedMapCoords& coords) {
    ComplexPolynomial::Coeffs p(coords.a_p);
    p.resize(static_cast<std::size_t>(coords.mu) + 2, Complex(0));
    p.back() = 1;
    return ComplexPolynomial(std::move(p));
}

ComplexPolynomial denominator_poly(const NormalizedMapCoords& coords) {
    ComplexPolynomial::Coeffs q(coords.a_q);
    q.resize(static_cast<std::size_t>(coords.mu) + 1, Complex(0));
    q.back() = 1;
    return ComplexPolynomial(std::move(q));
}

ComplexPolynomial wronskian(const NormalizedMapCoords& coords) {
    const auto a = coords.flat();
    return wronskian_flat<Complex>(coords.mu, a);
}

Eigen::MatrixXcd wronskian_jacobian(const NormalizedMapCoords& coords) {
    const auto a = coords.flat();
    return wronskian_jacobian_flat<Complex>(coords.mu, a);
}

std::uint64_t catalan(int d) {
    if (d < 1) throw Error(ErrorKind::DegenerateInput, "Catalan index must be >= 1");
    // C(2n, n) / (n + 1) with n = d - 1, built incrementally to stay exact.
    std::uint64_t c = 1;
    for (int n = 0; n < d - 1; ++n) c = c * 2 * (2 * static_cast<std::uint64_t>(n) + 1) / (static_cast<std::uint64_t>(n) + 2);
    return c;
}

TruncatedSeries local_g(int d, const TruncatedSeries& q, int order, double tol) {
    if (d < 1) throw Error(ErrorKind::DegenerateInput, "local degree must be >= 1");
    if (order < 1) throw Error(ErrorKind::DegenerateInput, "series order must be positive");
    std::vector<Complex> c(static_cast<std::size_t>(order), Complex(0));
    c[0] = 1;
    for (int n = 1; n < order; ++n) {
        Complex rhs(0);
        double scale = 0;
        for (int j = 0; j < n; ++j) {
            const Complex term = q[static_cast<std::size_t>(n - j - 1)] * c[static_cast<std::size_t>(j)];
            rhs += term;
            scale += std::abs(term);
        }
        if (n == d) {
            if (std::abs(rhs) > tol * (1 + scale)) throw ObstructionError(rhs);
            continue;  // free coefficient, fixed to 0
        }
        const double k = 2.0 * n * (n - d);
        c[static_cast<std::size_t>(n)] = -rhs / k;
    }
    return TruncatedSeries(q.base(), std::move(c));
}

TruncatedSeries local_primitive(const RationalMap& phi, Complex c, int order) {
    if (order < 2) throw Error(ErrorKind::DegenerateInput, "primitive order must be >= 2");
    const auto germ = laurent_at(phi, c, order);
    if (!germ.local_degree)
        throw Error(ErrorKind::DegenerateInput, "leading coefficient is not (1 - d^2)/2 for an integer d");
    const int d = *germ.local_degree;
    const auto g = local_g(d, TruncatedSeries(c, germ.tail), order);
    const auto inv_sq = reciprocal(g * g);
    // f_k = [t^(k-d)] g^-2 / k
    std::vector<Complex> f(static_cast<std::size_t>(order), Complex(0));
    for (int k = d; k < order; ++k) f[static_cast<std::size_t>(k)] = inv_sq[static_cast<std::size_t>(k - d)] / double(k);
    return TruncatedSeries(c, std::move(f));
}

int default_attempts(int mu) { return static_cast<int>(64 * catalan(mu + 1)); }

namespace {

using LComplex = std::complex<long double>;
using LVector = Eigen::Matrix<LComplex, Eigen::Dynamic, 1>;

long double max_norm(const LVector& v) {
    long double m = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v(i)));
    return m;
}

LVector residual(int mu, const LVector& a, const std::vector<LComplex>& target) {
    const auto w = wronskian_flat<LComplex>(mu, std::span<const LComplex>(a.data(), static_cast<std::size_t>(a.size())));
    LVector r(2 * mu);
    for (int k = 0; k < 2 * mu; ++k) r(k) = w[static_cast<std::size_t>(k)] - target[static_cast<std::size_t>(k)];
    return r;
}

/// Damped Newton from `start`; returns the final point and residual.
std::pair<LVector, long double> newton(int mu, LVector a, const std::vector<LComplex>& target, long double scale) {
    LVector r = residual(mu, a, target);
    long double rn = max_norm(r);
    const long double eps = std::numeric_limits<long double>::epsilon();
    for (int it = 0; it < 100; ++it) {
        if (rn <= 4 * eps * scale) break;
        const auto jac = wronskian_jacobian_flat<LComplex>(
            mu, std::span<const LComplex>(a.data(), static_cast<std::size_t>(a.size())));
        const LVector step = jac.partialPivLu().solve(-r);
        if (!std::isfinite(max_norm(step))) break;
        long double t = 1;
        bool accepted = false;
        for (int h = 0; h <= 20; ++h, t /= 2) {
            const LVector trial = a + t * step;
            const LVector rt = residual(mu, trial, target);
            const long double rtn = max_norm(rt);
            if (rtn < rn) {
                a = trial;
                r = rt;
                rn = rtn;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        if (t * max_norm(step) <= 4 * eps * (1 + max_norm(a))) break;
        if (max_norm(a) > 1e12L) break;
    }
    return {a, rn};
}

bool has_distinct_roots(const ComplexPolynomial& p) {
    const auto rs = roots(p);
    double scale = 1;
    for (const auto& r : rs) scale = std::max(scale, std::abs(r));
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = i + 1; j < rs.size(); ++j)
            if (std::abs(rs[i] - rs[j]) <= 1e-6 * scale) return false;
    return true;
}

}  // namespace

FiberSolveReport solve_fiber(const ComplexPolynomial& target_in, int attempts, std::uint64_t seed) {
    if (attempts < 1) throw Error(ErrorKind::DegenerateInput, "attempts must be >= 1");
    const int deg = target_in.degree();
    if (deg < 2 || deg % 2 != 0) throw Error(ErrorKind::DegenerateInput, "target must have even degree >= 2");
    const int mu = deg / 2;

    FiberSolveReport report;
    report.target = monic(target_in);
    report.attempts = attempts;
    report.seed = seed;
    report.expected_max = catalan(mu + 1);
    report.target_in_omega_prime = has_distinct_roots(report.target);

    std::vector<LComplex> target;
    for (int k = 0; k < deg; ++k) target.emplace_back(report.target[static_cast<std::size_t>(k)]);
    double coeff_max = 0;
    for (int k = 0; k < deg; ++k) coeff_max = std::max(coeff_max, std::abs(report.target[static_cast<std::size_t>(k)]));
    const double radius = 1 + std::pow(coeff_max, 1.0 / deg);
    const long double scale = 1 + coeff_max;
    const double accept = 1e-9 * std::max(1.0, coeff_max);

    std::vector<std::vector<Complex>> found;
    for (int start = 0; start < attempts; ++start) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(start)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        LVector a(2 * mu);
        for (int i = 0; i < 2 * mu; ++i) {
            const double r = radius * std::sqrt(unit(rng));
            const double theta = 2 * std::numbers::pi * unit(rng);
            a(i) = LComplex(std::polar(r, theta));
        }
        const auto [sol, rn] = newton(mu, a, target, scale);
        if (!(static_cast<double>(rn) <= accept)) continue;

        std::vector<Complex> coords;
        for (Eigen::Index i = 0; i < sol.size(); ++i) coords.emplace_back(sol(i));
        bool duplicate = false;
        for (const auto& f : found) {
            double dist = 0;
            for (std::size_t i = 0; i < f.size(); ++i) dist = std::max(dist, std::abs(f[i] - coords[i]));
            if (dist <= 1e-6) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;
        found.push_back(coords);
        report.residuals.push_back(static_cast<double>(rn));
    }

    for (const auto& coords : found) {
        auto sol = NormalizedMapCoords::from_flat(mu, coords);
        const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(wronskian_jacobian(sol));
        const auto& sv = svd.singularValues();
        const double smallest = sv(sv.size() - 1);
        const double cond = smallest > 0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
        report.jacobian_conditions.push_back(cond);
        // Newton reaches a singular root only linearly, so cond alone stays below 1e10 there.
        if (cond > 1e10 || smallest <= 1e-6 * std::max(1.0, sv(0))) report.ill_conditioned = true;
        report.solutions.push_back(std::move(sol));
    }
    if (report.solutions.empty()) report.warning = "no start converged";
    else if (!report.target_in_omega_prime) report.warning = "target has a repeated root";
    return report;
}

RationalMap coords_to_map(const NormalizedMapCoords& coords) {
    const auto p = numerator_poly(coords);
    const auto q = denominator_poly(coords);
    const double scale = std::pow(1 + p.max_abs(), q.degree()) * std::pow(1 + q.max_abs(), p.degree());
    if (std::abs(resultant(p, q)) <= 1e-10 * scale)
        throw Error(ErrorKind::DegenerateInput, "numerator and denominator share a root");
    return RationalMap(p, q);
}

RationalReconstruction reconstruct_rational(std::span<const Complex> points, int attempts, std::uint64_t seed) {
    if (points.size() < 2 || points.size() % 2 != 0)
        throw Error(ErrorKind::DegenerateInput, "need an even number (>= 2) of critical points");
    const CriticalConfiguration distinct{{points.begin(), points.end()},
                                         std::vector<Complex>(points.size(), Complex(0))};
    distinct.validate(1e-9);
    RationalReconstruction out;
    out.report = solve_fiber(from_roots<Complex>(points), attempts, seed);
    if (out.report.solutions.empty()) throw Error(ErrorKind::NoSolutionFound, "Wronskian fiber solver found no solution");
    for (const auto& s : out.report.solutions) out.maps.push_back(coords_to_map(s));
    return out;
}

}  // namespace sprim
