#include "sprim/schwarzian.hpp"

#include <cmath>

namespace sprim {

void CriticalConfiguration::validate(double tol) const {
    if (points.size() != params.size())
        throw Error(ErrorKind::DegenerateInput, "configuration needs one parameter per point");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (std::abs(points[i] - points[j]) <= tol * (1 + std::abs(points[i])))
                throw Error(ErrorKind::DegenerateInput, "configuration points must be distinct");
}

TruncatedSeries LaurentData::q() const {
    if (tail.empty()) return TruncatedSeries(pole.is_finite() ? pole.value() : Complex(0), {Complex(0)});
    return TruncatedSeries(pole.is_finite() ? pole.value() : Complex(0), tail);
}

const char* to_string(InfinityType::Kind kind) {
    switch (kind) {
        case InfinityType::Kind::TriplePole: return "TriplePole";
        case InfinityType::Kind::DoublePole: return "DoublePole";
        case InfinityType::Kind::SimplePole: return "SimplePole";
        case InfinityType::Kind::Regular: return "Regular";
    }
    return "Unknown";
}

RationalMap schwarzian(const RationalMap& f) {
    if (f.is_constant()) throw Error(ErrorKind::DegenerateInput, "Schwarzian of a constant map");
    const auto& n = f.num();
    const auto& d = f.den();
    const auto n1 = derivative(n), n2 = derivative(n1), n3 = derivative(n2);
    const auto d1 = derivative(d), d2 = derivative(d1), d3 = derivative(d2);
    const auto w = n1 * d - n * d1;
    const auto w1 = derivative(w);
    const auto t = n3 * d - n * d3 + Complex(3) * (n2 * d1 - n1 * d2);
    const auto num = Complex(2) * (w * t) - Complex(3) * (w1 * w1);
    return RationalMap(num, Complex(2) * (w * w));
}

std::vector<CriticalPoint> critical_points(const RationalMap& f) {
    if (f.is_constant()) throw Error(ErrorKind::DegenerateInput, "constant map has no critical structure");
    const auto w = wronskian_of(f);
    std::vector<CriticalPoint> out;
    if (w.degree() >= 1)
        for (const auto& cl : distinct_roots(w)) out.push_back({SpherePoint(cl.point), cl.multiplicity + 1});
    const int deficit = 2 * f.degree() - 2 - w.degree();
    if (deficit > 0) out.push_back({SpherePoint::infinity(), deficit + 1});
    return out;
}

std::optional<int> integer_local_degree(Complex leading, double tol) {
    const Complex delta = std::sqrt(Complex(1) - 2.0 * leading);
    const double rounded = std::round(delta.real());
    if (rounded < 1) return std::nullopt;
    const double expected = (1 - rounded * rounded) / 2;
    if (std::abs(leading - expected) <= tol * (1 + std::abs(leading))) return static_cast<int>(rounded);
    return std::nullopt;
}

LaurentData laurent_at(const RationalMap& phi, Complex c, int order, double root_tol) {
    if (order < 1) throw Error(ErrorKind::DegenerateInput, "Laurent order must be positive");
    ComplexPolynomial den = phi.den();
    int multiplicity = 0;
    while (den.degree() >= 1) {
        auto [quot, rem] = synthetic_divide(den, c);
        if (std::abs(rem) > root_tol * den.abs_eval(c)) break;
        den = std::move(quot);
        if (++multiplicity > 2) throw Error(ErrorKind::PoleTooHigh, "pole of order above 2");
    }

    // (z - c)^2 phi = num (z - c)^(2 - m) / den_reduced, expanded in t = z - c.
    auto num_t = taylor_shift(phi.num(), c);
    num_t.insert(num_t.begin(), static_cast<std::size_t>(2 - multiplicity), Complex(0));
    const auto den_t = taylor_shift(den, c);
    const auto coeffs = series_divide(num_t, den_t, static_cast<std::size_t>(order) + 1);

    LaurentData out;
    out.pole = SpherePoint(c);
    out.leading = coeffs[0];
    out.tail.assign(coeffs.begin() + 1, coeffs.end());
    out.local_degree = integer_local_degree(out.leading);
    return out;
}

InfinityType infinity_type(const RationalMap& phi) {
    if (phi.is_zero()) return {InfinityType::Kind::Regular, {}};
    const int pole_order = phi.num().degree() + 4 - phi.den().degree();
    if (pole_order > 3) throw Error(ErrorKind::PoleTooHigh, "pole of order above 3 at infinity");
    switch (pole_order) {
        case 3: return {InfinityType::Kind::TriplePole, {}};
        case 2: return {InfinityType::Kind::DoublePole, phi.num().leading() / phi.den().leading()};
        case 1: return {InfinityType::Kind::SimplePole, {}};
        default: return {InfinityType::Kind::Regular, {}};
    }
}

std::vector<Complex> e_sums(const CriticalConfiguration& config, int count) {
    config.validate();
    std::vector<Complex> out(static_cast<std::size_t>(std::max(count, 0)), Complex(0));
    for (std::size_t i = 0; i < config.points.size(); ++i) {
        const Complex c = config.points[i];
        Complex prev(0);  // c^(m-1)
        Complex power(1);  // c^m
        for (int m = 0; m < count; ++m) {
            out[static_cast<std::size_t>(m)] += static_cast<double>(m) * prev + power * config.params[i];
            prev = power;
            power *= c;
        }
    }
    return out;
}

}  // namespace sprim
