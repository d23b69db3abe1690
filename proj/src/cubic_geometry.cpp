#include "sprim/cubic_geometry.hpp"

#include <cmath>
#include <numbers>

namespace sprim {

void FourPointSet::validate(double tol) const {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (near(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)], tol))
                throw Error(ErrorKind::DegenerateInput, "four-point set has repeated points");
}

std::vector<Complex> CrossRatioOrbit::distinct(double tol) const {
    std::vector<Complex> out;
    for (const auto& v : values) {
        bool seen = false;
        for (const auto& o : out) seen = seen || std::abs(o - v) <= tol * (1 + std::abs(v));
        if (!seen) out.push_back(v);
    }
    return out;
}

bool CrossRatioOrbit::contains(Complex t, double tol) const {
    for (const auto& v : values)
        if (std::abs(v - t) <= tol * (1 + std::abs(t))) return true;
    return false;
}

Complex cross_ratio(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c, const SpherePoint& d) {
    FourPointSet({a, b, c, d}).validate();
    std::array<SpherePoint, 4> pts{a, b, c, d};
    bool has_inf = false;
    double radius = 0;
    for (const auto& p : pts) {
        if (p.is_infinity()) has_inf = true;
        else radius = std::max(radius, std::abs(p.value()));
    }
    if (has_inf) {
        // z -> 1/(z - s) with s off every finite point sends infinity to 0.
        const MobiusMap move(0, 1, 1, -(radius + 1));
        for (auto& p : pts) p = move(p);
    }
    const Complex x = pts[0].value(), y = pts[1].value(), z = pts[2].value(), w = pts[3].value();
    return (x - z) * (y - w) / ((z - y) * (w - x));
}

CrossRatioOrbit ratio_orbit(Complex t) {
    if (std::abs(t) <= 1e-14 || std::abs(t - 1.0) <= 1e-14)
        throw Error(ErrorKind::DegenerateInput, "cross ratio orbit undefined for t in {0, 1}");
    return {{t, 1.0 / t, 1.0 - t, 1.0 / (1.0 - t), t / (t - 1.0), (t - 1.0) / t}};
}

bool is_regular_tetrahedron(const FourPointSet& v, double tol) {
    v.validate();
    const auto orbit = ratio_orbit(cross_ratio(v.points[0], v.points[1], v.points[2], v.points[3]));
    const Complex j = kCubeRootOfUnity;
    return orbit.contains(-j, tol) || orbit.contains(-j * j, tol);
}

Complex criticality_discriminant(const std::array<Complex, 4>& w) {
    return w[2] * w[2] + 12.0 * w[0] - 3.0 * w[1] * w[3];
}

std::vector<NormalizedMapCoords> cubic_fiber_explicit(const std::array<Complex, 4>& w, double tol) {
    const Complex b1 = w[3] / 2.0;
    const Complex a0 = -w[1] / 2.0;
    const Complex root = std::sqrt(criticality_discriminant(w));
    const double scale = 1 + std::abs(w[2]) + std::sqrt(12 * std::abs(w[0]) + 3 * std::abs(w[1] * w[3]));
    auto branch = [&](Complex s) {
        return NormalizedMapCoords{2, {a0, (-w[2] + s) / 2.0}, {(w[2] + s) / 6.0, b1}};
    };
    if (std::abs(root) <= tol * scale) return {branch(Complex(0))};
    return {branch(root), branch(-root)};
}

RationalMap h_alpha(Complex alpha) {
    if (std::abs(std::pow(alpha, 6) - 1.0) <= 1e-10)
        throw Error(ErrorKind::DegenerateInput, "h_alpha degenerates when alpha^6 = 1");
    return RationalMap(ComplexPolynomial{2.0 * alpha, 0.0, 3.0, alpha}, ComplexPolynomial{1.0, 3.0 * alpha, 0.0, 2.0});
}

std::array<MobiusMap, 3> four_group(const FourPointSet& v) {
    v.validate();
    const auto& [a, b, c, d] = v.points;
    // (first, second, third) -> images; the fourth point's image is checked.
    struct Spec {
        std::array<SpherePoint, 3> src, dst;
        SpherePoint fourth, fourth_image;
    };
    const std::array<Spec, 3> specs{{
        {{a, b, c}, {b, a, d}, d, c},
        {{a, c, b}, {c, a, d}, d, b},
        {{a, d, b}, {d, a, c}, c, b},
    }};
    std::array<MobiusMap, 3> out;
    for (std::size_t i = 0; i < 3; ++i) {
        out[i] = mobius_from_triples(specs[i].src, specs[i].dst);
        if (chordal_distance(out[i](specs[i].fourth), specs[i].fourth_image) > 1e-8)
            throw Error(ErrorKind::DegenerateInput, "four-group element does not preserve the set");
    }
    return out;
}

LiftCorrespondence lift_correspondence(const RationalMap& f) {
    if (f.degree() != 3) throw Error(ErrorKind::DegenerateInput, "lift correspondence needs a cubic map");
    const auto crit = critical_points(f);
    if (crit.size() != 4) throw Error(ErrorKind::DegenerateInput, "cubic needs four distinct critical points");
    LiftCorrespondence out;
    for (std::size_t i = 0; i < 4; ++i) {
        out.critical_points.points[i] = crit[i].point;
        out.critical_values.points[i] = f(crit[i].point);
    }
    out.critical_points.validate(1e-9);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (chordal_distance(out.critical_values.points[static_cast<std::size_t>(i)],
                                 out.critical_values.points[static_cast<std::size_t>(j)]) <= 1e-8)
                throw Error(ErrorKind::DegenerateInput, "critical values collide");

    // Both groups are built with the same labelling, so M_1k pairs with N_1k.
    const auto ms = four_group(out.critical_points);
    const auto ns = four_group(out.critical_values);
    for (std::size_t i = 0; i < 3; ++i) {
        LiftPair pair{ms[i], ns[i], 0};
        for (int s = 0; s < 20; ++s) {
            const Complex z = std::polar(0.3 + 0.11 * s, 0.7 + 2.39996 * s);
            const auto lhs = f(ms[i](SpherePoint(z)));
            const auto rhs = ns[i](f(SpherePoint(z)));
            pair.residual = std::max(pair.residual, chordal_distance(lhs, rhs));
        }
        out.pairs[i] = pair;
    }
    return out;
}

}  // namespace sprim
