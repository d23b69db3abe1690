#pragma once

#include <array>
#include <vector>

#include "sprim/reconstruction.hpp"

namespace sprim {

/// Four pairwise distinct points of the sphere.
struct FourPointSet {
    std::array<SpherePoint, 4> points;

    /// Throws DegenerateInput on repeated points.
    void validate(double tol = 1e-12) const;
};

/// The six values of t under reordering of the four points:
/// t, 1/t, 1-t, 1/(1-t), t/(t-1), (t-1)/t.
struct CrossRatioOrbit {
    std::array<Complex, 6> values;

    /// Values with near-duplicates collapsed, in generation order.
    std::vector<Complex> distinct(double tol = 1e-10) const;
    bool contains(Complex t, double tol) const;
};

/// [a,b,c,d] = (a-c)(b-d) / ((c-b)(d-a)); infinity is moved to a finite
/// point by a Mobius change of coordinates before evaluation.
Complex cross_ratio(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c, const SpherePoint& d);

CrossRatioOrbit ratio_orbit(Complex t);

/// True when the points are a Mobius image of {1, j, j^2, 0}, i.e. the cross
/// ratio orbit meets (1 +- i sqrt 3)/2.
bool is_regular_tetrahedron(const FourPointSet& v, double tol = 1e-8);

/// w_2^2 + 12 w_0 - 3 w_1 w_3 for z^4 + w_3 z^3 + w_2 z^2 + w_1 z + w_0.
Complex criticality_discriminant(const std::array<Complex, 4>& w);

/// Explicit inverse of the cubic Wronskian operator. Two branches (+ then -
/// of the principal root), or one when the radicand vanishes within tol.
std::vector<NormalizedMapCoords> cubic_fiber_explicit(const std::array<Complex, 4>& w, double tol = 1e-9);

/// h_alpha(z) = (alpha (z^3 + 2) + 3 z^2) / (3 alpha z + 2 z^3 + 1), with
/// critical set {1, j, j^2, alpha^2}. Throws DegenerateInput when alpha^6 = 1.
RationalMap h_alpha(Complex alpha);

/// Involutions {M_ab, M_ac, M_ad} of the Klein four-group of v. M_ab sends
/// a, b, c to b, a, d and is checked to send d to c.
std::array<MobiusMap, 3> four_group(const FourPointSet& v);

struct LiftPair {
    MobiusMap source;  // acts on the critical points
    MobiusMap target;  // acts on the critical values
    double residual = 0;  // sup chordal distance of f o M and N o f on samples
};

struct LiftCorrespondence {
    FourPointSet critical_points;
    FourPointSet critical_values;
    std::array<LiftPair, 3> pairs;
};

/// Pairs M <-> N of the four-groups of the critical points and values with
/// f o M = N o f. Needs a cubic with four distinct critical points and values.
LiftCorrespondence lift_correspondence(const RationalMap& f);

}  // namespace sprim
