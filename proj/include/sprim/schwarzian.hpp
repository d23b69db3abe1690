#pragma once

#include <optional>
#include <vector>

#include "sprim/rational.hpp"
#include "sprim/series.hpp"

namespace sprim {

/// Critical points c_i with companion residue parameters A_i of
///   phi(z) = -3/2 sum (A_i (z - c_i) + 1) / (z - c_i)^2.
struct CriticalConfiguration {
    std::vector<Complex> points;
    std::vector<Complex> params;

    /// Throws DegenerateInput unless the points are pairwise distinct and sized like params.
    void validate(double tol = 1e-12) const;
};

/// Laurent germ (z - c)^2 phi(z) = leading + a_1 (z - c) + a_2 (z - c)^2 + ...
struct LaurentData {
    SpherePoint pole = SpherePoint(0.0);
    Complex leading;
    std::vector<Complex> tail;  // a_1 ... a_N
    std::optional<int> local_degree;

    /// q(z) = a_1 + a_2 z + ..., the series driving the local ODE.
    TruncatedSeries q() const;
};

struct InfinityType {
    enum class Kind { TriplePole, DoublePole, SimplePole, Regular };
    Kind kind = Kind::Regular;
    Complex leading;  // meaningful for DoublePole only
};

const char* to_string(InfinityType::Kind kind);

struct CriticalPoint {
    SpherePoint point;
    int local_degree;
};

/// S_f = f'''/f' - 3/2 (f''/f')^2 by exact rational calculus. With W the
/// Wronskian of f = N/D,
///   S_f = [2 W (N'''D - N D''' + 3(N''D' - N'D'')) - 3 W'^2] / (2 W^2).
RationalMap schwarzian(const RationalMap& f);

/// Critical points of f with local degrees, infinity included when critical.
std::vector<CriticalPoint> critical_points(const RationalMap& f);

/// d with leading = (1 - d^2)/2 when that holds for an integer d >= 1.
std::optional<int> integer_local_degree(Complex leading, double tol = 1e-8);

/// Expansion of phi at c through a_N. Throws PoleTooHigh if c is a pole of
/// order greater than 2. root_tol decides when c divides the denominator.
LaurentData laurent_at(const RationalMap& phi, Complex c, int order, double root_tol = 1e-9);

/// Classifies infinity for phi dz^2 via Phi(w) = phi(1/w) w^-4. Throws
/// PoleTooHigh when Phi has a pole of order above 3 at w = 0.
InfinityType infinity_type(const RationalMap& phi);

/// E_1 ... E_count with E_{m+1} = sum_i (m c_i^(m-1) + c_i^m A_i); the m = 0
/// derivative term is taken as 0.
std::vector<Complex> e_sums(const CriticalConfiguration& config, int count);

}  // namespace sprim
