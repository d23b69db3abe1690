#pragma once

#include <string>
#include <vector>

#include "sprim/schwarzian.hpp"

namespace sprim {

/// Conjugacy class of the holonomy generator around a puncture.
struct HolonomyClass {
    enum class Kind { Elliptic, ParabolicNonIntegerZero, ParabolicObstructed, Identity };
    Kind kind = Kind::Identity;
    Complex multiplier;   // Elliptic: exp(2 pi i delta)
    Complex obstruction;  // ParabolicObstructed: the log coefficient
    Complex delta;        // exponent with (1 - delta^2)/2 = leading, Re delta >= 0
    bool unitary = true;  // Elliptic only: |multiplier| == 1
};

const char* to_string(HolonomyClass::Kind kind);

/// One checked equation of a criterion.
struct EquationCheck {
    std::string name;
    double residual = 0;
    bool pass = false;
};

struct DecisionRecord {
    std::string variant;
    std::vector<EquationCheck> equations;  // the system being decided
    std::vector<EquationCheck> dropped;    // evaluated for reference, not part of the decision
    bool overall = false;
    std::string note;
};

enum class RationalVariant { AllL_E123, DropLastL, DropE3, Eremenko_E2only };

const char* to_string(RationalVariant variant);

/// k_j = 2 j (j - d) for j = 1 .. d-1.
std::vector<Complex> k_coefficients(int d);

/// The d x d banded determinant in a_1 .. a_d whose vanishing is necessary and
/// sufficient for a meromorphic primitive at a pole with leading (1 - d^2)/2.
Complex condition_determinant(int d, std::span<const Complex> a);

/// Coefficient N of x_d in the determinant (it is affine in x_d).
Complex determinant_slope(int d, std::span<const Complex> x);

/// Y_d(x_1 .. x_{d-1}): the value of x_d that makes the determinant vanish.
Complex y_polynomial(int d, std::span<const Complex> x);

/// Coefficient of z^d in g^-2 where g solves the local ODE with exponent -d.
/// Vanishes exactly when condition_determinant(d, .) does.
Complex series_obstruction(int d, const TruncatedSeries& q);

HolonomyClass classify_holonomy(const LaurentData& germ, const TruncatedSeries& q_tail, double tol = 1e-8);
HolonomyClass classify_holonomy(const LaurentData& germ, double tol = 1e-8);

/// L_i = 3 A_i^2 - 4 sum_{j != i} (A_j (c_i - c_j) + 1) / (c_i - c_j)^2.
std::vector<Complex> L_values(const CriticalConfiguration& config);

/// phi(z) = -3/2 sum (A_i (z - c_i) + 1) / (z - c_i)^2.
RationalMap build_phi(const CriticalConfiguration& config);

/// Rational-map criterion for 2d-2 simple critical points; variant selects
/// which equations decide, the others are reported as dropped.
DecisionRecord check_rational_criterion(const CriticalConfiguration& config, RationalVariant variant);

/// Polynomial criterion for a given configuration: L_i = 0, E_1 = 0 and
/// -3/2 E_2 = (1 - (k+1)^2)/2.
DecisionRecord check_polynomial_system(const CriticalConfiguration& config);

struct PolynomialCriterion {
    CriticalConfiguration config;
    DecisionRecord record;
};

/// Builds A_i = 2/3 sum_{j != i} 1/(c_i - c_j) and runs check_polynomial_system.
PolynomialCriterion check_polynomial_criterion(std::span<const Complex> points);

/// Schwarzian of a meromorphic function on the plane with simple critical
/// points at `points`, residues r_i and entire part G (polynomial here).
RationalMap merom_generator(std::span<const Complex> points, std::span<const Complex> residues,
                            const ComplexPolynomial& entire);

/// Recovers A_i = -2/3 a_1 from the Laurent data of phi at each point.
/// Throws DegenerateInput when some point does not carry leading -3/2.
CriticalConfiguration extract_configuration(const RationalMap& phi, std::span<const Complex> points,
                                            double tol = 1e-8);

}  // namespace sprim
