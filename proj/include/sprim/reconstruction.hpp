#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sprim/schwarzian.hpp"

namespace sprim {

/// Coordinates a = (a_p, a_q) of the normalized family
///   p_a(z) = sum a_p[i] z^i + 0 z^mu + z^(mu+1),
///   q_a(z) = sum a_q[i] z^i + z^mu,
/// and f_a = p_a / q_a, a rational map of degree mu + 1.
struct NormalizedMapCoords {
    int mu = 1;
    std::vector<Complex> a_p;
    std::vector<Complex> a_q;

    /// (a_p, a_q) flattened, the order used by the Jacobian.
    std::vector<Complex> flat() const;
    static NormalizedMapCoords from_flat(int mu, std::span<const Complex> a);
};

ComplexPolynomial numerator_poly(const NormalizedMapCoords& coords);
ComplexPolynomial denominator_poly(const NormalizedMapCoords& coords);

/// Wronskian p_a' q_a - q_a' p_a for flattened coordinates; monic of degree 2 mu.
template <typename Scalar>
Polynomial<Scalar> wronskian_flat(int mu, std::span<const Scalar> a) {
    typename Polynomial<Scalar>::Coeffs p(static_cast<std::size_t>(mu) + 2, Scalar(0));
    typename Polynomial<Scalar>::Coeffs q(static_cast<std::size_t>(mu) + 1, Scalar(0));
    for (int i = 0; i < mu; ++i) {
        p[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
        q[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(mu + i)];
    }
    p.back() = Scalar(1);
    q.back() = Scalar(1);
    const Polynomial<Scalar> pp(std::move(p)), qq(std::move(q));
    return derivative(pp) * qq - derivative(qq) * pp;
}

/// Jacobian of a -> (coefficients 0 .. 2mu-1 of the Wronskian). The map is
/// bilinear: dW = dp' q + p' dq - dq' p - q' dp.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> wronskian_jacobian_flat(int mu, std::span<const Scalar> a) {
    using Poly = Polynomial<Scalar>;
    const int n = 2 * mu;
    typename Poly::Coeffs pc(static_cast<std::size_t>(mu) + 2, Scalar(0));
    typename Poly::Coeffs qc(static_cast<std::size_t>(mu) + 1, Scalar(0));
    for (int i = 0; i < mu; ++i) {
        pc[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
        qc[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(mu + i)];
    }
    pc.back() = Scalar(1);
    qc.back() = Scalar(1);
    const Poly p(std::move(pc)), q(std::move(qc));
    const Poly dp = derivative(p), dq = derivative(q);

    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> jac =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (int i = 0; i < mu; ++i) {
        const Poly e = Poly::monomial(i);
        const Poly de = derivative(e);
        const Poly col_p = de * q - dq * e;
        const Poly col_q = dp * e - de * p;
        for (int r = 0; r < n; ++r) {
            jac(r, i) = col_p[static_cast<std::size_t>(r)];
            jac(r, mu + i) = col_q[static_cast<std::size_t>(r)];
        }
    }
    return jac;
}

ComplexPolynomial wronskian(const NormalizedMapCoords& coords);
Eigen::MatrixXcd wronskian_jacobian(const NormalizedMapCoords& coords);

struct FiberSolveReport {
    ComplexPolynomial target;
    std::vector<NormalizedMapCoords> solutions;
    int attempts = 0;
    std::uint64_t seed = 0;
    std::vector<double> residuals;
    std::uint64_t expected_max = 0;
    bool target_in_omega_prime = true;  // target has 2 mu distinct roots
    bool ill_conditioned = false;       // some Jacobian has condition above 1e10 or is numerically singular
    std::vector<double> jacobian_conditions;
    std::string warning;
};

/// Catalan number C(2(d-1), d-1) / d.
std::uint64_t catalan(int d);

/// g = 1 + c_1 z + ... + c_{N-1} z^(N-1) solving 2(d-1) g' - 2 z g'' = q g.
/// The resonant coefficient c_d is set to 0; throws ObstructionError when
/// the resonant equation is not balanced.
TruncatedSeries local_g(int d, const TruncatedSeries& q, int order, double tol = 1e-8);

/// Taylor coefficients at c (N terms) of f = int_c^z (t - c)^(d-1) / g(t - c)^2 dt.
TruncatedSeries local_primitive(const RationalMap& phi, Complex c, int order);

/// Newton iteration with random restarts on a -> coeffs(w_a) - coeffs(target).
/// Never throws for lack of solutions: an empty report carries a warning.
FiberSolveReport solve_fiber(const ComplexPolynomial& target, int attempts, std::uint64_t seed);

/// Default restart count: 64 u_{mu+1}.
int default_attempts(int mu);

/// f_a = p_a / q_a; throws DegenerateInput when p_a and q_a share a root.
RationalMap coords_to_map(const NormalizedMapCoords& coords);

struct RationalReconstruction {
    FiberSolveReport report;
    std::vector<RationalMap> maps;
};

/// All rational maps (up to post-composition by Mobius maps) with simple
/// critical points at `points`. Throws NoSolutionFound when the solver fails.
RationalReconstruction reconstruct_rational(std::span<const Complex> points, int attempts, std::uint64_t seed);

}  // namespace sprim
