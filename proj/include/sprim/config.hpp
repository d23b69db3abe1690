#pragma once

#include <atomic>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace sprim {

using Complex = std::complex<double>;

template <typename Scalar>
struct RealOf {
    using type = Scalar;
};
template <typename T>
struct RealOf<std::complex<T>> {
    using type = T;
};
template <typename Scalar>
using RealOf_t = typename RealOf<Scalar>::type;

/// j = exp(2 pi i / 3), the primitive cube root of unity.
inline const Complex kCubeRootOfUnity{-0.5, std::numbers::sqrt3 / 2.0};

namespace detail {
inline std::atomic<double>& zero_tolerance_storage() {
    static std::atomic<double> tol{1e-12};
    return tol;
}
}  // namespace detail

/// Relative threshold under which a polynomial coefficient counts as zero:
/// |c| <= zero_tolerance() * (1 + max |coeff|).
inline double zero_tolerance() { return detail::zero_tolerance_storage().load(std::memory_order_relaxed); }
inline void set_zero_tolerance(double tol) { detail::zero_tolerance_storage().store(tol, std::memory_order_relaxed); }

enum class ErrorKind { DegenerateInput, NonConvergence, PoleTooHigh, ObstructionNonzero, NoSolutionFound };

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::PoleTooHigh: return "PoleTooHigh";
        case ErrorKind::ObstructionNonzero: return "ObstructionNonzero";
        case ErrorKind::NoSolutionFound: return "NoSolutionFound";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

/// Raised when the resonant coefficient of the local ODE recursion cannot be
/// balanced; carries the offending right-hand side.
class ObstructionError : public Error {
   public:
    explicit ObstructionError(Complex value)
        : Error(ErrorKind::ObstructionNonzero, "local primitive obstructed at the resonant index"), value_(value) {}
    Complex value() const noexcept { return value_; }

   private:
    Complex value_;
};

}  // namespace sprim
