#pragma once

#include <json.hpp>

#include "sprim/cubic_geometry.hpp"
#include "sprim/primitivity.hpp"
#include "sprim/reconstruction.hpp"

namespace sprim::json {

using Json = nlohmann::json;

/// Raised for malformed or unexpected JSON; the CLI maps it to exit code 2.
class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Complex numbers are [re, im]; a bare number is read as real. Infinity on
// the sphere is the string "inf".
Json encode(Complex z);
Json encode_real(double x);  // non-finite values become "inf" / "-inf" / "nan"
Json encode(const SpherePoint& p);
Json encode(const ComplexPolynomial& p);
Json encode(const RationalMap& f);
Json encode(const LaurentData& germ);
Json encode(const InfinityType& type);
Json encode(const HolonomyClass& h);
Json encode(const EquationCheck& eq);
Json encode(const DecisionRecord& record);
Json encode(const NormalizedMapCoords& coords);
Json encode(const FiberSolveReport& report);
Json encode(const CrossRatioOrbit& orbit);

Complex decode_complex(const Json& j);
double decode_real(const Json& j);
SpherePoint decode_point(const Json& j);
ComplexPolynomial decode_polynomial(const Json& j);
RationalMap decode_rational(const Json& j);
EquationCheck decode_equation(const Json& j);
DecisionRecord decode_decision(const Json& j);
NormalizedMapCoords decode_coords(const Json& j);
FiberSolveReport decode_report(const Json& j);

/// Throws ParseError unless j is an object whose keys all lie in `allowed`.
void require_keys(const Json& j, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {});

}  // namespace sprim::json
