#include "sprim/json_io.hpp"

#include <cmath>
#include <set>
#include <string>

namespace sprim::json {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::vector<Complex> decode_complex_array(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of complex numbers");
    std::vector<Complex> out;
    for (const auto& v : j) out.push_back(decode_complex(v));
    return out;
}

Json encode_array(const std::vector<Complex>& v) {
    Json out = Json::array();
    for (const auto& z : v) out.push_back(encode(z));
    return out;
}

std::uint64_t decode_unsigned(const Json& j) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
    throw ParseError("expected a non-negative integer");
}

int decode_int(const Json& j) {
    if (!j.is_number_integer()) throw ParseError("expected an integer");
    return j.get<int>();
}

bool decode_bool(const Json& j) {
    if (!j.is_boolean()) throw ParseError("expected a boolean");
    return j.get<bool>();
}

std::string decode_string(const Json& j) {
    if (!j.is_string()) throw ParseError("expected a string");
    return j.get<std::string>();
}

}  // namespace

Json encode(Complex z) { return Json::array({encode_real(z.real()), encode_real(z.imag())}); }

Json encode_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

Json encode(const SpherePoint& p) {
    if (p.is_infinity()) return "inf";
    return encode(p.value());
}

Json encode(const ComplexPolynomial& p) { return encode_array(p.coeffs()); }

Json encode(const RationalMap& f) { return {{"num", encode(f.num())}, {"den", encode(f.den())}}; }

Json encode(const LaurentData& germ) {
    Json out{{"pole", encode(germ.pole)}, {"leading", encode(germ.leading)}, {"tail", encode_array(germ.tail)}};
    out["local_degree"] = germ.local_degree ? Json(*germ.local_degree) : Json(nullptr);
    return out;
}

Json encode(const InfinityType& type) {
    Json out{{"kind", to_string(type.kind)}};
    if (type.kind == InfinityType::Kind::DoublePole) out["leading"] = encode(type.leading);
    return out;
}

Json encode(const HolonomyClass& h) {
    Json out{{"kind", to_string(h.kind)}, {"delta", encode(h.delta)}};
    if (h.kind == HolonomyClass::Kind::Elliptic) {
        out["multiplier"] = encode(h.multiplier);
        out["unitary"] = h.unitary;
    }
    if (h.kind == HolonomyClass::Kind::ParabolicObstructed) out["obstruction"] = encode(h.obstruction);
    return out;
}

Json encode(const EquationCheck& eq) {
    return {{"name", eq.name}, {"residual", encode_real(eq.residual)}, {"pass", eq.pass}};
}

Json encode(const DecisionRecord& record) {
    Json eqs = Json::array(), dropped = Json::array();
    for (const auto& e : record.equations) eqs.push_back(encode(e));
    for (const auto& e : record.dropped) dropped.push_back(encode(e));
    Json out{{"variant", record.variant}, {"equations", eqs}, {"overall", record.overall}};
    if (!record.dropped.empty()) out["dropped"] = dropped;
    if (!record.note.empty()) out["note"] = record.note;
    return out;
}

Json encode(const NormalizedMapCoords& coords) {
    return {{"mu", coords.mu}, {"a_p", encode_array(coords.a_p)}, {"a_q", encode_array(coords.a_q)}};
}

Json encode(const FiberSolveReport& report) {
    Json solutions = Json::array(), residuals = Json::array(), conditions = Json::array();
    for (const auto& s : report.solutions) solutions.push_back(encode(s));
    for (double r : report.residuals) residuals.push_back(encode_real(r));
    for (double c : report.jacobian_conditions) conditions.push_back(encode_real(c));
    return {{"target", encode(report.target)},
            {"solutions", solutions},
            {"attempts", report.attempts},
            {"seed", report.seed},
            {"residuals", residuals},
            {"expected_max", report.expected_max},
            {"target_in_omega_prime", report.target_in_omega_prime},
            {"ill_conditioned", report.ill_conditioned},
            {"jacobian_conditions", conditions},
            {"warning", report.warning}};
}

Json encode(const CrossRatioOrbit& orbit) {
    return encode_array(std::vector<Complex>(orbit.values.begin(), orbit.values.end()));
}

double decode_real(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw ParseError("expected a real number");
}

Complex decode_complex(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {decode_real(j[0]), decode_real(j[1])};
    throw ParseError("expected a complex number [re, im]");
}

SpherePoint decode_point(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return SpherePoint::infinity();
    return SpherePoint(decode_complex(j));
}

ComplexPolynomial decode_polynomial(const Json& j) { return ComplexPolynomial(decode_complex_array(j)); }

RationalMap decode_rational(const Json& j) {
    require_keys(j, {"num", "den"});
    return rational_normalize(decode_polynomial(j["num"]), decode_polynomial(j["den"]));
}

EquationCheck decode_equation(const Json& j) {
    require_keys(j, {"name", "residual", "pass"});
    return {decode_string(j["name"]), decode_real(j["residual"]), decode_bool(j["pass"])};
}

DecisionRecord decode_decision(const Json& j) {
    require_keys(j, {"variant", "equations", "overall"}, {"dropped", "note"});
    DecisionRecord out;
    out.variant = decode_string(j["variant"]);
    if (!j["equations"].is_array()) throw ParseError("'equations' must be an array");
    for (const auto& e : j["equations"]) out.equations.push_back(decode_equation(e));
    if (j.contains("dropped")) {
        if (!j["dropped"].is_array()) throw ParseError("'dropped' must be an array");
        for (const auto& e : j["dropped"]) out.dropped.push_back(decode_equation(e));
    }
    out.overall = decode_bool(j["overall"]);
    if (j.contains("note")) out.note = decode_string(j["note"]);
    return out;
}

NormalizedMapCoords decode_coords(const Json& j) {
    require_keys(j, {"mu", "a_p", "a_q"});
    NormalizedMapCoords out{decode_int(j["mu"]), decode_complex_array(j["a_p"]), decode_complex_array(j["a_q"])};
    if (out.mu < 1 || static_cast<int>(out.a_p.size()) != out.mu || static_cast<int>(out.a_q.size()) != out.mu)
        throw ParseError("normalized coordinates need mu entries in a_p and a_q");
    return out;
}

FiberSolveReport decode_report(const Json& j) {
    require_keys(j, {"target", "solutions", "attempts", "seed", "residuals", "expected_max", "target_in_omega_prime",
                     "ill_conditioned", "jacobian_conditions", "warning"});
    FiberSolveReport out;
    out.target = decode_polynomial(j["target"]);
    if (!j["solutions"].is_array() || !j["residuals"].is_array() || !j["jacobian_conditions"].is_array())
        throw ParseError("report sequences must be arrays");
    for (const auto& s : j["solutions"]) out.solutions.push_back(decode_coords(s));
    out.attempts = decode_int(j["attempts"]);
    out.seed = decode_unsigned(j["seed"]);
    for (const auto& r : j["residuals"]) out.residuals.push_back(decode_real(r));
    out.expected_max = decode_unsigned(j["expected_max"]);
    out.target_in_omega_prime = decode_bool(j["target_in_omega_prime"]);
    out.ill_conditioned = decode_bool(j["ill_conditioned"]);
    for (const auto& c : j["jacobian_conditions"]) out.jacobian_conditions.push_back(decode_real(c));
    out.warning = decode_string(j["warning"]);
    return out;
}

void require_keys(const Json& j, std::initializer_list<const char*> required, std::initializer_list<const char*> optional) {
    if (!j.is_object()) throw ParseError("expected a JSON object");
    std::set<std::string> allowed;
    for (const char* k : required) {
        field(j, k);
        allowed.insert(k);
    }
    for (const char* k : optional) allowed.insert(k);
    for (const auto& item : j.items())
        if (!allowed.contains(item.key())) throw ParseError("unknown field '" + item.key() + "'");
}

}  // namespace sprim::json
