#include "sprim/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sprim/json_io.hpp"

namespace sprim::cli {

namespace {

using json::Json;
using json::ParseError;

struct Flags {
    double tol = 1e-9;
    std::uint64_t seed = 42;
    int attempts = 0;  // 0: the reconstruction default for the problem size
    int order = 32;
    std::string input = "-";
};

Json read_payload(const Flags& flags, std::istream& in) {
    std::string text;
    if (flags.input == "-") {
        text.assign(std::istreambuf_iterator<char>(in), {});
    } else {
        std::ifstream file(flags.input);
        if (!file) throw ParseError("cannot open input file " + flags.input);
        text.assign(std::istreambuf_iterator<char>(file), {});
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::vector<Complex> decode_points(const Json& j) {
    if (!j.is_array()) throw ParseError("'points' must be an array");
    std::vector<Complex> out;
    for (const auto& p : j) out.push_back(json::decode_complex(p));
    return out;
}

Complex decode_finite(const Json& j) {
    const auto p = json::decode_point(j);
    if (p.is_infinity()) throw Error(ErrorKind::DegenerateInput, "point must be finite");
    return p.value();
}

double rel_check(Complex residual, double scale, double tol) {
    return std::abs(residual) <= tol * (1 + scale) ? 1.0 : 0.0;
}

// schwarzian -------------------------------------------------------------

Json cmd_schwarzian(const Json& payload) {
    const auto f = json::decode_rational(payload);
    const auto phi = schwarzian(f);

    Json poles = Json::array();
    if (phi.den().degree() >= 1) {
        for (const auto& cl : distinct_roots(phi.den())) {
            Json entry{{"point", json::encode(cl.point)}, {"order", cl.multiplicity}};
            if (cl.multiplicity == 2) {
                const auto germ = laurent_at(phi, cl.point, 1);
                entry["leading"] = json::encode(germ.leading);
                entry["local_degree"] = germ.local_degree ? Json(*germ.local_degree) : Json(nullptr);
            }
            poles.push_back(entry);
        }
    }
    const auto at_inf = infinity_type(phi);
    if (at_inf.kind == InfinityType::Kind::DoublePole) {
        const auto d = integer_local_degree(at_inf.leading);
        poles.push_back({{"point", "inf"},
                         {"order", 2},
                         {"leading", json::encode(at_inf.leading)},
                         {"local_degree", d ? Json(*d) : Json(nullptr)}});
    }

    Json crit = Json::array();
    for (const auto& c : critical_points(f))
        crit.push_back({{"point", json::encode(c.point)}, {"local_degree", c.local_degree}});

    return {{"phi", json::encode(phi)}, {"poles", poles}, {"infinity", json::encode(at_inf)}, {"critical_points", crit}};
}

// check ------------------------------------------------------------------

Json check_local(const RationalMap& phi, const Json& payload, const Flags& flags) {
    const Complex c = decode_finite(payload["point"]);
    std::optional<int> d_hint;
    if (payload.contains("d")) {
        if (!payload["d"].is_number_integer() || payload["d"].get<int>() < 1)
            throw ParseError("'d' must be a positive integer");
        d_hint = payload["d"].get<int>();
    }
    const int order = std::max(flags.order, d_hint.value_or(1) + 1);
    const auto germ = laurent_at(phi, c, order);
    const auto holonomy = classify_holonomy(germ, flags.tol);

    std::optional<int> d = germ.local_degree;
    if (d_hint) {
        if (d && *d != *d_hint) throw Error(ErrorKind::DegenerateInput, "leading coefficient disagrees with d");
        if (!d) throw Error(ErrorKind::DegenerateInput, "leading coefficient is not (1 - d^2)/2 for the given d");
    }

    DecisionRecord record;
    record.variant = "local";
    Json out{{"mode", "local"}, {"germ", json::encode(germ)}, {"holonomy", json::encode(holonomy)}};
    if (d) {
        const Complex det = condition_determinant(*d, germ.tail);
        const Complex obstruction = series_obstruction(*d, germ.q());
        double scale = 0;
        for (int i = 0; i < *d; ++i) scale = std::max(scale, std::abs(germ.tail[static_cast<std::size_t>(i)]));
        scale = std::pow(1 + scale, *d);
        record.equations.push_back({"c2_determinant", std::abs(det), rel_check(det, scale, flags.tol) > 0});
        record.overall = record.equations.back().pass;
        out["determinant"] = json::encode(det);
        out["obstruction"] = json::encode(obstruction);
    } else {
        record.overall = false;
        record.note = "exponent is not an integer; the holonomy is not trivial";
        out["determinant"] = nullptr;
        out["obstruction"] = nullptr;
    }
    if (holonomy.kind == HolonomyClass::Kind::Elliptic && !holonomy.unitary) {
        record.note = record.note.empty() ? "non-unitary multiplier" : record.note + "; non-unitary multiplier";
    }
    out["record"] = json::encode(record);
    return out;
}

/// Configuration read from phi's double poles (or the given points).
CriticalConfiguration configuration_from(const RationalMap& phi, const Json& payload, double tol) {
    std::vector<Complex> points;
    if (payload.contains("points")) {
        points = decode_points(payload["points"]);
    } else if (phi.den().degree() >= 1) {
        for (const auto& cl : distinct_roots(phi.den())) points.push_back(cl.point);
    }
    if (points.empty()) throw Error(ErrorKind::DegenerateInput, "phi has no finite poles");
    return extract_configuration(phi, points, std::max(tol, 1e-8));
}

/// Checks that phi is exactly the partial-fraction form of its configuration.
EquationCheck form_check(const RationalMap& phi, const CriticalConfiguration& config) {
    const auto rebuilt = build_phi(config);
    const double dist = coefficient_distance(rebuilt, phi);
    const double scale = std::max(phi.num().max_abs(), phi.den().max_abs());
    return {"phi_form", dist, dist <= 1e-8 * (1 + scale)};
}

RationalVariant parse_variant(const std::string& name) {
    for (auto v : {RationalVariant::AllL_E123, RationalVariant::DropLastL, RationalVariant::DropE3,
                   RationalVariant::Eremenko_E2only})
        if (name == to_string(v)) return v;
    throw ParseError("unknown variant '" + name + "'");
}

Json check_rational(const RationalMap& phi, const Json& payload, const Flags& flags) {
    const auto config = configuration_from(phi, payload, flags.tol);
    auto variant = RationalVariant::AllL_E123;
    if (payload.contains("variant")) {
        if (!payload["variant"].is_string()) throw ParseError("'variant' must be a string");
        variant = parse_variant(payload["variant"].get<std::string>());
    }
    auto record = check_rational_criterion(config, variant);
    record.equations.insert(record.equations.begin(), form_check(phi, config));
    record.overall = std::all_of(record.equations.begin(), record.equations.end(), [](const auto& e) { return e.pass; });
    Json params = Json::array();
    for (const auto& a : config.params) params.push_back(json::encode(a));
    return {{"mode", "rational"}, {"params", params}, {"record", json::encode(record)}};
}

Json check_polynomial(const RationalMap& phi, const Json& payload, const Flags& flags) {
    const auto config = configuration_from(phi, payload, flags.tol);
    auto record = check_polynomial_system(config);
    record.equations.insert(record.equations.begin(), form_check(phi, config));
    record.overall = std::all_of(record.equations.begin(), record.equations.end(), [](const auto& e) { return e.pass; });
    Json params = Json::array();
    for (const auto& a : config.params) params.push_back(json::encode(a));
    return {{"mode", "polynomial"}, {"params", params}, {"record", json::encode(record)}};
}

Json check_merom(const RationalMap& phi, const Json& payload, const Flags& flags) {
    std::vector<Complex> points;
    if (payload.contains("points")) {
        points = decode_points(payload["points"]);
    } else if (phi.den().degree() >= 1) {
        for (const auto& cl : distinct_roots(phi.den())) points.push_back(cl.point);
    }
    DecisionRecord record;
    record.variant = "merom";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto germ = laurent_at(phi, points[i], 2);
        const std::string tag = std::to_string(i + 1);
        const Complex lead_res = germ.leading + 1.5;
        record.equations.push_back({"leading_" + tag, std::abs(lead_res), rel_check(lead_res, 1.5, flags.tol) > 0});
        const Complex det = condition_determinant(2, germ.tail);
        const double scale = std::norm(germ.tail[0]) + 2 * std::abs(germ.tail[1]);
        record.equations.push_back({"c2_" + tag, std::abs(det), rel_check(det, scale, flags.tol) > 0});
    }
    record.overall = std::all_of(record.equations.begin(), record.equations.end(), [](const auto& e) { return e.pass; });
    return {{"mode", "merom"}, {"record", json::encode(record)}};
}

Json cmd_check(const Json& payload, const Flags& flags) {
    if (!payload.is_object() || !payload.contains("mode") || !payload["mode"].is_string())
        throw ParseError("check needs a string field 'mode'");
    const auto mode = payload["mode"].get<std::string>();
    if (mode == "local") {
        json::require_keys(payload, {"phi", "mode", "point"}, {"d"});
        return check_local(json::decode_rational(payload["phi"]), payload, flags);
    }
    if (mode == "rational") {
        json::require_keys(payload, {"phi", "mode"}, {"points", "variant"});
        return check_rational(json::decode_rational(payload["phi"]), payload, flags);
    }
    if (mode == "polynomial") {
        json::require_keys(payload, {"phi", "mode"}, {"points"});
        return check_polynomial(json::decode_rational(payload["phi"]), payload, flags);
    }
    if (mode == "merom") {
        json::require_keys(payload, {"phi", "mode"}, {"points"});
        return check_merom(json::decode_rational(payload["phi"]), payload, flags);
    }
    throw ParseError("unknown mode '" + mode + "'");
}

// solve ------------------------------------------------------------------

Json cmd_solve(const Json& payload, const Flags& flags) {
    json::require_keys(payload, {"points"});
    const auto points = decode_points(payload["points"]);
    if (points.size() < 2 || points.size() % 2 != 0)
        throw Error(ErrorKind::DegenerateInput, "need an even number (>= 2) of critical points");
    const int mu = static_cast<int>(points.size()) / 2;
    const int attempts = flags.attempts > 0 ? flags.attempts : default_attempts(mu);
    const auto result = reconstruct_rational(points, attempts, flags.seed);

    Json maps = Json::array();
    for (const auto& m : result.maps) maps.push_back(json::encode(m));
    Json out{{"report", json::encode(result.report)}, {"maps", maps}};
    if (points.size() == 4) {
        FourPointSet set{{SpherePoint(points[0]), SpherePoint(points[1]), SpherePoint(points[2]), SpherePoint(points[3])}};
        out["tetrahedron"] = is_regular_tetrahedron(set, std::max(flags.tol, 1e-8));
    }
    return out;
}

// cubic ------------------------------------------------------------------

Json cmd_cubic(const Json& payload, const Flags& flags) {
    json::require_keys(payload, {}, {"points", "quartic"});
    if (payload.contains("points") == payload.contains("quartic"))
        throw ParseError("cubic needs exactly one of 'points' or 'quartic'");

    FourPointSet set;
    std::optional<std::array<Complex, 4>> w;
    if (payload.contains("points")) {
        const auto& pts = payload["points"];
        if (!pts.is_array() || pts.size() != 4) throw ParseError("'points' must hold four points");
        for (std::size_t i = 0; i < 4; ++i) set.points[i] = json::decode_point(pts[i]);
        set.validate(1e-12);
        bool finite = true;
        std::vector<Complex> roots_in;
        for (const auto& p : set.points) {
            finite = finite && p.is_finite();
            if (p.is_finite()) roots_in.push_back(p.value());
        }
        if (finite) {
            const auto q = from_roots<Complex>(roots_in);
            w = std::array<Complex, 4>{q[0], q[1], q[2], q[3]};
        }
    } else {
        const auto q = json::decode_polynomial(payload["quartic"]);
        if (q.degree() != 4) throw Error(ErrorKind::DegenerateInput, "quartic must have degree 4");
        const auto m = monic(q);
        w = std::array<Complex, 4>{m[0], m[1], m[2], m[3]};
        const auto rs = roots(m);
        for (std::size_t i = 0; i < 4; ++i) set.points[i] = SpherePoint(rs[i]);
        set.validate(1e-7);
    }

    const Complex t = cross_ratio(set.points[0], set.points[1], set.points[2], set.points[3]);
    Json pts = Json::array();
    for (const auto& p : set.points) pts.push_back(json::encode(p));
    Json out{{"points", pts},
             {"cross_ratio", json::encode(t)},
             {"orbit", json::encode(ratio_orbit(t))},
             {"tetrahedron", is_regular_tetrahedron(set, std::max(flags.tol, 1e-8))}};
    if (w) {
        Json quartic = Json::array();
        for (const auto& c : *w) quartic.push_back(json::encode(c));
        quartic.push_back(json::encode(Complex(1)));
        out["quartic"] = quartic;
        out["discriminant"] = json::encode(criticality_discriminant(*w));
        Json branches = Json::array();
        for (const auto& b : cubic_fiber_explicit(*w, std::max(flags.tol, 1e-9))) branches.push_back(json::encode(b));
        out["branches"] = branches;
    } else {
        out["quartic"] = nullptr;
        out["discriminant"] = nullptr;
        out["branches"] = Json::array();
    }
    return out;
}

// reconstruct-local ------------------------------------------------------

Json cmd_reconstruct_local(const Json& payload, const Flags& flags) {
    json::require_keys(payload, {"phi", "point"});
    const auto phi = json::decode_rational(payload["phi"]);
    const Complex c = decode_finite(payload["point"]);
    const auto germ = laurent_at(phi, c, flags.order);
    const auto f = local_primitive(phi, c, flags.order);
    Json coeffs = Json::array();
    for (const auto& a : f.coeffs()) coeffs.push_back(json::encode(a));
    return {{"point", json::encode(c)}, {"local_degree", *germ.local_degree}, {"coefficients", coeffs}};
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegenerateInput:
        case ErrorKind::PoleTooHigh:
        case ErrorKind::ObstructionNonzero: return kDegenerate;
        case ErrorKind::NonConvergence:
        case ErrorKind::NoSolutionFound: return kSolver;
    }
    return kSolver;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Schwarzian primitives, critical-point reconstruction and cubic geometry", "sprim"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags flags;
    app.add_option("--tol", flags.tol, "decision tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", flags.seed, "random seed for the fiber solver")->check(CLI::PositiveNumber);
    app.add_option("--attempts", flags.attempts, "Newton restarts (default 64 * catalan(mu + 1))")
        ->check(CLI::PositiveNumber);
    app.add_option("--order", flags.order, "series order N")->check(CLI::PositiveNumber);
    app.add_option("--in", flags.input, "input JSON file, - for stdin");

    const std::vector<std::pair<const char*, const char*>> commands{
        {"schwarzian", "Schwarzian of a rational map {num, den}"},
        {"check", "decide a primitivity criterion {phi, mode, ...}"},
        {"solve", "rational maps with prescribed critical points {points}"},
        {"cubic", "cross-ratio geometry of four points {points} or {quartic}"},
        {"reconstruct-local", "local Taylor primitive {phi, point}"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParse;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const Json payload = read_payload(flags, in);
        Json result;
        if (command == "schwarzian") result = cmd_schwarzian(payload);
        else if (command == "check") result = cmd_check(payload, flags);
        else if (command == "solve") result = cmd_solve(payload, flags);
        else if (command == "cubic") result = cmd_cubic(payload, flags);
        else result = cmd_reconstruct_local(payload, flags);
        out << result.dump(2) << '\n';
        return kOk;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const nlohmann::json::exception& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const ObstructionError& e) {
        err << to_string(e.kind()) << ": " << e.what() << " (value " << e.value() << ")\n";
        return kDegenerate;
    } catch (const Error& e) {
        err << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
}

}  // namespace sprim::cli
