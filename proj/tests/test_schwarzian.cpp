#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sprim/schwarzian.hpp"

using namespace sprim;
using oracle::C;

namespace {

const RationalMap kF1(ComplexPolynomial{0.0, 0.0, 1.0}, ComplexPolynomial{1.0, -2.0, 1.0});
const RationalMap kF2(ComplexPolynomial{0.0, 0.0, -3.0, 2.0});
const RationalMap kPhi1(ComplexPolynomial{-1.5}, ComplexPolynomial{0.0, 0.0, 1.0, -2.0, 1.0});
const RationalMap kPhi2(ComplexPolynomial{-1.5, 4.0, -4.0}, ComplexPolynomial{0.0, 0.0, 1.0, -2.0, 1.0});

ComplexPolynomial random_poly(std::mt19937_64& rng, int degree) {
    ComplexPolynomial::Coeffs c;
    for (int i = 0; i <= degree; ++i) c.push_back(oracle::random_complex(rng, 1.5));
    return ComplexPolynomial(c);
}

RationalMap random_map(std::mt19937_64& rng) {
    const int dn = 1 + static_cast<int>(rng() % 4), dd = static_cast<int>(rng() % 4);
    return RationalMap(random_poly(rng, dn), random_poly(rng, dd));
}

MobiusMap random_mobius(std::mt19937_64& rng) {
    return MobiusMap(oracle::random_complex(rng) + 1.0, oracle::random_complex(rng), oracle::random_complex(rng),
                     oracle::random_complex(rng) + 1.0);
}

bool regular_point(const RationalMap& f, C z) {
    return std::abs(f.den()(z)) > 1e-2 && std::abs(wronskian_of(f)(z)) > 1e-2;
}

}  // namespace

TEST_CASE("worked examples") {
    CHECK(coefficient_distance(schwarzian(kF1), kPhi1) <= 1e-10);
    CHECK(coefficient_distance(schwarzian(kF2), kPhi2) <= 1e-10);
    const MobiusMap m(C(1, 2), 3.0, C(0, 1), 4.0);
    CHECK(schwarzian(RationalMap(m)).is_zero());
    CHECK(schwarzian(RationalMap(ComplexPolynomial{0.0, 1.0})).is_zero());
    CHECK_THROWS_AS(schwarzian(RationalMap(ComplexPolynomial{3.0})), Error);
}

TEST_CASE("schwarzian agrees with the pointwise quotient-rule oracle") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const auto f = random_map(rng);
        if (f.degree() < 2) continue;
        const auto s = schwarzian(f);
        for (int k = 0; k < 5; ++k) {
            const C z = oracle::random_complex(rng);
            if (!regular_point(f, z)) continue;
            const C expected = oracle::schwarzian_at(f.num().coeffs(), f.den().coeffs(), z);
            CHECK(std::abs(s(z) - expected) <= 1e-8 * (1 + std::abs(expected)));
        }
    }
}

TEST_CASE("post-composition by a Mobius map leaves the Schwarzian unchanged") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        const int deg = 3 + trial % 2;
        const RationalMap f(random_poly(rng, deg), random_poly(rng, deg - 1));
        const auto g = compose(random_mobius(rng), f);
        const auto sf = schwarzian(f), sg = schwarzian(g);
        const double scale = std::max(sf.num().max_abs(), sf.den().max_abs());
        CHECK(coefficient_distance(sf, sg) <= 1e-8 * (1 + scale));
    }
}

TEST_CASE("affine pre-composition transforms as a quadratic differential") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_map(rng);
        if (f.degree() < 2) continue;
        const C alpha = oracle::random_complex(rng) + 1.0, beta = oracle::random_complex(rng);
        const auto fg = compose(f, RationalMap(ComplexPolynomial{beta, alpha}));
        const auto sf = schwarzian(f), sfg = schwarzian(fg);
        for (int k = 0; k < 10; ++k) {
            const C w = oracle::random_complex(rng);
            const C z = alpha * w + beta;
            if (!regular_point(f, z)) continue;
            const C expected = sf(z) * alpha * alpha;
            CHECK(std::abs(sfg(w) - expected) <= 1e-8 * (1 + std::abs(expected)));
        }
    }
}

TEST_CASE("composition formula") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const RationalMap u(random_poly(rng, 2), random_poly(rng, 1));
        const RationalMap v(random_poly(rng, 2), random_poly(rng, 2));
        if (u.degree() < 2 || v.degree() < 2) continue;
        const auto uv = compose(u, v);
        const auto su = schwarzian(u), sv = schwarzian(v), suv = schwarzian(uv);
        const auto dv = derivative(v);
        for (int k = 0; k < 5; ++k) {
            const C z = oracle::random_complex(rng);
            if (!regular_point(v, z) || !regular_point(uv, z) || !regular_point(u, v(z))) continue;
            const C expected = su(v(z)) * dv(z) * dv(z) + sv(z);
            CHECK(std::abs(suv(z) - expected) <= 1e-8 * (1 + std::abs(expected)));
        }
    }
}

TEST_CASE("poles of the Schwarzian sit at the critical points with order two") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const RationalMap f(random_poly(rng, 3), random_poly(rng, 2));
        const auto s = schwarzian(f);
        const auto w = wronskian_of(f);
        const auto expected = monic(w) * monic(w);
        REQUIRE(s.den().degree() == expected.degree());
        for (std::size_t k = 0; k < expected.size(); ++k)
            CHECK(std::abs(s.den()[k] - expected[k]) <= 1e-8 * (1 + expected.max_abs()));
    }
}

TEST_CASE("leading coefficient at a critical point is (1 - d^2)/2") {
    // f = z^3 (z - 1)^2 / (z + 2): local degree 3 at 0 and 2 at 1.
    const auto num = ComplexPolynomial::monomial(3) * ComplexPolynomial{1.0, -2.0, 1.0};
    const RationalMap f(num, ComplexPolynomial{2.0, 1.0});
    const auto s = schwarzian(f);
    for (const auto& cp : critical_points(f)) {
        if (cp.point.is_infinity()) continue;
        const auto germ = laurent_at(s, cp.point.value(), 4);
        const double d = cp.local_degree;
        CHECK(std::abs(germ.leading - (1 - d * d) / 2) <= 1e-8);
        REQUIRE(germ.local_degree.has_value());
        CHECK(*germ.local_degree == cp.local_degree);
    }
    bool saw3 = false;
    for (const auto& cp : critical_points(f)) saw3 = saw3 || (cp.point.is_finite() && cp.local_degree == 3);
    CHECK(saw3);
}

TEST_CASE("critical points include infinity when it is critical") {
    const auto cps = critical_points(RationalMap(ComplexPolynomial::monomial(3)));
    REQUIRE(cps.size() == 2);
    CHECK(cps[0].local_degree == 3);
    CHECK(cps[1].point.is_infinity());
    CHECK(cps[1].local_degree == 3);
}

TEST_CASE("laurent expansion examples") {
    auto g = laurent_at(kPhi1, 0.0, 6);
    CHECK(std::abs(g.leading + 1.5) < 1e-12);
    CHECK(std::abs(g.tail[0] + 3.0) < 1e-12);
    CHECK(std::abs(g.tail[1] + 4.5) < 1e-12);
    REQUIRE(g.local_degree.has_value());
    CHECK(*g.local_degree == 2);

    g = laurent_at(RationalMap(ComplexPolynomial{-1.5}, ComplexPolynomial::monomial(2)), 0.0, 5);
    CHECK(std::abs(g.leading + 1.5) < 1e-14);
    for (const auto& a : g.tail) CHECK(std::abs(a) < 1e-14);

    g = laurent_at(kPhi2, 1.0, 3);
    CHECK(std::abs(g.leading + 1.5) < 1e-12);
    CHECK(std::abs(g.tail[0] + 1.0) < 1e-12);

    CHECK_THROWS_AS(laurent_at(RationalMap(ComplexPolynomial{1.0}, ComplexPolynomial::monomial(3)), 0.0, 3), Error);
    try {
        laurent_at(RationalMap(ComplexPolynomial{1.0}, ComplexPolynomial::monomial(3)), 0.0, 3);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PoleTooHigh);
    }

    // Non-integer exponent: no local degree.
    g = laurent_at(RationalMap(ComplexPolynomial{-0.5}, ComplexPolynomial::monomial(2)), 0.0, 2);
    CHECK_FALSE(g.local_degree.has_value());
}

TEST_CASE("laurent expansion matches contour integrals") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 15; ++trial) {
        const RationalMap f(random_poly(rng, 3), random_poly(rng, 2));
        const auto s = schwarzian(f);
        const auto cps = critical_points(f);
        for (const auto& cp : cps) {
            if (cp.point.is_infinity()) continue;
            const C c = cp.point.value();
            // Radius a third of the distance to the nearest other pole.
            double gap = 1e9;
            for (const auto& r : roots(s.den()))
                if (std::abs(r - c) > 1e-6) gap = std::min(gap, std::abs(r - c));
            if (gap < 0.05) continue;
            const auto germ = laurent_at(s, c, 6);
            const auto ref = oracle::laurent_by_contour([&](C z) { return s(z); }, c, gap / 3, 4, 512);
            const double scale = 1 + std::abs(ref[1]) + std::abs(ref[2]);
            CHECK(std::abs(germ.leading - ref[0]) <= 1e-7 * scale);
            for (std::size_t k = 0; k < 5; ++k)
                CHECK(std::abs(germ.tail[k] - ref[k + 1]) <= 1e-6 * scale * std::pow(3 / gap, double(k)));
        }
    }
}

TEST_CASE("type at infinity") {
    CHECK(infinity_type(kPhi1).kind == InfinityType::Kind::Regular);
    const auto t2 = infinity_type(kPhi2);
    CHECK(t2.kind == InfinityType::Kind::DoublePole);
    CHECK(std::abs(t2.leading + 4.0) < 1e-12);
    // 1/z dz^2 becomes w^-3 dw^2 at infinity.
    CHECK(infinity_type(RationalMap(ComplexPolynomial{1.0}, ComplexPolynomial{0.0, 1.0})).kind ==
          InfinityType::Kind::TriplePole);
    CHECK(infinity_type(RationalMap(ComplexPolynomial{1.0}, ComplexPolynomial::monomial(3))).kind ==
          InfinityType::Kind::SimplePole);
    CHECK(infinity_type(RationalMap()).kind == InfinityType::Kind::Regular);
    CHECK_THROWS_AS(infinity_type(RationalMap(ComplexPolynomial{0.0, 1.0})), Error);
}

TEST_CASE("polynomials have a double pole at infinity") {
    std::mt19937_64 rng(41);
    for (int k = 1; k <= 5; ++k) {
        std::vector<C> crit;
        for (int i = 0; i < k; ++i) crit.push_back(oracle::random_complex(rng, 2));
        // P' = prod (z - c_i), P = its antiderivative.
        const ComplexPolynomial dp(oracle::expand_roots(crit));
        ComplexPolynomial::Coeffs pc{0.0};
        for (std::size_t i = 0; i < dp.size(); ++i) pc.push_back(dp[i] / double(i + 1));
        const auto type = infinity_type(schwarzian(RationalMap(ComplexPolynomial(pc))));
        CHECK(type.kind == InfinityType::Kind::DoublePole);
        CHECK(std::abs(type.leading - (1.0 - (k + 1.0) * (k + 1.0)) / 2) <= 1e-8);
    }
}

TEST_CASE("E sums") {
    auto e = e_sums({{1.0, 0.0}, {-2.0, 2.0}}, 3);
    for (const auto& x : e) CHECK(std::abs(x) < 1e-14);
    e = e_sums({{1.0, 0.0}, {2.0 / 3, -2.0 / 3}}, 2);
    CHECK(std::abs(e[0]) < 1e-14);
    CHECK(std::abs(e[1] - 8.0 / 3) < 1e-14);
    CHECK(std::abs(-1.5 * e[1] + 4.0) < 1e-14);
    e = e_sums({{}, {}}, 3);
    for (const auto& x : e) CHECK(x == C(0));
}
