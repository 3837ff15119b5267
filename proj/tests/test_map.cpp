#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "gct/error.hpp"
#include "gct/map.hpp"
#include "gct/rng.hpp"

#include "fixtures.hpp"

using namespace gct;
using fixtures::basilica;
using fixtures::squaring;

TEST_CASE("map validation") {
    CHECK_THROWS_AS(MapSpec::make({0.0}, {1.0}), ConfigError);           // zero numerator
    CHECK_THROWS_AS(MapSpec::make({-1.0, 1.0}, {-1.0, 1.0}), ConfigError); // shared root at 1
    CHECK_THROWS_AS(MapSpec::make({0.0, 2.0}, {1.0}, 2), ConfigError);   // degree below minimum
    CHECK(MapSpec::make({0.0, 2.0}, {1.0}, 1).degree == 1);
}

TEST_CASE("evaluate with chart switching") {
    MapSpec f = squaring();
    CHECK(evaluate(f, SpherePoint(cplx(3.0, 0.0))).value == cplx(9.0, 0.0));
    CHECK(evaluate(f, SpherePoint::infinity()).at_infinity);

    MapSpec g = basilica();
    CHECK(evaluate(g, SpherePoint(cplx(0.0, 0.0))).value == cplx(-1.0, 0.0));

    // 1/z swaps 0 and infinity.
    MapSpec inv = MapSpec::make({1.0}, {0.0, 1.0});
    CHECK(evaluate(inv, SpherePoint(cplx(0.0, 0.0))).at_infinity);
    CHECK(std::abs(evaluate(inv, SpherePoint::infinity()).value) < 1e-14);
}

TEST_CASE("chordal metric") {
    CHECK(chordal(cplx(1.0, 0.0), cplx(2.0, 0.0)) == doctest::Approx(2.0 / std::sqrt(10.0)));
    CHECK(chordal(SpherePoint::infinity(), SpherePoint::infinity()) == 0.0);
    CHECK(chordal(cplx(0.0, 0.0), cplx(0.0, 0.0)) == 0.0);

    // Symmetry and triangle inequality on random triples.
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        auto pt = [&]() {
            if (rng.uniform() < 0.05) return SpherePoint::infinity();
            return SpherePoint(cplx(rng.uniform(-20, 20), rng.uniform(-20, 20)));
        };
        SpherePoint a = pt(), b = pt(), c = pt();
        CHECK(chordal(a, b) == doctest::Approx(chordal(b, a)));
        CHECK(chordal(a, c) <= chordal(a, b) + chordal(b, c) + 1e-12);
    }
}

TEST_CASE("critical points") {
    auto crit = critical_points(squaring());
    REQUIRE(crit.size() == 2);
    bool has_zero = false, has_inf = false;
    int total = 0;
    for (const auto& c : crit) {
        total += c.multiplicity;
        if (c.location.finite() && std::abs(c.location.value) < 1e-12) has_zero = true;
        if (!c.location.finite()) has_inf = true;
    }
    CHECK(has_zero);
    CHECK(has_inf);
    CHECK(total == 2); // 2d - 2

    // z^3 - 3z: finite critical points at +-1, plus infinity.
    MapSpec cubic = MapSpec::make({0.0, -3.0, 0.0, 1.0}, {1.0});
    auto c3 = critical_points(cubic);
    int total3 = 0;
    bool one = false, minus_one = false, inf3 = false;
    for (const auto& c : c3) {
        total3 += c.multiplicity;
        if (c.location.finite() && std::abs(c.location.value - 1.0) < 1e-9) one = true;
        if (c.location.finite() && std::abs(c.location.value + 1.0) < 1e-9) minus_one = true;
        if (!c.location.finite()) inf3 = true;
    }
    CHECK(one);
    CHECK(minus_one);
    CHECK(inf3);
    CHECK(total3 == 4);
}

TEST_CASE("periodic points of the squaring map") {
    auto fixed = periodic_points(squaring(), 1);
    REQUIRE(fixed.size() == 3);
    int attracting = 0, repelling = 0;
    bool saw_inf = false;
    for (const auto& p : fixed) {
        if (!p.location.finite()) {
            saw_inf = true;
            CHECK(p.cls == Stability::Attracting);
            CHECK(std::abs(p.multiplier) < 1e-10); // superattracting
            continue;
        }
        if (std::abs(p.location.value) < 1e-10) {
            ++attracting;
            CHECK(std::abs(p.multiplier) < 1e-12);
        }
        if (std::abs(p.location.value - 1.0) < 1e-10) {
            ++repelling;
            CHECK(p.multiplier.real() == doctest::Approx(2.0));
            CHECK(p.cls == Stability::Repelling);
        }
    }
    CHECK(saw_inf);
    CHECK(attracting == 1);
    CHECK(repelling == 1);

    auto two = periodic_points(squaring(), 2);
    REQUIRE(two.size() == 2); // the primitive cycle only
    cplx prod = two[0].multiplier;
    CHECK(std::abs(prod - cplx(4.0, 0.0)) < 1e-8); // cycle multiplier 4
    for (const auto& p : two) {
        CHECK(p.cls == Stability::Repelling);
        CHECK(std::abs(std::abs(p.location.value) - 1.0) < 1e-10);
    }
}

TEST_CASE("fixed points of the basilica map are repelling") {
    auto fixed = periodic_points(basilica(), 1);
    double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    double other = (1.0 - std::sqrt(5.0)) / 2.0;
    int found = 0;
    for (const auto& p : fixed) {
        if (!p.location.finite()) continue;
        for (double q : {golden, other}) {
            if (std::abs(p.location.value - q) < 1e-9) {
                ++found;
                CHECK(p.cls == Stability::Repelling);
                CHECK(std::abs(p.multiplier - 2.0 * q) < 1e-8);
            }
        }
    }
    CHECK(found == 2);
}

TEST_CASE("preimages") {
    MapSpec f = squaring();
    auto p1 = preimages(f, SpherePoint(cplx(1.0, 0.0)));
    REQUIRE(p1.size() == 2);
    for (const auto& p : p1) {
        CHECK(p.multiplicity == 1);
        CHECK(std::abs(std::abs(p.point.value) - 1.0) < 1e-12);
        CHECK(p.residual < 1e-12);
    }

    auto p0 = preimages(f, SpherePoint(cplx(0.0, 0.0)));
    REQUIRE(p0.size() == 1);
    CHECK(p0[0].multiplicity == 2); // critical value flagged by multiplicity

    auto pb = preimages(basilica(), SpherePoint(cplx(-1.0, 0.0)));
    REQUIRE(pb.size() == 1);
    CHECK(pb[0].multiplicity == 2);
    CHECK(std::abs(pb[0].point.value) < 1e-9);
}

TEST_CASE("preimage residuals and degree sums on random targets") {
    Rng rng(11);
    for (const MapSpec& f : {squaring(), basilica()}) {
        for (int i = 0; i < 50; ++i) {
            cplx w(rng.uniform(-2, 2), rng.uniform(-2, 2));
            auto pre = preimages(f, SpherePoint(w));
            int total = 0;
            for (const auto& p : pre) {
                total += p.multiplicity;
                if (p.point.finite())
                    CHECK(chordal(evaluate(f, p.point), SpherePoint(w)) < 1e-10);
            }
            CHECK(total == f.degree);
        }
    }
}

TEST_CASE("cycle multiplier equals the derivative chain") {
    for (int period : {1, 2, 3}) {
        for (const auto& p : periodic_points(basilica(), period, 512)) {
            if (!p.location.finite()) continue;
            cplx chain = 1.0;
            SpherePoint z = p.location;
            bool finite = true;
            for (int k = 0; k < period; ++k) {
                if (!z.finite()) {
                    finite = false;
                    break;
                }
                chain *= derivative(basilica(), z.value);
                z = evaluate(basilica(), z);
            }
            if (finite) CHECK(std::abs(std::abs(chain) - std::abs(p.multiplier)) < 1e-9);
        }
    }
}

TEST_CASE("degree overflow guard") {
    CHECK_THROWS_AS(periodic_points(squaring(), 30, 4096), Error);
}

TEST_CASE("spherical derivative at special points") {
    MapSpec f = squaring();
    // |f'| (1+|z|^2)/(1+|f z|^2) = 2 on the unit circle.
    CHECK(sphere_derivative_norm(f, SpherePoint(cplx(1.0, 0.0))) == doctest::Approx(2.0));
    cplx w = std::polar(1.0, 0.7);
    CHECK(sphere_derivative_norm(f, SpherePoint(w)) == doctest::Approx(2.0));
    // Superattracting at infinity.
    CHECK(sphere_derivative_norm(f, SpherePoint::infinity()) == doctest::Approx(0.0));
}
