#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gct/error.hpp"
#include "gct/ray.hpp"

#include "fixtures.hpp"

using namespace gct;

namespace {

PolyLikeSpec squaring_spec() {
    return PolyLikeSpec::make(fixtures::squaring(), DomainSpec::disk(0.0, 4.0),
                              DomainSpec::disk(0.0, 2.0));
}

} // namespace

TEST_CASE("polynomial-like validation") {
    PolyLikeSpec spec = squaring_spec();
    CHECK(spec.degree == 2);
    CHECK(spec.containment_margin == doctest::Approx(2.0));

    // W1 not compactly contained.
    CHECK_THROWS_AS(PolyLikeSpec::make(fixtures::squaring(), DomainSpec::disk(0.0, 4.0),
                                       DomainSpec::disk(0.0, 4.0)),
                    ConfigError);
    // Not proper onto W from W1.
    CHECK_THROWS_AS(PolyLikeSpec::make(fixtures::squaring(), DomainSpec::disk(0.0, 4.0),
                                       DomainSpec::disk(0.0, 0.5)),
                    ConfigError);
}

TEST_CASE("filled-set membership by escape time") {
    PolyLikeSpec spec = squaring_spec();
    CHECK(in_filled_k(spec, cplx(0.3, 0.2)));
    CHECK(in_filled_k(spec, cplx(0.0, 0.99)));
    CHECK_FALSE(in_filled_k(spec, cplx(1.4, 0.0)));
    CHECK_FALSE(in_filled_k(spec, cplx(3.0, 0.0)));
}

TEST_CASE("potential boundary values and functional equation") {
    PolyLikeSpec spec = squaring_spec();
    PotentialM pot = PotentialM::build(spec);
    CHECK(pot.boundary_residual() < 1e-8);

    // 0 on the outer boundary, 1 on the inner one.
    for (int i = 0; i < 32; ++i) {
        double th = 2.0 * M_PI * i / 32.0;
        cplx zo = 3.9999 * std::polar(1.0, th);
        CHECK(std::abs(pot.value(zo)) < 1e-3);
        cplx zi = 2.0 * std::polar(1.0, th);
        CHECK(std::abs(pot.value(zi) - 1.0) < 1e-6);
    }

    // The concentric-circle solve reproduces 2 - log2|z| on the annulus.
    for (double r : {2.2, 2.8, 3.1, 3.7}) {
        cplx z = std::polar(r, 0.3);
        CHECK(std::abs(pot.value(z) - (2.0 - std::log2(r))) < 1e-8);
    }

    // M(f(z)) = M(z) - 1 wherever both sides exist.
    Rng rng(1);
    CHECK(pot.functional_residual(rng, 1000) < 1e-5);

    // 64-point check against the exact extension closed form, which itself
    // satisfies the equation and the boundary values: M(z) = 2 + n - 2^n log2|z|
    // on the n-th preimage annulus.
    for (int i = 0; i < 64; ++i) {
        double r = 1.05 + (i % 8) * 0.115;     // inside W1, outside K
        double th = 2.0 * M_PI * i / 64.0;
        cplx z = std::polar(r, th);
        auto ev = pot.eval(z);
        REQUIRE(ev.ok);
        double closed = 2.0 + ev.depth - std::pow(2.0, ev.depth) * std::log2(r);
        CHECK(std::abs(ev.M - closed) < 1e-6);
    }
}

TEST_CASE("gradient of the potential is radial for the circle fixture") {
    PolyLikeSpec spec = squaring_spec();
    PotentialM pot = PotentialM::build(spec);
    for (double r : {1.2, 1.7, 2.5, 3.5}) {
        for (double th : {0.0, 0.9, 2.2, 4.0}) {
            cplx z = std::polar(r, th);
            auto ev = pot.eval(z);
            REQUIRE(ev.ok);
            // grad M points radially inward (M grows toward K).
            cplx radial = -z / std::abs(z);
            cplx ghat = ev.grad / std::abs(ev.grad);
            CHECK(std::abs(ghat - radial) < 1e-6);
        }
    }
}

TEST_CASE("orthogonal rays are radial and land on the circle") {
    PolyLikeSpec spec = squaring_spec();
    PotentialM pot = PotentialM::build(spec);

    TauRay ray = trace_ray(pot, M_PI / 2.0, cplx(4.0, 0.0), 24.0);
    CHECK_FALSE(ray.stalled);
    for (const cplx& p : ray.pts) CHECK(std::abs(std::arg(p)) < 1e-8);
    for (size_t i = 1; i < ray.levels.size(); ++i) CHECK(ray.levels[i] > ray.levels[i - 1]);

    auto land = landing(ray, spec, 1e-6, 32);
    REQUIRE(land.landed);
    CHECK(std::abs(land.point - cplx(1.0, 0.0)) < 1e-6);

    TauRay ray_i = trace_ray(pot, M_PI / 2.0, cplx(0.0, 4.0), 24.0);
    auto land_i = landing(ray_i, spec, 1e-6, 32);
    REQUIRE(land_i.landed);
    CHECK(std::abs(land_i.point - cplx(0.0, 1.0)) < 1e-6);
}

TEST_CASE("slanted rays cross the level circles at the requested angle") {
    PolyLikeSpec spec = squaring_spec();
    PotentialM pot = PotentialM::build(spec);
    double tau = M_PI / 3.0;
    TauRay ray = trace_ray(pot, tau, cplx(4.0, 0.0), 10.0);
    CHECK_FALSE(ray.stalled);
    // Measure the angle between the step direction and the level direction i*ghat.
    for (size_t i = 20; i + 20 < ray.pts.size(); i += 97) {
        cplx step = ray.pts[i + 1] - ray.pts[i];
        auto ev = pot.eval(ray.pts[i]);
        REQUIRE(ev.ok);
        cplx level_dir = cplx(0.0, 1.0) * ev.grad / std::abs(ev.grad);
        double ang = std::acos(std::clamp(
            (step.real() * level_dir.real() + step.imag() * level_dir.imag()) / std::abs(step),
            -1.0, 1.0));
        CHECK(std::abs(ang - tau) < 1e-3);
    }
    // Spiral in |z|: the argument drifts monotonically.
    CHECK(std::arg(ray.pts.back()) != doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("ray pieces shrink like the closed-form radii") {
    PolyLikeSpec spec = squaring_spec();
    PotentialM pot = PotentialM::build(spec);
    TauRay ray = trace_ray(pot, M_PI / 2.0, cplx(4.0, 0.0), 12.0);
    auto pieces = ray_pieces(ray, spec);
    REQUIRE(pieces.size() >= 8);
    for (const auto& piece : pieces) {
        // Piece n runs between radii 4^(2^-(n+1)) and 4^(2^-(n+2)).
        double hi = std::pow(4.0, std::pow(0.5, piece.n + 1));
        double lo = std::pow(4.0, std::pow(0.5, piece.n + 2));
        CHECK(piece.length == doctest::Approx(hi - lo).epsilon(0.02));
    }
    for (size_t n = 0; n + 5 < pieces.size(); ++n)
        CHECK(pieces[n + 5].length < pieces[n].length);
}

TEST_CASE("truncated rays report divergence and piece counts honestly") {
    PolyLikeSpec spec = squaring_spec();
    PotentialM pot = PotentialM::build(spec);
    TauRay ray = trace_ray(pot, M_PI / 2.0, cplx(4.0, 0.0), 4.0);
    auto pieces = ray_pieces(ray, spec);
    CHECK(pieces.size() == 3);

    TauRay stub = trace_ray(pot, M_PI / 2.0, cplx(4.0, 0.0), 0.5);
    auto land = landing(stub, spec, 1e-6, 2000);
    CHECK_FALSE(land.landed);
    CHECK(!land.note.empty());
}

TEST_CASE("equivariance: the map carries deep ray pieces to shallow ones") {
    PolyLikeSpec spec = squaring_spec();
    PotentialM pot = PotentialM::build(spec);
    double tau = M_PI / 2.0;
    double theta = 2.0 * M_PI / 3.0;
    TauRay ray = trace_ray(pot, tau, 4.0 * std::polar(1.0, theta), 8.0);

    // Where the ray crosses level 1, restart a ray from the image point on the
    // outer boundary and compare f(deep portion) against its shallow portion.
    size_t cross = 0;
    for (size_t i = 1; i < ray.levels.size(); ++i)
        if (ray.levels[i - 1] < 1.0 && ray.levels[i] >= 1.0) cross = i;
    REQUIRE(cross > 0);
    cplx s1 = ray.pts[cross];
    cplx fs1 = evaluate(spec.map, SpherePoint(s1)).value;
    CHECK(std::abs(std::abs(fs1) - 4.0) < 1e-3);

    TauRay img = trace_ray(pot, tau, fs1, 8.0);
    for (size_t i = cross; i < ray.pts.size(); i += 153) {
        if (ray.levels[i] > 6.0) break;
        cplx mapped = evaluate(spec.map, SpherePoint(ray.pts[i])).value;
        // Find the closest image-ray point at the matching level.
        double want = ray.levels[i] - 1.0;
        double best = 1e300;
        for (size_t j = 1; j < img.levels.size(); ++j)
            if (std::abs(img.levels[j] - want) < 0.02)
                best = std::min(best, std::abs(img.pts[j] - mapped));
        CHECK(best < 1e-4);
    }
}

TEST_CASE("separatrix selection at a synthetic quadratic saddle") {
    // Ascent directions of Re(c2 u^2) sit at -arg(c2)/2 and opposite.
    cplx c2 = std::polar(1.0, 0.6);
    double asc = -0.3;
    int side = 0;
    // Incoming 0.2 off one ascending direction picks that direction.
    double out = select_separatrix(c2, asc + 0.2, side);
    CHECK(out == doctest::Approx(asc));
    CHECK(side == -1); // turned clockwise

    // Exact tie without a remembered side is refused.
    int fresh = 0;
    CHECK_THROWS_AS(select_separatrix(c2, asc + M_PI / 2.0, fresh), StuckAtSaddle);

    // With a remembered side the tie resolves deterministically.
    int forced = +1;
    double resolved = select_separatrix(c2, asc + M_PI / 2.0, forced);
    bool one_of = std::abs(resolved - asc) < 1e-9 ||
                  std::abs(std::remainder(resolved - (asc + M_PI), 2 * M_PI)) < 1e-9;
    CHECK(one_of);
}
