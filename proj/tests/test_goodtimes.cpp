#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gct/error.hpp"
#include "gct/good_points.hpp"
#include "gct/telescope.hpp"

#include "fixtures.hpp"

using namespace gct;

namespace {

GoodPointParams std_params() {
    GoodPointParams p;
    p.r = 0.5;
    p.delta = 0.1;
    p.kappa = 0.5;
    p.Delta = 1;
    p.n0 = 10;
    return p;
}

} // namespace

TEST_CASE("region membership and chordal balls") {
    Region ball = Region::chordal_ball(cplx(1.0, 0.0), 0.5, 96);
    CHECK(ball.contains(cplx(1.0, 0.0)));
    CHECK(ball.contains(cplx(1.2, 0.1)));
    CHECK_FALSE(ball.contains(cplx(2.5, 0.0)));
    // Boundary samples sit at chordal distance r from the center.
    for (const cplx& p : ball.boundary.pts)
        CHECK(chordal(p, cplx(1.0, 0.0)) == doctest::Approx(0.5).epsilon(1e-9));
    // A ball reaching past infinity is not representable.
    CHECK_THROWS_AS(Region::chordal_ball(cplx(100.0, 0.0), 1.0, 32), Error);
}

TEST_CASE("single pullback of a ball under the squaring map") {
    MapSpec f = fixtures::squaring();
    Region ball = Region::chordal_ball(cplx(1.0, 0.0), 0.5, 128);
    auto pb = pull_back_once(f, ball, cplx(1.0, 0.0));
    REQUIRE(pb.ok);
    CHECK(pb.local_degree == 1);
    // The component around 1 is close to the square-root image of the disk.
    double reach = pb.region.max_chordal_from(cplx(1.0, 0.0));
    CHECK(reach < 0.30);
    CHECK(reach > 0.10);
    // Forward images of the traced boundary return to the ball's sphere-circle.
    for (size_t i = 0; i < pb.region.boundary.pts.size(); i += 7) {
        cplx fw = evaluate(f, SpherePoint(pb.region.boundary.pts[i])).value;
        CHECK(chordal(fw, cplx(1.0, 0.0)) == doctest::Approx(0.5).epsilon(1e-6));
    }
}

TEST_CASE("pullback through a critical value is reported, not silently accepted") {
    MapSpec f = fixtures::squaring();
    // Boundary passes through the critical value 0.
    Region bad = Region::chordal_ball(cplx(0.05, 0.0), chordal(cplx(0.05, 0.0), cplx(0.0, 0.0)),
                                      64);
    auto pb = pull_back_once(f, bad, std::sqrt(cplx(0.05, 0.0)));
    CHECK_FALSE(pb.ok);
    CHECK(!pb.failure.empty());
}

TEST_CASE("a ball around a critical value pulls back with local degree two") {
    MapSpec f = fixtures::squaring();
    Region ball = Region::chordal_ball(cplx(0.0, 0.0), 0.3, 96);
    auto pb = pull_back_once(f, ball, cplx(0.0, 0.0));
    REQUIRE(pb.ok);
    CHECK(pb.local_degree == 2); // the boundary closes after two loops
    CHECK(pb.region.contains(cplx(0.0, 0.0)));
}

TEST_CASE("good times at the repelling fixed point of the squaring map") {
    auto rep = good_times(fixtures::squaring(), cplx(1.0, 0.0), std_params(), 50);
    CHECK(rep.good_times.size() == 50);
    CHECK(rep.density == doctest::Approx(1.0));
    CHECK(rep.density_ok);
    CHECK(rep.diam_trend_checked);
    CHECK(rep.diam_trend_ok);
    // Trace diameters contract roughly by half per step.
    for (const auto& e : rep.entries)
        if (e.n >= 3 && e.verdict == TimeVerdict::Good)
            CHECK(e.trace_diameter < 1.3 * std::pow(0.5, e.n));
}

TEST_CASE("the superattracting fixed point has no good times") {
    GoodPointParams p = std_params();
    auto rep = good_times(fixtures::squaring(), cplx(0.0, 0.0), p, 18);
    CHECK(rep.good_times.empty());
    CHECK(rep.density == 0.0);
    CHECK_FALSE(rep.density_ok);
}

TEST_CASE("Delta beyond the horizon leaves the good set empty") {
    GoodPointParams p = std_params();
    p.Delta = 60;
    auto rep = good_times(fixtures::squaring(), cplx(1.0, 0.0), p, 50);
    CHECK(rep.good_times.empty());
    for (const auto& e : rep.entries) CHECK(e.verdict == TimeVerdict::Skipped);
}

TEST_CASE("basin inclusion check passes at the boundary fixed point") {
    MapSpec f = fixtures::squaring();
    BasinOracle basin = basin_of_infinity_oracle(f);
    CHECK(basin(cplx(3.0, 0.0)));
    CHECK_FALSE(basin(cplx(0.2, 0.1)));
    auto rep = good_times(f, cplx(1.0, 0.0), std_params(), 20, &basin);
    REQUIRE(rep.basin_checked.has_value());
    CHECK(*rep.basin_checked);
}

TEST_CASE("significance of regions against the tree") {
    CodingTree tree = fixtures::squaring_tree();
    // The root itself is met at level 0.
    auto at_root = significance(cplx(4.0, 0.0), 0.2, tree, 0);
    CHECK(at_root.significant);
    CHECK(at_root.first_level == 0);
    // A region away from the tree hull is not significant.
    auto off = significance(cplx(0.0, 5.0), 0.1, tree, 6);
    CHECK_FALSE(off.significant);
    // A small ball at the fixed point is reached by deep edges.
    auto deep = significance(cplx(1.0, 0.0), 0.05, tree, 12);
    CHECK(deep.significant);
    CHECK(deep.first_level > 2);
}

TEST_CASE("telescope construction and verification on the squaring fixture") {
    MapSpec f = fixtures::squaring();
    CodingTree tree = fixtures::squaring_tree();
    GoodPointParams p = std_params();
    auto gt = good_times(f, cplx(1.0, 0.0), p, 30);

    Telescope tel = build_telescope(f, cplx(1.0, 0.0), gt.good_times, p, 5, &tree);
    CHECK(tel.k() == 5);
    CHECK(tel.times.front() == 0);
    // Trace radii contract like 2^-n_t.
    for (int t = 1; t <= tel.k(); ++t) {
        double reach = tel.trace[size_t(t) - 1].max_chordal_from(cplx(1.0, 0.0));
        CHECK(reach < 1.5 * p.r * std::pow(0.5, tel.times[size_t(t)]));
    }

    auto ver = verify_telescope(f, tel);
    CHECK(ver.all_ok());
    for (const auto& l : ver.links) {
        CHECK(l.margin > p.delta);
        CHECK(l.forward_deviation < 1e-6);
    }

    // Single-link telescope is trivially valid.
    Telescope tiny = build_telescope(f, cplx(1.0, 0.0), gt.good_times, p, 1, &tree);
    CHECK(verify_telescope(f, tiny).all_ok());
}

TEST_CASE("telescope verification on the basilica fixture") {
    MapSpec f = fixtures::basilica();
    CodingTree tree = fixtures::basilica_tree();
    double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    GoodPointParams p = std_params();
    auto gt = good_times(f, cplx(golden, 0.0), p, 30);
    CHECK(gt.density_ok);
    Telescope tel = build_telescope(f, cplx(golden, 0.0), gt.good_times, p, 5, &tree);
    auto ver = verify_telescope(f, tel);
    CHECK(ver.all_ok());
    for (const auto& l : ver.links) CHECK(l.margin > p.delta);
}

TEST_CASE("hand-built time sequences fail the density condition") {
    MapSpec f = fixtures::squaring();
    GoodPointParams p = std_params();
    p.kappa = 0.5;
    // Quadratic times: t/n_t -> 0 eventually violates the density condition.
    std::vector<int> quad;
    for (int t = 1; t <= 6; ++t) quad.push_back(t * t);
    Telescope tel = build_telescope(f, cplx(1.0, 0.0), quad, p, 6, nullptr);
    auto ver = verify_telescope(f, tel);
    CHECK_FALSE(ver.time_condition_ok);
    CHECK(ver.first_failed_link > 0);
}

TEST_CASE("overstated clearance flags the failing link") {
    MapSpec f = fixtures::squaring();
    GoodPointParams p = std_params();
    auto gt = good_times(f, cplx(1.0, 0.0), p, 20);
    Telescope tel = build_telescope(f, cplx(1.0, 0.0), gt.good_times, p, 4, nullptr);
    tel.params.delta = 0.49; // above the measured margins
    auto ver = verify_telescope(f, tel);
    CHECK_FALSE(ver.clearance_ok);
    CHECK(ver.first_failed_link >= 1);
}

TEST_CASE("good point verdict") {
    MapSpec f = fixtures::squaring();
    CodingTree tree = fixtures::squaring_tree();
    GoodPointParams p = std_params();

    auto verdict = good_point_verdict(f, cplx(1.0, 0.0), tree, p, 3, 8);
    CHECK(verdict.verdict == Verdict::Good);
    CHECK(verdict.telescopes_built == 3);
    CHECK(verdict.sup_trace_distance[8] < verdict.sup_trace_distance[1]);

    // A point away from the limit set: no significant deep region.
    auto off = good_point_verdict(f, cplx(3.0, 0.0), tree, p, 2, 4);
    CHECK(off.verdict == Verdict::Undetermined);
}

TEST_CASE("trace nesting holds on built telescopes") {
    MapSpec f = fixtures::basilica();
    double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    GoodPointParams p = std_params();
    auto gt = good_times(f, cplx(golden, 0.0), p, 25);
    Telescope tel = build_telescope(f, cplx(golden, 0.0), gt.good_times, p, 6, nullptr);
    for (size_t t = 1; t < tel.trace.size(); ++t) {
        const Region& inner = tel.trace[t];
        const Region& outer = tel.trace[t - 1];
        for (size_t i = 0; i < inner.boundary.pts.size(); i += 5)
            CHECK(outer.contains(inner.boundary.pts[i]));
    }
}
