#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gct/census.hpp"
#include "gct/error.hpp"

#include "fixtures.hpp"

using namespace gct;

namespace {

PeriodicPoint find_point(const MapSpec& f, cplx near) {
    for (const auto& p : periodic_points(f, 1))
        if (p.location.finite() && std::abs(p.location.value - near) < 1e-6) return p;
    throw Error("fixture fixed point not found");
}

CensusParams std_census(int k = 20) {
    CensusParams cp;
    cp.k = k;
    cp.E = 16;
    cp.kappa = 1.0;
    cp.gp.r = 0.5;
    cp.gp.delta = 0.1;
    cp.gp.kappa = 0.5;
    cp.gp.Delta = 1;
    cp.gp.n0 = 10;
    return cp;
}

} // namespace

TEST_CASE("census on the constant branch of the squaring tree") {
    CodingTree tree = fixtures::squaring_tree();
    KoenigsChart chart = koenigs_chart(fixtures::squaring(), find_point(fixtures::squaring(), 1.0), 16);
    Address branch{SymbolWord{}, SymbolWord{1}};

    CensusParams cp = std_census(20);
    auto rep = annulus_census(tree, chart, branch, cp);

    CHECK(rep.eta == doctest::Approx(1.0 - 3.0 / 16.0));
    CHECK(rep.a_minus.empty());
    CHECK(int(rep.a_plus.size()) == rep.k - 1);
    CHECK(rep.count_ok); // k-1 >= k (1 - 3/(E kappa))
    CHECK(rep.bound_all_ok);
    CHECK(rep.prefix_counts_ok);
    CHECK(rep.m0 >= 0);
    CHECK(rep.all_ok());

    // Every element's time is near its ring index for this uniformly expanding branch.
    for (const auto& el : rep.elements) {
        CHECK(el.t <= rep.times[size_t(el.m) + 1] + rep.E + rep.n_eps);
        CHECK(el.E1 + el.E2 < rep.E);
    }
}

TEST_CASE("single-link census is vacuous") {
    CodingTree tree = fixtures::squaring_tree();
    KoenigsChart chart = koenigs_chart(fixtures::squaring(), find_point(fixtures::squaring(), 1.0), 16);
    auto rep = annulus_census(tree, chart, Address{SymbolWord{}, SymbolWord{1}}, std_census(1));
    CHECK(rep.a_plus.empty());
    CHECK(rep.a_minus.empty());
    CHECK(rep.count_ok);
    CHECK(rep.prefix_counts_ok);
}

TEST_CASE("census on the basilica branch at the golden fixed point") {
    CodingTree tree = fixtures::basilica_tree();
    double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    KoenigsChart chart = koenigs_chart(fixtures::basilica(), find_point(fixtures::basilica(), golden), 16);

    // The constant branch of letter 1 lands at the golden fixed point.
    Address branch{SymbolWord{}, SymbolWord{1}};
    auto lim = tree.coding_limit(branch, 1e-9, 200);
    REQUIRE(lim.converged);
    REQUIRE(chordal(lim.point, chart.q) < 1e-7);

    auto rep = annulus_census(tree, chart, branch, std_census(20));
    CHECK(rep.count_ok);
    CHECK(rep.bound_all_ok);
    CHECK(rep.prefix_counts_ok);
    CHECK(double(rep.a_plus.size()) >= rep.eta * rep.k);
}

TEST_CASE("census soundness: recorded elements survive a denser re-test") {
    CodingTree tree = fixtures::squaring_tree();
    KoenigsChart chart = koenigs_chart(fixtures::squaring(), find_point(fixtures::squaring(), 1.0), 16);
    CensusParams cp = std_census(12);
    auto rep = annulus_census(tree, chart, Address{SymbolWord{}, SymbolWord{1}}, cp);

    // Rebuild the same telescope and re-test each element's ring intersections
    // with independently refined edges.
    auto gt = good_times(tree.map(), chart.q, cp.gp, 2 * cp.k + 10);
    Telescope tel = build_telescope(tree.map(), chart.q, gt.good_times, cp.gp, cp.k, &tree);
    auto deepest = [&](cplx z) {
        if (chordal(SpherePoint(z), SpherePoint(chart.q)) >= cp.gp.r) return -1;
        int l = 0;
        while (l + 1 <= cp.k && tel.trace[size_t(l)].contains(z)) ++l;
        return l;
    };
    for (const auto& el : rep.elements) {
        Curve e = tree.edge(Address{SymbolWord{}, SymbolWord{1}}.prefix(size_t(el.t) + 1))
                      .refined(0.01);
        bool hit = false;
        for (const cplx& p : e.pts)
            if (deepest(p) == el.m) hit = true;
        CHECK(hit);
    }
}

TEST_CASE("census rejects an inconsistent window parameter") {
    CodingTree tree = fixtures::squaring_tree();
    KoenigsChart chart = koenigs_chart(fixtures::squaring(), find_point(fixtures::squaring(), 1.0), 16);
    CensusParams cp = std_census(8);
    cp.E = 2;
    cp.kappa = 1.0; // E <= 3/kappa
    CHECK_THROWS_AS(annulus_census(tree, chart, Address{SymbolWord{}, SymbolWord{1}}, cp),
                    ConfigError);
}
