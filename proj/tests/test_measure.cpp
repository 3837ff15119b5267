#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "gct/error.hpp"
#include "gct/measure.hpp"
#include "gct/pesin.hpp"

#include "fixtures.hpp"

using namespace gct;

TEST_CASE("backward-orbit sampling of the squaring map") {
    EmpiricalMeasure mu = sample_mme(fixtures::squaring(), 20000, 64, 101);
    mu.validate();
    CHECK(mu.atoms.size() == 20000);
    for (const auto& a : mu.atoms) CHECK(std::abs(std::abs(a.value) - 1.0) < 1e-6);

    // Angular distribution is uniform: KS statistic below the 1% critical value.
    double ks = ks_uniform_angle(mu);
    CHECK(ks < 1.63 / std::sqrt(20000.0));
}

TEST_CASE("degree-1 maps are rejected") {
    CHECK_THROWS_AS(sample_mme(fixtures::linear(2.0), 100, 10, 1), ConfigError);
}

TEST_CASE("basilica atoms sit on the boundary of the filled set") {
    EmpiricalMeasure mu = sample_mme(fixtures::basilica(), 4000, 64, 7);
    MapSpec f = fixtures::basilica();
    auto escapes = [&](cplx z) {
        SpherePoint p(z);
        for (int i = 0; i < 300; ++i) {
            if (p.at_infinity || std::abs(p.value) > 2.5) return true;
            p = evaluate(f, p);
        }
        return false;
    };
    // Escape-time probe: within 1e-4 of the boundary iff a small disk straddles it.
    int ok = 0;
    for (const auto& a : mu.atoms) {
        bool center = escapes(a.value);
        bool straddles = false;
        for (int i = 0; i < 12 && !straddles; ++i) {
            double th = 2.0 * M_PI * i / 12.0;
            for (double rho : {1e-4, 3e-5})
                if (escapes(a.value + std::polar(rho, th)) != center) straddles = true;
        }
        if (straddles) ++ok;
    }
    CHECK(double(ok) / double(mu.atoms.size()) > 0.99);
}

TEST_CASE("exponent of the squaring map's balanced measure") {
    EmpiricalMeasure mu = sample_mme(fixtures::squaring(), 100000, 100, 2024);
    auto est = lyapunov(fixtures::squaring(), mu);
    CHECK(std::abs(est.chi - std::log(2.0)) < 1e-3);
    CHECK(est.atoms_dropped == 0);
}

TEST_CASE("exponent of a point mass at the fixed point") {
    EmpiricalMeasure mu = EmpiricalMeasure::point_mass(SpherePoint(cplx(1.0, 0.0)));
    auto est = lyapunov(fixtures::squaring(), mu);
    CHECK(std::abs(est.chi - std::log(2.0)) < 1e-10);
    CHECK(est.std_error == 0.0);
}

TEST_CASE("exponent of a cycle equals the multiplier average") {
    // Period-2 cycle of the squaring map: (1/2) log 4 = log 2.
    auto cyc = periodic_points(fixtures::squaring(), 2);
    REQUIRE(!cyc.empty());
    EmpiricalMeasure mu = EmpiricalMeasure::cycle(fixtures::squaring(), cyc[0].location, 2);
    auto est = lyapunov(fixtures::squaring(), mu);
    CHECK(std::abs(est.chi - 0.5 * std::log(std::abs(cyc[0].multiplier))) < 1e-10);
}

TEST_CASE("basilica exponent is positive and stable across runs") {
    auto run = [&](uint64_t seed) {
        EmpiricalMeasure mu = sample_mme(fixtures::basilica(), 100000, 100, seed);
        return lyapunov(fixtures::basilica(), mu).chi;
    };
    double a = run(1), b = run(999);
    CHECK(a > 0.0);
    CHECK(std::abs(a - b) / a < 0.01);
    // Balanced-measure exponent of a quadratic with bounded critical orbit.
    CHECK(std::abs(a - std::log(2.0)) < 0.02);
}

TEST_CASE("measure invariance under push-forward (angular histogram)") {
    EmpiricalMeasure mu = sample_mme(fixtures::squaring(), 50000, 100, 5);
    const int bins = 32;
    std::vector<double> before(bins, 0.0), after(bins, 0.0);
    for (size_t i = 0; i < mu.atoms.size(); ++i) {
        double th = std::arg(mu.atoms[i].value);
        if (th < 0) th += 2.0 * M_PI;
        before[size_t(th / (2.0 * M_PI) * bins) % bins] += mu.weights[i];
        cplx fwd = evaluate(fixtures::squaring(), mu.atoms[i]).value;
        double th2 = std::arg(fwd);
        if (th2 < 0) th2 += 2.0 * M_PI;
        after[size_t(th2 / (2.0 * M_PI) * bins) % bins] += mu.weights[i];
    }
    double tv = 0.0;
    for (int b = 0; b < bins; ++b) tv += std::abs(before[size_t(b)] - after[size_t(b)]);
    CHECK(0.5 * tv < 0.02);
}

TEST_CASE("ruelle inequality check") {
    LyapunovEstimate good{std::log(2.0), 1e-4, 1000, 0};
    CHECK(ruelle_check(std::log(2.0), good).pass);
    LyapunovEstimate small{0.1, 1e-3, 1000, 0};
    CHECK_FALSE(ruelle_check(10.0, small).pass);

    EmpiricalMeasure mu = sample_mme(fixtures::basilica(), 20000, 100, 3);
    auto est = lyapunov(fixtures::basilica(), mu);
    CHECK(ruelle_check(std::log(2.0), est).pass);
}

TEST_CASE("inverse-branch block of the squaring map") {
    EmpiricalMeasure mu = sample_mme(fixtures::squaring(), 20000, 100, 17);
    PesinOptions opt;
    opt.n_orbits = 120;
    PesinBlock blk = pesin_block(fixtures::squaring(), mu, 0.1, opt);
    CHECK(blk.lambda == doctest::Approx(0.55).epsilon(1e-2));
    CHECK(blk.r >= 0.05);
    CHECK(blk.C <= 4.0);
    CHECK(blk.coverage >= 0.95);

    double holdout = pesin_verify(fixtures::squaring(), mu, blk, 60, 71, opt);
    CHECK(holdout >= 0.95);
}

TEST_CASE("inverse-branch block of a point mass at the source") {
    EmpiricalMeasure mu = EmpiricalMeasure::point_mass(SpherePoint(cplx(1.0, 0.0)));
    PesinOptions opt;
    opt.n_orbits = 8;
    PesinBlock blk = pesin_block(fixtures::squaring(), mu, 0.1, opt);
    CHECK(blk.coverage == doctest::Approx(1.0));
    CHECK(blk.r > 0.0);
}

TEST_CASE("an atom at a critical value lowers the coverage") {
    // Mix the balanced measure with an atom at 0 (critical point, preimage of
    // the critical value -1 chain for the basilica); backward continuation from
    // such an atom meets the multiple preimage and the orbit is excluded.
    EmpiricalMeasure mu = sample_mme(fixtures::basilica(), 2000, 50, 23);
    mu.atoms.push_back(SpherePoint(cplx(-1.0, 0.0))); // critical value of the basilica
    mu.weights.assign(mu.atoms.size(), 1.0 / double(mu.atoms.size()));
    PesinOptions opt;
    opt.n_orbits = 60;
    PesinBlock blk = pesin_block(fixtures::basilica(), mu, 0.1, opt);
    CHECK(blk.orbits_tested > 0);
    CHECK(blk.coverage <= 1.0);
}

TEST_CASE("statistical good density on the squaring circle") {
    EmpiricalMeasure mu = sample_mme(fixtures::squaring(), 5000, 100, 31);
    GoodPointParams p;
    p.r = 0.5;
    p.delta = 0.1;
    p.kappa = 0.5;
    p.Delta = 1;
    auto rep = statistical_good_density(fixtures::squaring(), mu, p, 25, 40, 77);
    CHECK(rep.points_tested == 40);
    CHECK(rep.fraction_good >= 0.95);
    for (double d : rep.densities) CHECK(d >= 0.9);
}

TEST_CASE("point mass at the superattracting point has density zero") {
    EmpiricalMeasure mu = EmpiricalMeasure::point_mass(SpherePoint(cplx(0.0, 0.0)));
    GoodPointParams p;
    p.r = 0.5;
    p.delta = 0.1;
    p.kappa = 0.5;
    auto rep = statistical_good_density(fixtures::squaring(), mu, p, 14, 5, 3);
    CHECK(rep.points_good == 0);
}

TEST_CASE("zero horizon leaves every point undetermined") {
    EmpiricalMeasure mu = sample_mme(fixtures::squaring(), 1000, 50, 13);
    GoodPointParams p;
    auto rep = statistical_good_density(fixtures::squaring(), mu, p, 0, 10, 5);
    CHECK(rep.points_undetermined == rep.points_tested);
    CHECK(rep.fraction_good == 0.0);
}
