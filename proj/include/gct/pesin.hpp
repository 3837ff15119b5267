#pragma once

#include <vector>

#include "gct/good_points.hpp"
#include "gct/measure.hpp"

namespace gct {

struct PesinOptions {
    int n_orbits = 200;
    int orbit_len = 24;                 // backward steps per orbit
    std::vector<double> r_grid = {0.2, 0.15, 0.1, 0.075, 0.05, 0.025};
    std::vector<double> c_grid = {1.5, 2.0, 3.0, 4.0};
    std::vector<int> distortion_checkpoints = {1, 2, 4, 8, 16, 24};
    int circle_probes = 8;
    double coverage_target = 0.5;
    uint64_t seed = 11;
};

struct PesinBlock {
    double r = 0.0;
    double C = 0.0;
    double lambda = 0.0; // exp(-chi) (1 + slack)
    double chi = 0.0;
    double coverage = 0.0; // fraction of orbits satisfying both inequalities at (r, C)
    int orbits_tested = 0;
    std::vector<std::vector<double>> coverage_grid; // [r_index][c_index]
    std::vector<double> r_grid;
    std::vector<double> c_grid;
};

/// Empirical inverse-branch block: along sampled backward orbits, the derivative
/// products must satisfy |F_n'| < C lambda^n, and the distortion ratio
/// |F_n'(x)| / |F_n'(z)| must stay below C for z on a test circle of radius r
/// (branches continued by segment lifting).  Returns the largest r (with the
/// smallest C) reaching the coverage target, plus the whole coverage grid.
PesinBlock pesin_block(const MapSpec& f, const EmpiricalMeasure& mu, double lambda_slack,
                       PesinOptions opt = {});

/// Re-checks the returned (r, C, lambda) on freshly sampled backward orbits.
double pesin_verify(const MapSpec& f, const EmpiricalMeasure& mu, const PesinBlock& block,
                    int n_orbits, uint64_t seed, PesinOptions opt = {});

struct GoodDensityReport {
    int points_tested = 0;
    int points_good = 0;
    int points_undetermined = 0;
    double fraction_good = 0.0;
    std::vector<double> densities; // per-point good-time densities
    int horizon = 0;
};

/// Runs the good-time detector on sampled atoms of the measure and reports the
/// fraction whose good-time density clears kappa.  Failures count as
/// undetermined, never good.
GoodDensityReport statistical_good_density(const MapSpec& f, const EmpiricalMeasure& mu,
                                           const GoodPointParams& params, int horizon,
                                           int n_points, uint64_t seed,
                                           const BasinOracle* basin = nullptr, int workers = 1);

} // namespace gct
