#pragma once

#include <string>
#include <vector>

#include "gct/map.hpp"
#include "gct/rng.hpp"

namespace gct {

enum class Provenance { PullbackMme, BirkhoffOrbit, PeriodicCycle };

struct EmpiricalMeasure {
    std::vector<SpherePoint> atoms;
    std::vector<double> weights; // positive, sum to 1
    Provenance provenance = Provenance::PullbackMme;
    size_t sample_count = 0;
    uint64_t seed = 0;

    void validate() const;

    static EmpiricalMeasure point_mass(SpherePoint p);
    static EmpiricalMeasure cycle(const MapSpec& f, SpherePoint p, int period);
};

/// Uniform random backward orbit: from a fixed seed point, repeatedly pick one of
/// the d preimages uniformly (with multiplicity), discard burn_in, and keep the
/// visited points with equal weight.  Approximates the balanced measure.
/// Requires degree >= 2.
EmpiricalMeasure sample_mme(const MapSpec& f, size_t n_samples, size_t burn_in, uint64_t seed);

struct LyapunovEstimate {
    double chi = 0.0;       // weighted mean of log ||Df|| (spherical)
    double std_error = 0.0;
    size_t atoms_used = 0;
    size_t atoms_dropped = 0; // atoms at critical points
};

/// Weighted average of the log spherical derivative over the atoms.  Atoms within
/// 1e-9 of a critical point are dropped and counted.
LyapunovEstimate lyapunov(const MapSpec& f, const EmpiricalMeasure& mu);

struct RuelleCheck {
    double h_mu = 0.0;
    double chi = 0.0;
    double std_error = 0.0;
    bool pass = false; // h <= 2 chi + 3 se
};

/// Entropy is supplied, never estimated.
RuelleCheck ruelle_check(double h_mu, const LyapunovEstimate& chi);

/// Kolmogorov-Smirnov statistic of the atom arguments against the uniform law on
/// the circle (test helper for the degree-2 power map fixture).
double ks_uniform_angle(const EmpiricalMeasure& mu);

} // namespace gct
