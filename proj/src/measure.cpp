#include "gct/measure.hpp"

#include <algorithm>
#include <cmath>

#include "gct/error.hpp"

namespace gct {

void EmpiricalMeasure::validate() const {
    if (atoms.size() != weights.size()) throw ConfigError("measure atom/weight size mismatch");
    double s = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw ConfigError("measure weights must be positive");
        s += w;
    }
    if (std::abs(s - 1.0) > 1e-12) throw ConfigError("measure weights must sum to 1");
}

EmpiricalMeasure EmpiricalMeasure::point_mass(SpherePoint p) {
    EmpiricalMeasure m;
    m.atoms = {p};
    m.weights = {1.0};
    m.provenance = Provenance::PeriodicCycle;
    m.sample_count = 1;
    return m;
}

EmpiricalMeasure EmpiricalMeasure::cycle(const MapSpec& f, SpherePoint p, int period) {
    EmpiricalMeasure m;
    SpherePoint z = p;
    for (int i = 0; i < period; ++i) {
        m.atoms.push_back(z);
        m.weights.push_back(1.0 / period);
        z = evaluate(f, z);
    }
    if (chordal(z, p) > 1e-7) throw ConfigError("point is not periodic with the stated period");
    m.provenance = Provenance::PeriodicCycle;
    m.sample_count = size_t(period);
    return m;
}

EmpiricalMeasure sample_mme(const MapSpec& f, size_t n_samples, size_t burn_in, uint64_t seed) {
    if (f.degree < 2) throw ConfigError("backward-orbit sampling needs degree >= 2");
    EmpiricalMeasure m;
    m.provenance = Provenance::PullbackMme;
    m.seed = seed;
    m.sample_count = n_samples;
    m.atoms.reserve(n_samples);

    Rng rng(seed);
    cplx z(0.4271, 0.3819); // generic seed point away from exceptional orbits
    size_t total = burn_in + n_samples;
    for (size_t i = 0; i < total; ++i) {
        // Preimages with multiplicity; uniform choice weights the balanced measure.
        std::vector<cplx> pre = finite_preimages(f, z);
        if (pre.empty()) throw Error("backward orbit hit a point with no finite preimage");
        z = pre[size_t(rng.below(uint64_t(pre.size())))];
        if (i >= burn_in) m.atoms.push_back(SpherePoint(z));
    }
    m.weights.assign(m.atoms.size(), 1.0 / double(m.atoms.size()));
    return m;
}

LyapunovEstimate lyapunov(const MapSpec& f, const EmpiricalMeasure& mu) {
    mu.validate();
    std::vector<SpherePoint> crit;
    for (const auto& c : critical_points(f)) crit.push_back(c.location);

    LyapunovEstimate est;
    double sum = 0.0, sumsq = 0.0, wtot = 0.0;
    for (size_t i = 0; i < mu.atoms.size(); ++i) {
        bool at_crit = false;
        for (const auto& c : crit)
            if (chordal(mu.atoms[i], c) < 1e-9) at_crit = true;
        if (at_crit) {
            ++est.atoms_dropped;
            continue;
        }
        double v = std::log(sphere_derivative_norm(f, mu.atoms[i]));
        double w = mu.weights[i];
        sum += w * v;
        sumsq += w * v * v;
        wtot += w;
        ++est.atoms_used;
    }
    if (est.atoms_used == 0) throw Error("all atoms sit at critical points");
    est.chi = sum / wtot;
    double var = std::max(0.0, sumsq / wtot - est.chi * est.chi);
    est.std_error = std::sqrt(var / double(est.atoms_used));
    return est;
}

RuelleCheck ruelle_check(double h_mu, const LyapunovEstimate& chi) {
    RuelleCheck c;
    c.h_mu = h_mu;
    c.chi = chi.chi;
    c.std_error = chi.std_error;
    c.pass = h_mu <= 2.0 * chi.chi + 3.0 * chi.std_error;
    return c;
}

double ks_uniform_angle(const EmpiricalMeasure& mu) {
    std::vector<double> u;
    u.reserve(mu.atoms.size());
    for (const auto& a : mu.atoms) {
        if (!a.finite()) continue;
        double th = std::arg(a.value);
        if (th < 0) th += 2.0 * M_PI;
        u.push_back(th / (2.0 * M_PI));
    }
    std::sort(u.begin(), u.end());
    double ks = 0.0;
    size_t n = u.size();
    for (size_t i = 0; i < n; ++i) {
        double lo = double(i) / n, hi = double(i + 1) / n;
        ks = std::max(ks, std::max(std::abs(u[i] - lo), std::abs(u[i] - hi)));
    }
    return ks;
}

} // namespace gct
