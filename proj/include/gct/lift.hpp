#pragma once

#include <vector>

#include "gct/curve.hpp"
#include "gct/map.hpp"

namespace gct {

struct LiftOptions {
    double newton_tol = 1e-13;       // |f(w) - target| relative to max(1, |target|)
    int max_newton = 30;
    double max_gap = 0.05;           // chordal gap between consecutive lifted samples
    double critical_clearance = 1e-6; // chordal clearance from critical values
    double min_param_step = 1e-12;
    size_t max_points = 200000;
    double branch_guard = 0.5;       // fraction of nearest-other-preimage distance
};

/// Analytic continuation of the inverse branch of f along `base`, starting from
/// `start` with f(start) = base(0).  Predictor is the previous point; corrector is
/// Newton on f(w) = base(t); the parameter step is bisected whenever the corrector
/// jumps by more than branch_guard times the distance from the current point to the
/// nearest other preimage of the same target.
///
/// The result L reproduces the base parameter grid (refined adaptively) and
/// satisfies f(L(t)) = base.eval(t) to newton_tol at every sample.
///
/// Throws CriticalValueProximity when the base curve passes within
/// critical_clearance of a critical value, NoConvergence when the corrector fails
/// at the minimal parameter step.
Curve lift_curve(const MapSpec& f, const Curve& base, cplx start, const LiftOptions& opt = {});

/// Same, with the critical values precomputed by the caller.
Curve lift_curve(const MapSpec& f, const Curve& base, cplx start,
                 const std::vector<SpherePoint>& crit_values, const LiftOptions& opt);

struct Condition05Report {
    double min_distance = 0.0;
    bool pass = false;
    int worst_orbit_step = -1;
    int worst_curve = -1;
    double clearance = 0.0;
    int horizon = 0;
};

/// Minimum chordal distance between the base curves and the forward orbit of
/// the finite critical points up to `horizon`, compared against the clearance.
Condition05Report check_condition_0_5(const MapSpec& f, const std::vector<Curve>& base_curves,
                                      int horizon, double clearance = 1e-6);

} // namespace gct
