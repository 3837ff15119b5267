#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gct/error.hpp"
#include "gct/potential.hpp"

namespace gct {

/// Curve crossing the level lines of the potential at a constant angle tau,
/// traced from the outer boundary toward the filled set and parametrized by the
/// potential's value.
struct TauRay {
    double tau = 0.0;
    cplx start{0.0};
    std::vector<double> levels; // strictly increasing M values
    std::vector<cplx> pts;
    std::vector<cplx> saddles_hit;
    bool stalled = false;
    std::string stall_reason;
    double max_level_reached = 0.0;
};

struct RayOptions {
    double dM = 1.0 / 64.0;       // target level increment per step
    double max_arc = 0.05;        // arclength cap per step
    double grad_floor = 1e-7;     // saddle trigger, relative to the running gradient scale
    int max_steps = 400000;
    double saddle_hop = 1e-4;     // relative exit offset after a saddle
};

struct StuckAtSaddle : Error {
    cplx location;
    StuckAtSaddle(cplx z, const std::string& detail)
        : Error("ambiguous separatrix at saddle (" + std::to_string(z.real()) + ", " +
                std::to_string(z.imag()) + "): " + detail),
          location(z) {}
};
struct LevelStall : Error {
    using Error::Error;
};

/// Picks the outgoing ascending separatrix at a saddle with quadratic part
/// Re(c2 (z-s)^2): the ascending direction closest (clockwise or counterclockwise)
/// to the incoming direction.  `side` persists the turning side across repeated
/// hits: 0 = free choice, +1 / -1 = forced side.  Throws StuckAtSaddle on a tie
/// when no side is remembered.
double select_separatrix(cplx c2, double theta_in, int& side, double tie_tol = 1e-6);

/// Integrates the constant-angle field from a point of the outer boundary up to
/// max_level.  At a gradient collapse the separatrix rule is applied (with side
/// persistence); LevelStall / StuckAtSaddle are thrown as errors.
TauRay trace_ray(const PotentialM& pot, double tau, cplx start, double max_level,
                 RayOptions opt = {});

struct RayPiece {
    int n = 0; // levels [n, n+1]
    std::vector<cplx> pts;
    double length = 0.0; // Euclidean arclength
};

/// Splits the ray at integer levels (level n is the n-th preimage of the outer
/// boundary) and reports per-piece arclength.
std::vector<RayPiece> ray_pieces(const TauRay& ray, const PolyLikeSpec& spec);

struct LandingReport {
    bool landed = false;
    cplx point{0.0};
    double window_spread = 0.0; // max pairwise chordal distance over the window
    double dist_to_k_estimate = 0.0;
    std::string note;
};

/// Landing verdict: the last `window` points must be mutually within tol; the
/// centroid is returned with an escape-time estimate of its distance to the
/// filled set's boundary.
LandingReport landing(const TauRay& ray, const PolyLikeSpec& spec, double tol = 1e-6,
                      int window = 32);

} // namespace gct
