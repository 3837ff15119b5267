#pragma once

#include <optional>
#include <string>

#include "gct/curve.hpp"
#include "gct/lift.hpp"
#include "gct/map.hpp"

namespace gct {

/// Connected plane region traced by its boundary loop, with an interior witness
/// point and a spine path from the witness to the boundary base point (the data
/// needed to continue inverse branches into the region).
struct Region {
    cplx witness{0.0};
    Curve spine;    // witness -> boundary(0)
    Curve boundary; // closed polyline, first == last sample
    bool over_approximate = false;

    /// Winding-number membership (Euclidean chart).
    bool contains(cplx z) const;

    /// Extremes of the chordal distance from c over boundary and spine samples.
    double max_chordal_from(cplx c) const;
    double min_boundary_chordal_from(cplx c) const;

    double diameter() const; // chordal, over the boundary samples

    /// Chordal ball B(center, r) realized as the Euclidean disk it actually is.
    /// Throws when the ball covers the point at infinity (not representable).
    static Region chordal_ball(cplx center, double r, int boundary_samples = 96);
};

struct PullbackOptions {
    LiftOptions lift;
    int max_loops = 0; // 0: use the map degree
};

struct PullbackResult {
    Region region;
    bool ok = false;
    int local_degree = 0; // boundary loops needed to close
    std::string failure;
};

/// The connected component of f^{-1}(src) containing `preimage_witness`
/// (which must satisfy f(witness') in src).  The spine is lifted first to find
/// the boundary base point's preimage, then the boundary loop is lifted until it
/// closes (up to deg f loops when the component covers with local degree > 1).
/// Failure (boundary through a critical value, no closure) is reported, never
/// thrown; callers treat failed traces conservatively.
PullbackResult pull_back_once(const MapSpec& f, const Region& src, cplx preimage_witness,
                              const PullbackOptions& opt = {});

} // namespace gct
