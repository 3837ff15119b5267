#pragma once

#include <string>
#include <vector>

#include "gct/curve.hpp"
#include "gct/map.hpp"

namespace gct {

/// Simply-connected plane domain: a disk or a polygon with smooth-enough boundary.
struct DomainSpec {
    enum Kind { Disk, Polygon } kind = Disk;
    cplx center{0.0};
    double radius = 1.0;
    std::vector<cplx> vertices; // polygon, counterclockwise

    bool contains(cplx z) const;
    double boundary_distance(cplx z) const; // unsigned Euclidean distance to the boundary
    Curve boundary(int samples) const;      // closed, counterclockwise
    cplx boundary_point(double t) const;    // t in [0,1)

    static DomainSpec disk(cplx c, double r) { return DomainSpec{Disk, c, r, {}}; }
    static DomainSpec polygon(std::vector<cplx> vs);
};

/// Proper degree-d map from W1 onto W with cl W1 inside W; its filled set is the
/// set of points whose whole forward orbit stays in W.
struct PolyLikeSpec {
    MapSpec map;
    DomainSpec W, W1;
    int degree = 0;
    double containment_margin = 0.0;

    /// Validates containment with positive margin and properness by counting
    /// preimages of sampled targets inside W1.
    static PolyLikeSpec make(MapSpec map, DomainSpec W, DomainSpec W1, int probe_targets = 12);
};

/// Escape-time membership in the filled set K.
bool in_filled_k(const PolyLikeSpec& spec, cplx z, int cap = 200);

/// Smallest n with f^n(z) outside W (cap when the orbit never leaves).
int escape_steps(const PolyLikeSpec& spec, cplx z, int cap = 200);

} // namespace gct
