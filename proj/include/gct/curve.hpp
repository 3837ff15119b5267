#pragma once

#include <string>
#include <vector>

#include "gct/sphere.hpp"

namespace gct {

/// Parametrized polyline: strictly increasing parameters from 0 to 1 with a
/// finite point per sample.  Self-intersections are allowed.
struct Curve {
    std::vector<double> ts;
    std::vector<cplx> pts;

    size_t size() const { return pts.size(); }
    bool empty() const { return pts.empty(); }
    cplx front() const { return pts.front(); }
    cplx back() const { return pts.back(); }

    /// Piecewise-linear evaluation; clamps outside [0,1].
    cplx eval(double t) const;

    /// Throws ConfigError when parameters are not strictly increasing on [0,1].
    void validate() const;

    Curve reversed() const;

    /// Inserts midpoints until consecutive chordal gaps are below max_gap.
    Curve refined(double max_gap) const;

    static Curve segment(cplx a, cplx b, int samples = 33);
    /// Closed circle (first point repeated at t=1).
    static Curve circle(cplx center, double radius, int samples = 96);
    /// Radius and argument both interpolated linearly; the argument sweep is
    /// the principal value of arg(b/a), so 4 -> -2 runs through the upper half plane.
    static Curve spiral_arc(cplx a, cplx b, int samples = 65);

    std::string to_json_string() const;               // [[t,re,im], ...]
    static Curve from_json_string(const std::string&);
};

/// Max pairwise chordal distance over the samples.
double curve_diameter(const Curve& c);
double point_diameter(const std::vector<cplx>& pts);

} // namespace gct
