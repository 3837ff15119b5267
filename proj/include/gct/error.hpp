#pragma once

#include <stdexcept>
#include <string>

namespace gct {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A curve to be lifted passes too close to a critical value of the map.
struct CriticalValueProximity : Error {
    double t;
    double distance;
    CriticalValueProximity(double t_, double dist)
        : Error("critical value within clearance at t=" + std::to_string(t_) +
                " (chordal distance " + std::to_string(dist) + ")"),
          t(t_), distance(dist) {}
};

/// Newton continuation failed even after the parameter step hit its floor.
struct NoConvergence : Error {
    double t;
    explicit NoConvergence(double t_)
        : Error("inverse-branch continuation failed to converge at t=" + std::to_string(t_)),
          t(t_) {}
};

struct PointOutsideChart : Error {
    PointOutsideChart() : Error("point outside the linearizing chart domain") {}
    explicit PointOutsideChart(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace gct
