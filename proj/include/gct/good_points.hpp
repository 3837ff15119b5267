#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gct/map.hpp"
#include "gct/region.hpp"

namespace gct {

struct GoodPointParams {
    double r = 0.5;     // pullback ball radius (chordal)
    double delta = 0.1; // boundary clearance, 0 < delta < r
    double kappa = 0.5; // required density of good times, 0 < kappa <= 1
    int Delta = 1;      // inclusion checked for l <= n - Delta
    int n0 = 8;         // significance horizon

    void validate() const;
};

enum class TimeVerdict { Good, Bad, Undetermined, Skipped };

struct GoodTimeEntry {
    int n = 0;
    TimeVerdict verdict = TimeVerdict::Undetermined;
    double min_margin = 0.0;  // worst (r - delta) - reach over checked levels
    double trace_diameter = 0.0;
    bool basin_ok = true;
    std::string note;
};

struct GoodTimesReport {
    std::vector<GoodTimeEntry> entries;
    std::vector<int> good_times;
    int horizon = 0;
    double density = 0.0; // #good / horizon
    bool density_ok = false;
    bool diam_trend_ok = false;    // top-decile trace diameters < 10% of bottom decile
    bool diam_trend_checked = false;
    std::optional<bool> basin_checked; // present when a basin oracle was supplied
    GoodPointParams params;

    bool good() const {
        return density_ok && (!diam_trend_checked || diam_trend_ok) &&
               (!basin_checked || *basin_checked);
    }
};

using BasinOracle = std::function<bool(cplx)>;

/// Candidate time n is good when every pullback component of the ball
/// B(orbit(n), r) along the orbit stays inside B(orbit(l), r - delta) for
/// l <= n - Delta.  Pullback components are traced by boundary-circle lifting;
/// a failed trace marks the time undetermined, never good.  The report carries
/// the density against kappa, the trace-diameter trend, and (when a basin oracle
/// is supplied) the sampled basin-inclusion check of the time-0 components.
GoodTimesReport good_times(const MapSpec& f, cplx q, const GoodPointParams& params, int horizon,
                           const BasinOracle* basin = nullptr, int boundary_samples = 96);

/// Escape-time membership oracle for the basin of infinity, escape radius
/// 2 max(1, |coefficients|), iteration cap 10^4.
BasinOracle basin_of_infinity_oracle(const MapSpec& f, int cap = 10000);

} // namespace gct
