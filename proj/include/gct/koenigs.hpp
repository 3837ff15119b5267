#pragma once

#include <vector>

#include "gct/curve.hpp"
#include "gct/map.hpp"
#include "gct/series.hpp"

namespace gct {

/// Linearizing chart at a repelling periodic point q: the normalized solution of
/// h(g(z)) = lambda h(z) for the return map g = f^period, truncated at `order`,
/// with h(q) = 0 and h'(q) = 1.  The chart carries the level set
/// V = { |h| < exp(level_a) } inside the validity disk, and the annuli
///   R_m = { a - (m+1) log|lambda| < log|h| < a - m log|lambda| }.
struct KoenigsChart {
    MapSpec map;
    int period = 1;
    cplx q{0.0};
    cplx lambda{0.0};          // multiplier of the return map at q
    std::vector<cplx> coeffs;  // h in powers of (z - q); coeffs[0]=0, coeffs[1]=1
    double validity_radius = 0.0;
    double level_a = 0.0;
    double conjugacy_residual = 0.0; // max |h(g z) - lambda h(z)| at the accepted radius
    std::vector<cplx> cycle;         // q, f(q), ..., f^{period-1}(q)

    double log_abs_lambda() const;

    cplx h(cplx z) const;
    cplx h_derivative(cplx z) const;
    /// Re log h(z) = log |h(z)|.
    double relog(cplx z) const;
    bool in_validity_disk(cplx z) const;
    /// z in V: inside the validity disk with log|h(z)| < level_a (and z != q).
    bool in_V(cplx z) const;

    cplx apply_g(cplx z) const; // f^period by repeated evaluation
    /// The inverse branch of the return map fixing q, evaluated by a first-order
    /// chart predictor plus Newton on f^period.  Throws when continuation fails.
    cplx apply_inverse(cplx z) const;

    /// Copy with the level lowered by k annuli.
    KoenigsChart with_level(double a) const;
};

struct ChartOptions {
    int order = 16;
    double residual_tol = 1e-9;  // conjugacy residual accepted during the radius search
    int radius_samples = 64;
    double initial_radius = 1.0;
    double level_margin = 0.9; // exp(level_a) = margin * min |h| on the validity circle
};

/// Builds the chart; the point must be repelling.  Throws Error("series divergence")
/// when no tested radius meets the residual tolerance.
KoenigsChart koenigs_chart(const MapSpec& f, const PeriodicPoint& q, int order = 16,
                           ChartOptions opt = {});

/// Diameter of the projection of log h(points) to the real axis.  All points must
/// lie in V away from q, else PointOutsideChart.
double diam_relog(const KoenigsChart& chart, const std::vector<cplx>& points);
double diam_relog(const KoenigsChart& chart, const Curve& curve);

/// The unique m >= 0 with z in R_m; boundary hits resolve downward (smaller m).
/// Throws PointOutsideChart when z is outside V or at q.
int annulus_index(const KoenigsChart& chart, cplx z);

} // namespace gct
