#pragma once

#include <vector>

#include "gct/polylike.hpp"
#include "gct/rng.hpp"

namespace gct {

/// Level function on W minus the filled set: a harmonic interpolation between 0 on
/// the outer boundary and 1 on the inner boundary of the fundamental annulus
/// cl W minus W1, extended inward by M(z) = M(f^n(z)) + n at the first exit of W1.
/// The base solve is a least-squares collocation over a harmonic basis centered
/// in W1 (constant, log|z-c|, positive and negative powers), so the extension is
/// piecewise harmonic and its gradient is available in closed form.
struct PotentialOptions {
    int basis_order = 14;  // powers up to this order on each side
    int collocation = 256; // samples per boundary component
    int escape_cap = 512;
};

class PotentialM {
  public:
    using Options = PotentialOptions;

    static PotentialM build(const PolyLikeSpec& spec, PotentialOptions opt = PotentialOptions());

    const PolyLikeSpec& spec() const { return spec_; }

    struct Eval {
        bool ok = false;
        double M = 0.0;
        cplx grad{0.0};   // (dM/dx, dM/dy) as a complex number
        int depth = 0;    // iterations to reach the fundamental annulus
        const char* why = ""; // set when not ok
    };

    /// Value and gradient; ok=false outside W or when the orbit never leaves W1
    /// (point of the filled set).
    Eval eval(cplx z) const;
    double value(cplx z) const; // throws when eval fails

    double boundary_residual() const { return boundary_residual_; }

    /// Max |M(f(z)) - (M(z) - 1)| over random points where both sides are defined.
    double functional_residual(Rng& rng, int n_points) const;

  private:
    double base_value(cplx z) const;
    cplx base_grad(cplx z) const;

    PolyLikeSpec spec_;
    Options opt_;
    cplx center_{0.0};
    double scale_in_ = 1.0, scale_out_ = 1.0;
    // Basis layout: [1, log|z-c|, Re w^k, Im w^k (w=(z-c)/s_out), Re v^k, Im v^k (v=s_in/(z-c))]
    std::vector<double> coeffs_;
    double boundary_residual_ = 0.0;
};

} // namespace gct
