#pragma once

#include <string>
#include <vector>

#include "gct/poly.hpp"
#include "gct/sphere.hpp"

namespace gct {

/// A rational map f = P/Q on the Riemann sphere, stored as two complex
/// polynomials with no common root.
struct MapSpec {
    poly::Poly num;
    poly::Poly den;
    int degree = 0; // max(deg P, deg Q)

    /// Validates (nonzero polynomials, no common root within tolerance) and trims.
    static MapSpec make(poly::Poly num, poly::Poly den, int min_degree = 1);

    int num_degree() const { return poly::degree(num); }
    int den_degree() const { return poly::degree(den); }
    bool polynomial() const { return den_degree() == 0; }
};

/// f(z) with chart switching so nothing overflows; f(inf) handled algebraically.
SpherePoint evaluate(const MapSpec& f, SpherePoint z);

/// f'(z) in the finite chart.
cplx derivative(const MapSpec& f, cplx z);

/// Norm of the derivative in the spherical metric, |f'(z)| (1+|z|^2) / (1+|f(z)|^2),
/// evaluated in charts so it is finite and correct at and near infinity.
double sphere_derivative_norm(const MapSpec& f, SpherePoint z);

/// f^n(z) by repeated evaluation.
SpherePoint iterate(const MapSpec& f, SpherePoint z, int n);

/// f^n as a rational map; throws when the degree would exceed max_degree.
MapSpec iterate_map(const MapSpec& f, int n, int max_degree = 4096);

struct CriticalPoint {
    SpherePoint location;
    int multiplicity; // local degree minus one
};

/// All critical points with multiplicity collapsed; includes infinity when the
/// local degree there exceeds one.  Total multiplicity equals 2 deg f - 2.
std::vector<CriticalPoint> critical_points(const MapSpec& f);

/// Images of the critical points (finite representation; may contain infinity).
std::vector<SpherePoint> critical_values(const MapSpec& f);

enum class Stability { Attracting, Repelling, ParabolicSuspect };

struct PeriodicPoint {
    SpherePoint location;
    int period = 1;       // minimal period
    cplx multiplier{0.0}; // (f^period)' over the cycle
    Stability cls = Stability::Attracting;
};

/// All cycles of exact period `period`: solutions of f^n(z) = z with lower
/// periods removed, each polished and classified by its multiplier.
/// |mult| within class_tol of 1 is reported as parabolic-suspect.
std::vector<PeriodicPoint> periodic_points(const MapSpec& f, int period,
                                           int max_degree = 4096, double class_tol = 1e-9);

struct Preimage {
    SpherePoint point;
    int multiplicity;
    double residual; // chordal distance of f(point) from the target
};

/// The deg-f preimages of w counted with multiplicity, Newton-polished.
/// Multiplicity above one marks w as a critical value.
std::vector<Preimage> preimages(const MapSpec& f, SpherePoint w);

/// Unweighted list (each preimage repeated per multiplicity) of finite preimages;
/// convenience for branch selection.
std::vector<cplx> finite_preimages(const MapSpec& f, cplx w);

} // namespace gct
