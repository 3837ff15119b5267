#pragma once

#include <cmath>
#include <complex>

namespace gct {

using cplx = std::complex<double>;

/// A point on the Riemann sphere: a finite complex value or the point at infinity.
struct SpherePoint {
    cplx value{0.0, 0.0};
    bool at_infinity = false;

    SpherePoint() = default;
    SpherePoint(cplx v) : value(v) {}
    SpherePoint(double re, double im) : value(re, im) {}

    static SpherePoint infinity() {
        SpherePoint p;
        p.at_infinity = true;
        return p;
    }
    bool finite() const { return !at_infinity; }
};

/// Chordal metric on the sphere, d(z,w) = 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)),
/// with d(z,inf) = 2 / sqrt(1+|z|^2).  Invariant under z -> 1/z; large finite
/// values are inverted before evaluating so the formula never overflows.
inline double chordal(cplx a, cplx b) {
    double na = std::norm(a), nb = std::norm(b);
    bool ia = !std::isfinite(na) || na > 1e290;
    bool ib = !std::isfinite(nb) || nb > 1e290;
    if (ia && ib) return 0.0;
    if (ia) return 2.0 / std::sqrt(1.0 + nb);
    if (ib) return 2.0 / std::sqrt(1.0 + na);
    if (na > 1.0 && nb > 1.0) {
        a = 1.0 / a;
        b = 1.0 / b;
        na = std::norm(a);
        nb = std::norm(b);
    }
    return 2.0 * std::abs(a - b) / (std::sqrt(1.0 + na) * std::sqrt(1.0 + nb));
}

inline double chordal(const SpherePoint& a, const SpherePoint& b) {
    if (a.at_infinity && b.at_infinity) return 0.0;
    if (a.at_infinity) return 2.0 / std::sqrt(1.0 + std::norm(b.value));
    if (b.at_infinity) return 2.0 / std::sqrt(1.0 + std::norm(a.value));
    return chordal(a.value, b.value);
}

inline double chordal(const SpherePoint& a, cplx b) { return chordal(a, SpherePoint(b)); }
inline double chordal(cplx a, const SpherePoint& b) { return chordal(SpherePoint(a), b); }

} // namespace gct
