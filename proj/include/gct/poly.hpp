#pragma once

#include <utility>
#include <vector>

#include "gct/sphere.hpp"

namespace gct::poly {

/// Dense polynomial, coefficients in ascending order: p[k] is the coefficient of z^k.
using Poly = std::vector<cplx>;

/// Largest magnitude among coefficients (0 for an empty vector).
double coeff_scale(const Poly& p);

/// Exact degree after trimming numerically-zero leading coefficients.
/// Returns -1 for the zero polynomial.
int degree(const Poly& p, double rel_tol = 1e-14);

/// Copy with numerically-zero leading coefficients removed.
Poly trimmed(const Poly& p, double rel_tol = 1e-14);

cplx eval(const Poly& p, cplx z);
std::pair<cplx, cplx> eval_with_derivative(const Poly& p, cplx z);

Poly derivative(const Poly& p);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, cplx s);

/// Coefficients of p(q + u) as a polynomial in u (Taylor shift).
Poly taylor_shift(const Poly& p, cplx q);

/// Coefficient vector reversed after padding to length d+1 (for the z -> 1/z chart).
Poly pad_reverse(const Poly& p, int d);

/// All complex roots, with multiplicity, by Aberth-Ehrlich simultaneous iteration
/// followed by Newton polishing.  Roots at the origin are factored out first.
/// Throws gct::Error when the iteration fails to converge.
std::vector<cplx> roots(const Poly& p);

struct RootCluster {
    cplx location;
    int multiplicity;
    double residual; // |p(location)|
};

/// Groups nearby roots into clusters (multiple-root detection).
std::vector<RootCluster> cluster_roots(const Poly& p, const std::vector<cplx>& rts,
                                       double tol = 1e-6);

} // namespace gct::poly
