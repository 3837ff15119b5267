#pragma once

#include <vector>

#include "gct/map.hpp"
#include "gct/sphere.hpp"

namespace gct::series {

/// Truncated power series: c[k] is the coefficient of u^k.  All operations
/// truncate to the requested order (inclusive).
using Series = std::vector<cplx>;

Series truncate(Series a, int order);
Series add(const Series& a, const Series& b, int order);
Series mul(const Series& a, const Series& b, int order);

/// a(b(u)); requires b[0] == 0 within tolerance.
Series compose(const Series& a, const Series& b, int order);

/// a(u)/b(u); requires b[0] != 0.
Series divide(const Series& a, const Series& b, int order);

cplx eval(const Series& a, cplx u);

/// Taylor series of f at q up to the given order: coefficients of f(q + u).
Series map_taylor(const MapSpec& f, cplx q, int order);

/// Deviation series of the return map along a cycle: coefficients of
/// f^m(q0 + u) - q0 where q0,...,q_{m-1} is the orbit of q0.  The constant term
/// is dropped (asserted small); index 1 carries the cycle multiplier.
Series cycle_deviation(const MapSpec& f, const std::vector<cplx>& orbit, int order);

} // namespace gct::series
