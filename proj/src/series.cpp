#include "gct/series.hpp"

#include <cmath>

#include "gct/error.hpp"

namespace gct::series {

Series truncate(Series a, int order) {
    a.resize(size_t(order) + 1, cplx(0.0));
    return a;
}

Series add(const Series& a, const Series& b, int order) {
    Series r = truncate(a, order);
    for (size_t k = 0; k < b.size() && k <= size_t(order); ++k) r[k] += b[k];
    return r;
}

Series mul(const Series& a, const Series& b, int order) {
    Series r(size_t(order) + 1, cplx(0.0));
    for (size_t i = 0; i < a.size() && i <= size_t(order); ++i) {
        if (std::abs(a[i]) == 0.0) continue;
        for (size_t j = 0; j < b.size() && i + j <= size_t(order); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

Series compose(const Series& a, const Series& b, int order) {
    if (!b.empty() && std::abs(b[0]) > 1e-9)
        throw Error("series composition needs a vanishing constant term");
    Series bz = truncate(b, order);
    bz[0] = 0.0;
    // Horner in b: r = a_n; r = r*b + a_{n-1}; ...
    Series r{cplx(0.0)};
    for (size_t k = a.size(); k-- > 0;) {
        r = mul(r, bz, order);
        if (r.empty()) r = Series{cplx(0.0)};
        r = truncate(r, order);
        r[0] += a[k];
    }
    return r;
}

Series divide(const Series& a, const Series& b, int order) {
    if (b.empty() || std::abs(b[0]) < 1e-300) throw Error("series division by vanishing constant");
    Series an = truncate(a, order), bn = truncate(b, order);
    Series q(size_t(order) + 1, cplx(0.0));
    for (int k = 0; k <= order; ++k) {
        cplx s = an[size_t(k)];
        for (int j = 0; j < k; ++j) s -= q[size_t(j)] * bn[size_t(k - j)];
        q[size_t(k)] = s / bn[0];
    }
    return q;
}

cplx eval(const Series& a, cplx u) {
    cplx v = 0.0;
    for (size_t k = a.size(); k-- > 0;) v = v * u + a[k];
    return v;
}

Series map_taylor(const MapSpec& f, cplx q, int order) {
    poly::Poly pn = poly::taylor_shift(f.num, q);
    poly::Poly pd = poly::taylor_shift(f.den, q);
    return divide(truncate(Series(pn.begin(), pn.end()), order),
                  truncate(Series(pd.begin(), pd.end()), order), order);
}

Series cycle_deviation(const MapSpec& f, const std::vector<cplx>& orbit, int order) {
    if (orbit.empty()) throw Error("empty orbit");
    // phi_i(u) = f(q_i + u) - q_{i+1 mod m}; compose phi_{m-1} o ... o phi_0.
    Series acc;
    for (size_t i = 0; i < orbit.size(); ++i) {
        Series phi = map_taylor(f, orbit[i], order);
        cplx next = orbit[(i + 1) % orbit.size()];
        if (std::abs(phi[0] - next) > 1e-7 * (1.0 + std::abs(next)))
            throw Error("orbit is not a cycle of the map (residual " +
                        std::to_string(std::abs(phi[0] - next)) + ")");
        phi[0] = 0.0; // exact deviation form
        acc = (i == 0) ? phi : compose(phi, acc, order);
    }
    return acc;
}

} // namespace gct::series
