#include "gct/koenigs.hpp"

#include <algorithm>
#include <cmath>

#include "gct/error.hpp"

namespace gct {

double KoenigsChart::log_abs_lambda() const { return std::log(std::abs(lambda)); }

cplx KoenigsChart::h(cplx z) const { return series::eval(coeffs, z - q); }

cplx KoenigsChart::h_derivative(cplx z) const {
    cplx u = z - q, v = 0.0;
    for (size_t k = coeffs.size(); k-- > 1;) v = v * u + double(k) * coeffs[k];
    return v;
}

double KoenigsChart::relog(cplx z) const {
    double m = std::abs(h(z));
    if (m <= 0.0) throw PointOutsideChart("relog undefined at the fixed point");
    return std::log(m);
}

bool KoenigsChart::in_validity_disk(cplx z) const {
    return std::abs(z - q) <= validity_radius;
}

bool KoenigsChart::in_V(cplx z) const {
    if (!in_validity_disk(z)) return false;
    double m = std::abs(h(z));
    if (m <= 0.0) return false;
    return std::log(m) < level_a;
}

cplx KoenigsChart::apply_g(cplx z) const {
    SpherePoint p(z);
    for (int i = 0; i < period; ++i) p = evaluate(map, p);
    if (!p.finite()) throw Error("return map escaped to infinity inside the chart");
    return p.value;
}

cplx KoenigsChart::apply_inverse(cplx z) const {
    cplx w = q + (z - q) / lambda;
    for (int it = 0; it < 50; ++it) {
        // g(w) and g'(w) along the forward chain.
        cplx val = w, dval = 1.0;
        for (int i = 0; i < period; ++i) {
            dval *= derivative(map, val);
            SpherePoint p = evaluate(map, SpherePoint(val));
            if (!p.finite()) throw Error("inverse-branch iterate escaped to infinity");
            val = p.value;
        }
        cplx res = val - z;
        if (std::abs(res) < 1e-13 * (1.0 + std::abs(z))) {
            if (std::abs(w - q) > validity_radius * 1.5)
                throw Error("inverse branch left the chart's validity disk");
            return w;
        }
        if (std::abs(dval) < 1e-300) throw Error("inverse branch hit a critical point");
        w -= res / dval;
    }
    throw NoConvergence(0.0);
}

KoenigsChart KoenigsChart::with_level(double a) const {
    KoenigsChart c = *this;
    c.level_a = a;
    return c;
}

KoenigsChart koenigs_chart(const MapSpec& f, const PeriodicPoint& q, int order, ChartOptions opt) {
    if (!q.location.finite()) throw ConfigError("chart base point must be finite");
    if (q.cls != Stability::Repelling)
        throw ConfigError("linearizing chart requires a repelling point (|multiplier| > 1)");

    KoenigsChart chart;
    chart.map = f;
    chart.period = q.period;
    chart.q = q.location.value;

    chart.cycle.resize(size_t(q.period));
    chart.cycle[0] = chart.q;
    for (int i = 1; i < q.period; ++i) {
        SpherePoint p = evaluate(f, SpherePoint(chart.cycle[size_t(i) - 1]));
        if (!p.finite()) throw ConfigError("cycle passes through infinity; chart unsupported");
        chart.cycle[size_t(i)] = p.value;
    }

    series::Series phi = series::cycle_deviation(f, chart.cycle, order);
    chart.lambda = phi[1];
    if (std::abs(chart.lambda) <= 1.0 + 1e-12)
        throw ConfigError("multiplier is not expanding; chart unsupported");

    // Solve h(phi(u)) = lambda h(u) term by term.  With |lambda| > 1 the divisors
    // lambda - lambda^k never vanish for k >= 2, so the coefficients are unique.
    std::vector<series::Series> phi_pow(size_t(order) + 1);
    phi_pow[1] = series::truncate(phi, order);
    for (int k = 2; k <= order; ++k)
        phi_pow[size_t(k)] = series::mul(phi_pow[size_t(k) - 1], phi, order);

    std::vector<cplx> c(size_t(order) + 1, cplx(0.0));
    c[1] = 1.0;
    for (int k = 2; k <= order; ++k) {
        cplx s = 0.0;
        for (int j = 1; j < k; ++j) s += c[size_t(j)] * phi_pow[size_t(j)][size_t(k)];
        c[size_t(k)] = s / (chart.lambda - std::pow(chart.lambda, k));
    }
    chart.coeffs = c;

    // Validity radius: largest tested radius where the conjugacy residual and
    // univalence proxy hold on a sampled circle.
    auto residual_at = [&](double r) {
        double worst = 0.0;
        for (int i = 0; i < opt.radius_samples; ++i) {
            double th = 2.0 * M_PI * (i + 0.5) / opt.radius_samples;
            cplx z = chart.q + r * cplx(std::cos(th), std::sin(th));
            cplx gz;
            try {
                gz = chart.apply_g(z);
            } catch (const Error&) {
                return 1e300;
            }
            if (std::abs(gz - chart.q) > 1e6) return 1e300;
            cplx lhs = series::eval(c, gz - chart.q);
            cplx rhs = chart.lambda * series::eval(c, z - chart.q);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            if (std::abs(chart.h_derivative(z)) < 1e-10) return 1e300;
        }
        return worst;
    };

    double r = opt.initial_radius;
    double accepted = -1.0;
    for (int step = 0; step < 120; ++step) {
        double res = residual_at(r);
        if (res < opt.residual_tol) {
            accepted = r;
            chart.conjugacy_residual = res;
            break;
        }
        r *= 0.85;
        if (r < 1e-9) break;
    }
    if (accepted < 0.0) throw Error("series divergence: no radius met the conjugacy tolerance");

    // Push the radius back up as far as the tolerance allows.
    for (int step = 0; step < 30; ++step) {
        double trial = accepted * 1.1;
        if (trial > opt.initial_radius) break;
        double res = residual_at(trial);
        if (res >= opt.residual_tol) break;
        accepted = trial;
        chart.conjugacy_residual = res;
    }
    chart.validity_radius = accepted;

    double hmin = 1e300;
    for (int i = 0; i < opt.radius_samples; ++i) {
        double th = 2.0 * M_PI * (i + 0.5) / opt.radius_samples;
        cplx z = chart.q + accepted * cplx(std::cos(th), std::sin(th));
        hmin = std::min(hmin, std::abs(chart.h(z)));
    }
    chart.level_a = std::log(opt.level_margin * hmin);
    return chart;
}

double diam_relog(const KoenigsChart& chart, const std::vector<cplx>& points) {
    if (points.empty()) throw PointOutsideChart("empty point set");
    double lo = 1e300, hi = -1e300;
    for (cplx z : points) {
        if (!chart.in_V(z) || std::abs(z - chart.q) == 0.0)
            throw PointOutsideChart("point outside V (or at the fixed point)");
        double v = chart.relog(z);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

double diam_relog(const KoenigsChart& chart, const Curve& curve) {
    return diam_relog(chart, curve.pts);
}

int annulus_index(const KoenigsChart& chart, cplx z) {
    if (!chart.in_V(z)) throw PointOutsideChart();
    double L = chart.log_abs_lambda();
    double s = (chart.level_a - chart.relog(z)) / L;
    double rounded = std::round(s);
    int m;
    if (std::abs(s - rounded) < 1e-9 && rounded >= 1.0) {
        m = int(rounded) - 1; // boundary hit: resolve to the smaller index
    } else {
        m = int(std::floor(s));
    }
    if (m < 0) throw PointOutsideChart("point outside V");
    return m;
}

} // namespace gct
