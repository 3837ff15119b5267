#include "gct/map.hpp"

#include <algorithm>
#include <cmath>

#include "gct/error.hpp"

namespace gct {

using poly::Poly;

MapSpec MapSpec::make(Poly num, Poly den, int min_degree) {
    num = poly::trimmed(num);
    den = poly::trimmed(den);
    if (num.empty()) throw ConfigError("map numerator is the zero polynomial");
    if (den.empty()) throw ConfigError("map denominator is the zero polynomial");

    int dp = int(num.size()) - 1, dq = int(den.size()) - 1;
    int d = std::max(dp, dq);
    if (d < min_degree)
        throw ConfigError("map degree " + std::to_string(d) + " below required minimum " +
                          std::to_string(min_degree));

    // Common-root check: evaluate the numerator at the denominator's roots.
    if (dq >= 1) {
        double ns = poly::coeff_scale(num);
        for (cplx r : poly::roots(den)) {
            double local = ns * std::pow(1.0 + std::abs(r), double(dp));
            if (std::abs(poly::eval(num, r)) < 1e-9 * local)
                throw ConfigError("numerator and denominator share a root near (" +
                                  std::to_string(r.real()) + ", " + std::to_string(r.imag()) +
                                  ")");
        }
    }

    MapSpec m;
    m.num = std::move(num);
    m.den = std::move(den);
    m.degree = d;
    return m;
}

SpherePoint evaluate(const MapSpec& f, SpherePoint z) {
    const int d = f.degree;
    if (z.at_infinity) {
        Poly pr = poly::pad_reverse(f.num, d);
        Poly qr = poly::pad_reverse(f.den, d);
        cplx a = pr[0], b = qr[0]; // values at u = 0
        if (std::abs(b) <= 1e-14 * (std::abs(a) + poly::coeff_scale(qr)))
            return SpherePoint::infinity();
        return SpherePoint(a / b);
    }
    cplx vp, vq;
    if (std::norm(z.value) <= 1.0) {
        vp = poly::eval(f.num, z.value);
        vq = poly::eval(f.den, z.value);
    } else {
        cplx u = 1.0 / z.value;
        vp = poly::eval(poly::pad_reverse(f.num, d), u);
        vq = poly::eval(poly::pad_reverse(f.den, d), u);
    }
    double sp = std::abs(vp), sq = std::abs(vq);
    if (sq <= 1e-290 * std::max(1.0, sp)) return SpherePoint::infinity();
    cplx v = vp / vq;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return SpherePoint::infinity();
    return SpherePoint(v);
}

cplx derivative(const MapSpec& f, cplx z) {
    auto [p, dp] = poly::eval_with_derivative(f.num, z);
    auto [q, dq] = poly::eval_with_derivative(f.den, z);
    return (dp * q - p * dq) / (q * q);
}

namespace {

// f(1/w) as a rational map in w.
MapSpec pre_invert(const MapSpec& f) {
    MapSpec g;
    g.num = poly::pad_reverse(f.num, f.degree);
    g.den = poly::pad_reverse(f.den, f.degree);
    g.degree = f.degree;
    return g;
}

// 1/f(w).
MapSpec post_invert(const MapSpec& f) {
    MapSpec g;
    g.num = f.den;
    g.den = f.num;
    g.degree = f.degree;
    return g;
}

} // namespace

double sphere_derivative_norm(const MapSpec& f, SpherePoint z) {
    // Move both source and target into the unit-disk chart before differentiating.
    MapSpec g = f;
    cplx zeta;
    if (z.at_infinity) {
        g = pre_invert(g);
        zeta = 0.0;
    } else if (std::norm(z.value) > 1.0) {
        g = pre_invert(g);
        zeta = 1.0 / z.value;
    } else {
        zeta = z.value;
    }
    SpherePoint img = evaluate(g, SpherePoint(zeta));
    if (img.at_infinity || std::norm(img.value) > 1.0) g = post_invert(g);
    cplx gp = derivative(g, zeta);
    SpherePoint w = evaluate(g, SpherePoint(zeta));
    double nw = w.at_infinity ? 1e300 : std::norm(w.value);
    return std::abs(gp) * (1.0 + std::norm(zeta)) / (1.0 + nw);
}

SpherePoint iterate(const MapSpec& f, SpherePoint z, int n) {
    for (int i = 0; i < n; ++i) z = evaluate(f, z);
    return z;
}

namespace {

// (P/Q) o (R/S) with common homogenization degree.
std::pair<Poly, Poly> compose_rational(const Poly& P, const Poly& Q, const Poly& R,
                                       const Poly& S) {
    int d = std::max(int(P.size()), int(Q.size())) - 1;
    std::vector<Poly> rp(size_t(d) + 1), sp(size_t(d) + 1);
    rp[0] = Poly{cplx(1.0)};
    sp[0] = Poly{cplx(1.0)};
    for (int k = 1; k <= d; ++k) {
        rp[size_t(k)] = poly::mul(rp[size_t(k - 1)], R);
        sp[size_t(k)] = poly::mul(sp[size_t(k - 1)], S);
    }
    Poly num, den;
    for (int k = 0; k <= d; ++k) {
        Poly term = poly::mul(rp[size_t(k)], sp[size_t(d - k)]);
        if (k < int(P.size()) && std::abs(P[size_t(k)]) > 0.0)
            num = poly::add(num, poly::scale(term, P[size_t(k)]));
        if (k < int(Q.size()) && std::abs(Q[size_t(k)]) > 0.0)
            den = poly::add(den, poly::scale(term, Q[size_t(k)]));
    }
    // Normalize magnitudes so repeated composition stays in range.
    double s = std::max(poly::coeff_scale(num), poly::coeff_scale(den));
    if (s > 0.0) {
        num = poly::scale(num, cplx(1.0 / s));
        den = poly::scale(den, cplx(1.0 / s));
    }
    return {poly::trimmed(num), poly::trimmed(den)};
}

} // namespace

MapSpec iterate_map(const MapSpec& f, int n, int max_degree) {
    if (n < 1) throw ConfigError("iterate_map needs n >= 1");
    double deg = 1.0;
    for (int i = 0; i < n; ++i) {
        deg *= f.degree;
        if (deg > double(max_degree))
            throw Error("degree overflow: deg f^" + std::to_string(n) + " = " +
                        std::to_string(std::pow(double(f.degree), double(n))) + " exceeds " +
                        std::to_string(max_degree));
    }
    MapSpec g = f;
    for (int i = 1; i < n; ++i) {
        auto [num, den] = compose_rational(f.num, f.den, g.num, g.den);
        g.num = std::move(num);
        g.den = std::move(den);
        g.degree = poly::degree(g.num) > poly::degree(g.den) ? poly::degree(g.num)
                                                             : poly::degree(g.den);
    }
    g.degree = std::max(g.num_degree(), g.den_degree());
    return g;
}

namespace {

// Local degree of f at infinity (1 = regular).
int local_degree_at_infinity(const MapSpec& f) {
    Poly P = poly::trimmed(f.num), Q = poly::trimmed(f.den);
    int p = int(P.size()) - 1, q = int(Q.size()) - 1;
    if (p != q) return std::abs(p - q);
    // f(inf) finite nonzero: order of vanishing of P*(u) Q*(0) - P*(0) Q*(u).
    Poly Pr = poly::pad_reverse(P, p), Qr = poly::pad_reverse(Q, q);
    Poly R = poly::sub(poly::scale(Pr, Qr[0]), poly::scale(Qr, Pr[0]));
    double s = poly::coeff_scale(R);
    if (s == 0.0) return 1; // constant map; degenerate
    int ord = 0;
    while (ord < int(R.size()) && std::abs(R[size_t(ord)]) <= 1e-12 * s) ++ord;
    return std::max(1, ord);
}

} // namespace

std::vector<CriticalPoint> critical_points(const MapSpec& f) {
    std::vector<CriticalPoint> out;
    // Finite critical points: roots of P'Q - PQ'.
    Poly w = poly::sub(poly::mul(poly::derivative(f.num), f.den),
                       poly::mul(f.num, poly::derivative(f.den)));
    w = poly::trimmed(w);
    if (!w.empty() && int(w.size()) - 1 >= 1) {
        auto rts = poly::roots(w);
        for (const auto& c : poly::cluster_roots(w, rts))
            out.push_back({SpherePoint(c.location), c.multiplicity});
    }
    int ld = local_degree_at_infinity(f);
    if (ld >= 2) out.push_back({SpherePoint::infinity(), ld - 1});
    return out;
}

std::vector<SpherePoint> critical_values(const MapSpec& f) {
    std::vector<SpherePoint> vals;
    for (const auto& c : critical_points(f)) {
        SpherePoint v = evaluate(f, c.location);
        bool dup = false;
        for (const auto& u : vals)
            if (chordal(u, v) < 1e-12) dup = true;
        if (!dup) vals.push_back(v);
    }
    return vals;
}

namespace {

void polish_fixed(const Poly& fixed_poly, cplx& z) {
    for (int it = 0; it < 50; ++it) {
        auto [v, dv] = poly::eval_with_derivative(fixed_poly, z);
        if (std::abs(dv) < 1e-300) return;
        cplx step = v / dv;
        z -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) return;
    }
}

Stability classify(double mod, double tol) {
    if (std::abs(mod - 1.0) <= tol) return Stability::ParabolicSuspect;
    return mod < 1.0 ? Stability::Attracting : Stability::Repelling;
}

} // namespace

std::vector<PeriodicPoint> periodic_points(const MapSpec& f, int period, int max_degree,
                                           double class_tol) {
    if (period < 1) throw ConfigError("period must be >= 1");
    MapSpec fn = iterate_map(f, period, max_degree);

    // Fixed points of f^n: roots of Pn - z Qn.
    Poly shifted = f.den; // placeholder, replaced below
    {
        Poly zq(fn.den.size() + 1, cplx(0.0));
        for (size_t k = 0; k < fn.den.size(); ++k) zq[k + 1] = fn.den[k];
        shifted = poly::sub(fn.num, zq);
    }
    shifted = poly::trimmed(shifted);

    std::vector<PeriodicPoint> out;
    auto consider = [&](SpherePoint loc) {
        // Minimal period: smallest divisor k of `period` with f^k(loc) = loc.
        int minimal = period;
        for (int k = 1; k < period; ++k) {
            if (period % k != 0) continue;
            if (chordal(iterate(f, loc, k), loc) < 1e-7) {
                minimal = k;
                break;
            }
        }
        if (minimal != period) return; // deduplicated against lower periods

        PeriodicPoint pp;
        pp.location = loc;
        pp.period = period;
        if (loc.at_infinity) {
            // Conjugate by 1/z; the cycle through infinity for our maps is a fixed point.
            MapSpec g = post_invert(pre_invert(f));
            pp.multiplier = derivative(iterate_map(g, period, max_degree), cplx(0.0));
        } else {
            cplx mult = 1.0;
            SpherePoint p = loc;
            bool finite_cycle = true;
            for (int k = 0; k < period; ++k) {
                if (p.at_infinity) {
                    finite_cycle = false;
                    break;
                }
                mult *= derivative(f, p.value);
                p = evaluate(f, p);
            }
            if (finite_cycle) {
                pp.multiplier = mult;
            } else {
                double mod = 1.0;
                p = loc;
                for (int k = 0; k < period; ++k) {
                    mod *= sphere_derivative_norm(f, p);
                    p = evaluate(f, p);
                }
                pp.multiplier = cplx(mod, 0.0); // modulus only when the cycle passes through inf
            }
        }
        pp.cls = classify(std::abs(pp.multiplier), class_tol);
        out.push_back(pp);
    };

    if (!shifted.empty() && int(shifted.size()) - 1 >= 1) {
        auto rts = poly::roots(shifted);
        for (auto& c : poly::cluster_roots(shifted, rts, 1e-8)) {
            cplx z = c.location;
            polish_fixed(shifted, z);
            consider(SpherePoint(z));
        }
    }
    // Infinity is fixed exactly when deg P > deg Q.
    if (f.num_degree() > f.den_degree()) consider(SpherePoint::infinity());
    return out;
}

std::vector<Preimage> preimages(const MapSpec& f, SpherePoint w) {
    std::vector<Preimage> out;
    const int d = f.degree;
    Poly target;
    if (w.at_infinity) {
        target = f.den;
    } else {
        target = poly::sub(f.num, poly::scale(f.den, w.value));
    }
    target = poly::trimmed(target);
    int dt = target.empty() ? -1 : int(target.size()) - 1;

    if (dt >= 1) {
        auto rts = poly::roots(target);
        for (auto& c : poly::cluster_roots(target, rts)) {
            cplx z = c.location;
            polish_fixed(target, z);
            double res = chordal(evaluate(f, SpherePoint(z)), w);
            out.push_back({SpherePoint(z), c.multiplicity, res});
        }
    }
    // Preimages at infinity account for the missing degree.
    int found = 0;
    for (const auto& p : out) found += p.multiplicity;
    if (found < d) out.push_back({SpherePoint::infinity(), d - found,
                                  chordal(evaluate(f, SpherePoint::infinity()), w)});
    return out;
}

std::vector<cplx> finite_preimages(const MapSpec& f, cplx w) {
    std::vector<cplx> out;
    for (const auto& p : preimages(f, SpherePoint(w)))
        if (p.point.finite())
            for (int k = 0; k < p.multiplicity; ++k) out.push_back(p.point.value);
    return out;
}

} // namespace gct
