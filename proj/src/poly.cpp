#include "gct/poly.hpp"

#include <algorithm>
#include <cmath>

#include "gct/error.hpp"

namespace gct::poly {

double coeff_scale(const Poly& p) {
    double s = 0.0;
    for (const cplx& c : p) s = std::max(s, std::abs(c));
    return s;
}

int degree(const Poly& p, double rel_tol) {
    double s = coeff_scale(p);
    if (s == 0.0) return -1;
    for (int k = int(p.size()) - 1; k >= 0; --k)
        if (std::abs(p[size_t(k)]) > rel_tol * s) return k;
    return -1;
}

Poly trimmed(const Poly& p, double rel_tol) {
    int d = degree(p, rel_tol);
    if (d < 0) return Poly{};
    return Poly(p.begin(), p.begin() + d + 1);
}

cplx eval(const Poly& p, cplx z) {
    cplx v = 0.0;
    for (size_t k = p.size(); k-- > 0;) v = v * z + p[k];
    return v;
}

std::pair<cplx, cplx> eval_with_derivative(const Poly& p, cplx z) {
    cplx v = 0.0, dv = 0.0;
    for (size_t k = p.size(); k-- > 0;) {
        dv = dv * z + v;
        v = v * z + p[k];
    }
    return {v, dv};
}

Poly derivative(const Poly& p) {
    if (p.size() <= 1) return Poly{};
    Poly d(p.size() - 1);
    for (size_t k = 1; k < p.size(); ++k) d[k - 1] = double(k) * p[k];
    return d;
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), cplx(0.0));
    for (size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (size_t k = 0; k < b.size(); ++k) r[k] += b[k];
    return r;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), cplx(0.0));
    for (size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (size_t k = 0; k < b.size(); ++k) r[k] -= b[k];
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return Poly{};
    Poly r(a.size() + b.size() - 1, cplx(0.0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly scale(const Poly& a, cplx s) {
    Poly r = a;
    for (cplx& c : r) c *= s;
    return r;
}

Poly taylor_shift(const Poly& p, cplx q) {
    // Repeated synthetic division by (u - 0) after substituting z = q + u.
    Poly r = p;
    size_t n = r.size();
    for (size_t i = 0; i + 1 < n; ++i)
        for (size_t k = n - 1; k > i; --k) r[k - 1] += q * r[k];
    return r;
}

Poly pad_reverse(const Poly& p, int d) {
    Poly r(size_t(d) + 1, cplx(0.0));
    for (size_t k = 0; k < p.size() && k <= size_t(d); ++k) r[size_t(d) - k] = p[k];
    return r;
}

namespace {

// One Aberth-Ehrlich sweep; returns the largest correction applied.
double aberth_sweep(const Poly& p, std::vector<cplx>& z) {
    const size_t n = z.size();
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i) {
        auto [v, dv] = eval_with_derivative(p, z[i]);
        if (std::abs(v) == 0.0) continue;
        cplx newton = (dv != cplx(0.0)) ? v / dv
                                        : cplx(std::abs(z[i]) + 1.0, 0.3); // nudge off a flat spot
        cplx s = 0.0;
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            cplx d = z[i] - z[j];
            if (std::abs(d) < 1e-300) d = cplx(1e-300, 1e-300);
            s += 1.0 / d;
        }
        cplx denom = 1.0 - newton * s;
        cplx w = (std::abs(denom) > 1e-300) ? newton / denom : newton;
        z[i] -= w;
        worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[i])));
    }
    return worst;
}

void newton_polish(const Poly& p, cplx& z) {
    for (int it = 0; it < 60; ++it) {
        auto [v, dv] = eval_with_derivative(p, z);
        if (std::abs(v) == 0.0) return;
        if (std::abs(dv) < 1e-300) return;
        cplx step = v / dv;
        z -= step;
        if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) return;
    }
}

std::vector<cplx> solve_quadratic(cplx a, cplx b, cplx c) {
    // Stable form: pick the sign that avoids cancellation.
    cplx disc = std::sqrt(b * b - 4.0 * a * c);
    cplx q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
    std::vector<cplx> r;
    if (std::abs(q) > 0.0) {
        r.push_back(q / a);
        r.push_back(c / q);
    } else {
        r.push_back(cplx(0.0));
        r.push_back(cplx(0.0));
    }
    return r;
}

} // namespace

std::vector<cplx> roots(const Poly& input) {
    Poly p = trimmed(input);
    if (p.size() <= 1) return {};

    // Factor out roots at the origin.
    size_t zero_count = 0;
    double s = coeff_scale(p);
    while (zero_count + 1 < p.size() && std::abs(p[zero_count]) <= 1e-300 * s) ++zero_count;
    std::vector<cplx> result(zero_count, cplx(0.0));
    if (zero_count > 0) p.erase(p.begin(), p.begin() + long(zero_count));

    const int n = int(p.size()) - 1;
    if (n == 0) return result;
    if (n == 1) {
        result.push_back(-p[0] / p[1]);
        return result;
    }
    if (n == 2) {
        auto r = solve_quadratic(p[2], p[1], p[0]);
        for (cplx z : r) {
            newton_polish(p, z);
            result.push_back(z);
        }
        return result;
    }

    // Cauchy bound for the initial circle.
    double lead = std::abs(p.back());
    double bound = 0.0;
    for (size_t k = 0; k + 1 < p.size(); ++k) bound = std::max(bound, std::abs(p[k]) / lead);
    double r0 = 0.5 * (1.0 + bound);

    std::vector<cplx> z(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double th = 2.0 * M_PI * (double(i) + 0.35) / double(n) + 0.42;
        z[size_t(i)] = r0 * cplx(std::cos(th), std::sin(th));
    }

    bool converged = false;
    for (int it = 0; it < 400; ++it) {
        double worst = aberth_sweep(p, z);
        if (worst < 1e-14) {
            converged = true;
            break;
        }
    }
    for (cplx& zi : z) newton_polish(p, zi);
    if (!converged) {
        // Accept if every residual is small relative to the local scale anyway.
        for (const cplx& zi : z) {
            double local = coeff_scale(p) * std::pow(1.0 + std::abs(zi), double(n));
            if (std::abs(eval(p, zi)) > 1e-8 * local)
                throw Error("polynomial root iteration did not converge (degree " +
                            std::to_string(n) + ", residual " +
                            std::to_string(std::abs(eval(p, zi))) + ")");
        }
    }
    result.insert(result.end(), z.begin(), z.end());
    return result;
}

std::vector<RootCluster> cluster_roots(const Poly& p, const std::vector<cplx>& rts, double tol) {
    std::vector<RootCluster> out;
    std::vector<bool> used(rts.size(), false);
    for (size_t i = 0; i < rts.size(); ++i) {
        if (used[i]) continue;
        cplx sum = rts[i];
        int count = 1;
        used[i] = true;
        double local_tol = tol * (1.0 + std::abs(rts[i]));
        for (size_t j = i + 1; j < rts.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(rts[j] - rts[i]) < local_tol) {
                sum += rts[j];
                ++count;
                used[j] = true;
            }
        }
        cplx loc = sum / double(count);
        out.push_back({loc, count, std::abs(eval(p, loc))});
    }
    return out;
}

} // namespace gct::poly
