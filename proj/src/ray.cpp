#include "gct/ray.hpp"

#include <algorithm>
#include <cmath>

namespace gct {

namespace {

double wrap_pi(double a) {
    while (a > M_PI) a -= 2.0 * M_PI;
    while (a < -M_PI) a += 2.0 * M_PI;
    return a;
}

} // namespace

double select_separatrix(cplx c2, double theta_in, int& side, double tie_tol) {
    // Ascending directions of Re(c2 (z-s)^2): 2 theta + arg c2 = 0 (mod 2 pi).
    double base = -std::arg(c2) / 2.0;
    double cand[2] = {base, base + M_PI};
    double d0 = wrap_pi(cand[0] - theta_in);
    double d1 = wrap_pi(cand[1] - theta_in);
    double a0 = std::abs(d0), a1 = std::abs(d1);
    if (std::abs(a0 - a1) < tie_tol) {
        if (side == 0)
            throw StuckAtSaddle(c2, "both ascending separatrices are equally close");
        // Forced side: pick the candidate reached by turning in the remembered sense.
        return (side > 0) ? (d0 > 0 ? cand[0] : cand[1]) : (d0 < 0 ? cand[0] : cand[1]);
    }
    double chosen = a0 < a1 ? cand[0] : cand[1];
    double turn = a0 < a1 ? d0 : d1;
    if (side == 0) side = (turn >= 0) ? 1 : -1;
    return chosen;
}

namespace {

// Quadratic coefficient of the potential at a near-critical point, from a small
// circle of samples (the potential is locally Re of a holomorphic function).
cplx estimate_c2(const PotentialM& pot, cplx s, double rho) {
    cplx acc = 0.0;
    const int n = 16;
    for (int i = 0; i < n; ++i) {
        double th = 2.0 * M_PI * i / n;
        cplx e(std::cos(th), std::sin(th));
        auto ev = pot.eval(s + rho * e);
        if (!ev.ok) return cplx(0.0);
        // Fourier pickup of the (z-s)^2 coefficient of the real part.
        acc += ev.M * std::conj(e * e);
    }
    return 2.0 * acc / (double(n) * rho * rho);
}

} // namespace

TauRay trace_ray(const PotentialM& pot, double tau, cplx start, double max_level, RayOptions opt) {
    if (!(tau > 0.0 && tau < M_PI)) throw ConfigError("tau must lie in (0, pi)");
    TauRay ray;
    ray.tau = tau;
    ray.start = start;

    // Step just inside from the boundary point.
    auto ev0 = pot.eval(start);
    if (!ev0.ok || ev0.M > 0.05) {
        // Accept points marginally outside the outer boundary by nudging inward.
        cplx inward = pot.spec().W.center - start;
        start += 1e-6 * inward / std::abs(inward);
        ev0 = pot.eval(start);
        if (!ev0.ok) throw ConfigError("ray start is not on the outer boundary");
    }

    cplx z = start;
    double M = ev0.M;
    ray.levels.push_back(M);
    ray.pts.push_back(z);

    int side = 0; // saddle turning side, persisted across hits
    double grad_scale = std::abs(ev0.grad);
    const double st = std::sin(tau), ct = std::cos(tau);

    auto direction = [&](cplx grad) {
        cplx ghat = grad / std::abs(grad);
        return st * ghat + ct * (cplx(0.0, 1.0) * ghat);
    };

    for (int step = 0; step < opt.max_steps; ++step) {
        if (M >= max_level) break;
        auto ev = pot.eval(z);
        if (!ev.ok) {
            ray.stalled = true;
            ray.stall_reason = ev.why;
            break;
        }
        double g = std::abs(ev.grad);
        grad_scale = std::max(0.95 * grad_scale, g);
        if (g < opt.grad_floor * grad_scale) {
            // Saddle: reorient along the chosen ascending separatrix.
            double local = std::max(1e-12, 1e-2 * std::abs(z - pot.spec().W1.center));
            cplx c2 = estimate_c2(pot, z, local);
            if (std::abs(c2) == 0.0) throw LevelStall("gradient collapsed away from a saddle");
            cplx prev = ray.pts.size() >= 2 ? ray.pts[ray.pts.size() - 2] : z - cplx(1.0, 0.0);
            double theta_in = std::arg(z - prev);
            double theta_out = select_separatrix(c2, theta_in, side);
            ray.saddles_hit.push_back(z);
            z += opt.saddle_hop * std::max(1.0, std::abs(z)) * cplx(std::cos(theta_out),
                                                                    std::sin(theta_out));
            continue;
        }

        // RK4 on dz/ds = u(z), with the step chosen from the level budget.
        double ds = std::min(opt.max_arc, opt.dM / (st * g));
        cplx k1 = direction(ev.grad);
        auto at = [&](cplx p) -> cplx {
            auto e = pot.eval(p);
            if (!e.ok || std::abs(e.grad) == 0.0) return cplx(0.0);
            return direction(e.grad);
        };
        cplx k2 = at(z + 0.5 * ds * k1);
        cplx k3 = at(z + 0.5 * ds * k2);
        cplx k4 = at(z + ds * k3);
        cplx dz = (std::abs(k2) == 0.0 || std::abs(k3) == 0.0 || std::abs(k4) == 0.0)
                      ? ds * k1
                      : ds / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        cplx znew = z + dz;
        auto evn = pot.eval(znew);
        if (!evn.ok) {
            // Shorten toward the filled set boundary.
            bool recovered = false;
            for (int h = 0; h < 40 && !recovered; ++h) {
                dz *= 0.5;
                znew = z + dz;
                evn = pot.eval(znew);
                recovered = evn.ok && evn.M > M;
            }
            if (!recovered) {
                ray.stalled = true;
                ray.stall_reason = "stepped into the filled set";
                break;
            }
        }
        if (!(evn.M > M + 1e-14)) {
            // No progress in the level; halve until there is, else stall.
            bool progressed = false;
            for (int h = 0; h < 45 && !progressed; ++h) {
                dz *= 0.5;
                znew = z + dz;
                auto e2 = pot.eval(znew);
                if (e2.ok && e2.M > M + 1e-15) {
                    evn = e2;
                    progressed = true;
                }
            }
            if (!progressed) throw LevelStall("level stopped increasing along the ray");
        }
        z = znew;
        M = evn.M;
        ray.levels.push_back(M);
        ray.pts.push_back(z);
    }
    ray.max_level_reached = ray.levels.empty() ? 0.0 : ray.levels.back();
    return ray;
}

std::vector<RayPiece> ray_pieces(const TauRay& ray, const PolyLikeSpec&) {
    std::vector<RayPiece> pieces;
    if (ray.pts.size() < 2) return pieces;
    int max_n = int(std::floor(ray.levels.back()));
    for (int n = 1; n <= max_n; ++n) {
        RayPiece piece;
        piece.n = n - 1; // joins level n (the (n)-th preimage of the outer boundary) to n+1
        pieces.push_back(piece);
    }
    if (pieces.empty()) return pieces;

    auto level_cross = [&](double L, size_t i) -> cplx {
        // Interpolated crossing of level L between samples i-1, i.
        double a = (L - ray.levels[i - 1]) / (ray.levels[i] - ray.levels[i - 1]);
        return ray.pts[i - 1] * (1.0 - a) + ray.pts[i] * a;
    };

    for (size_t i = 1; i < ray.pts.size(); ++i) {
        double l0 = ray.levels[i - 1], l1 = ray.levels[i];
        for (int n = 1; n <= max_n; ++n) {
            double lo = double(n), hi = double(n + 1);
            if (l1 <= lo || l0 >= hi) continue;
            RayPiece& piece = pieces[size_t(n - 1)];
            if (l0 < lo && l1 > lo) piece.pts.push_back(level_cross(lo, i));
            if (l0 >= lo && piece.pts.empty()) piece.pts.push_back(ray.pts[i - 1]);
            if (l1 <= hi)
                piece.pts.push_back(ray.pts[i]);
            else
                piece.pts.push_back(level_cross(hi, i));
        }
    }
    for (auto& piece : pieces) {
        piece.length = 0.0;
        for (size_t i = 1; i < piece.pts.size(); ++i)
            piece.length += std::abs(piece.pts[i] - piece.pts[i - 1]);
    }
    // Drop a possibly unfinished last piece.
    if (!pieces.empty() && ray.levels.back() < double(max_n + 1))
        pieces.pop_back();
    return pieces;
}

LandingReport landing(const TauRay& ray, const PolyLikeSpec& spec, double tol, int window) {
    LandingReport rep;
    if (int(ray.pts.size()) < window) {
        rep.note = "ray too short for the landing window";
        return rep;
    }
    double spread = 0.0;
    cplx centroid = 0.0;
    for (size_t i = ray.pts.size() - size_t(window); i < ray.pts.size(); ++i) {
        centroid += ray.pts[i];
        for (size_t j = i + 1; j < ray.pts.size(); ++j)
            spread = std::max(spread, chordal(ray.pts[i], ray.pts[j]));
    }
    centroid /= double(window);
    rep.window_spread = spread;
    if (spread >= tol) {
        rep.note = "window spread above tolerance (divergence or oscillation)";
        return rep;
    }
    rep.landed = true;
    rep.point = centroid;
    // Escape-time distance probe: smallest tested radius whose circle meets both
    // the filled set and its complement.
    bool center_in = in_filled_k(spec, centroid);
    rep.dist_to_k_estimate = 0.0;
    for (double rho = 1e-9; rho < 1.0; rho *= 4.0) {
        bool mixed = false;
        for (int i = 0; i < 8; ++i) {
            double th = 2.0 * M_PI * i / 8.0;
            if (in_filled_k(spec, centroid + rho * cplx(std::cos(th), std::sin(th))) != center_in)
                mixed = true;
        }
        if (mixed) {
            rep.dist_to_k_estimate = rho;
            break;
        }
    }
    return rep;
}

} // namespace gct
