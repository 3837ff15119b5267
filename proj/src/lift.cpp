#include "gct/lift.hpp"

#include <algorithm>
#include <cmath>

#include "gct/error.hpp"

namespace gct {

namespace {

// Newton solve of f(w) = target from w0.  Returns false on failure.
bool newton_to_target(const MapSpec& f, cplx target, cplx w0, double tol, int max_it, cplx& out) {
    cplx w = w0;
    double goal = tol * std::max(1.0, std::abs(target));
    for (int it = 0; it < max_it; ++it) {
        cplx p = poly::eval(f.num, w), q = poly::eval(f.den, w);
        cplx v = p / q - target;
        if (std::abs(v) < goal) {
            out = w;
            return true;
        }
        cplx dv = derivative(f, w);
        if (!(std::abs(dv) > 1e-300)) return false;
        cplx step = v / dv;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
        w -= step;
    }
    cplx v = evaluate(f, SpherePoint(w)).finite() ? (poly::eval(f.num, w) / poly::eval(f.den, w) - target)
                                                  : cplx(1e300, 0.);
    if (std::abs(v) < goal) {
        out = w;
        return true;
    }
    return false;
}

// Distance from `from` to the nearest preimage of `target` other than the branch
// we are following (identified as the preimage closest to `tracked`).
double other_preimage_distance(const MapSpec& f, cplx target, cplx tracked, cplx from) {
    auto pre = finite_preimages(f, target);
    if (pre.size() <= 1) return 1e300;
    size_t own = 0;
    double best = 1e300;
    for (size_t i = 0; i < pre.size(); ++i) {
        double d = std::abs(pre[i] - tracked);
        if (d < best) {
            best = d;
            own = i;
        }
    }
    double out = 1e300;
    for (size_t i = 0; i < pre.size(); ++i) {
        if (i == own) continue;
        if (std::abs(pre[i] - pre[own]) < 1e-12 * (1.0 + std::abs(pre[own]))) continue; // same multiple root
        out = std::min(out, std::abs(pre[i] - from));
    }
    return out;
}

} // namespace

Curve lift_curve(const MapSpec& f, const Curve& base, cplx start,
                 const std::vector<SpherePoint>& crit_values, const LiftOptions& opt) {
    base.validate();
    if (base.size() < 1) throw ConfigError("cannot lift an empty curve");

    // The start must actually be a preimage of the initial point.
    if (chordal(evaluate(f, SpherePoint(start)), SpherePoint(base.front())) > 1e-6)
        throw ConfigError("lift start is not a preimage of the curve's initial point");
    cplx w0;
    if (!newton_to_target(f, base.front(), start, opt.newton_tol, opt.max_newton, w0))
        throw NoConvergence(0.0);

    auto clearance_check = [&](double t, cplx target) {
        for (const auto& cv : crit_values) {
            double d = chordal(SpherePoint(target), cv);
            if (d < opt.critical_clearance) throw CriticalValueProximity(t, d);
        }
    };
    clearance_check(0.0, base.front());

    Curve out;
    out.ts.push_back(base.ts.front());
    out.pts.push_back(w0);

    // The branch separation varies slowly along the curve; refresh it only every
    // few accepted points or when a corrector step gets close to the stale bound.
    double sep_cache = -1.0;
    int since_sep = 0;

    // Walk segment by segment so every base sample appears in the output.
    for (size_t seg = 1; seg < base.size(); ++seg) {
        double t0 = base.ts[seg - 1], t1 = base.ts[seg];
        double t = t0;
        double dt = t1 - t0;
        while (t < t1 - 1e-15) {
            if (out.pts.size() > opt.max_points) throw Error("lift exceeded the sample budget");
            double tn = std::min(t1, t + dt);
            cplx target = base.eval(tn);
            clearance_check(tn, target);

            cplx cur = out.pts.back();
            cplx w;
            bool ok = newton_to_target(f, target, cur, opt.newton_tol, opt.max_newton, w);
            if (ok) {
                double move = std::abs(w - cur);
                if (sep_cache < 0.0 || since_sep >= 8 || move > 0.25 * sep_cache) {
                    sep_cache = other_preimage_distance(f, target, w, cur);
                    since_sep = 0;
                } else {
                    ++since_sep;
                }
                if (move > opt.branch_guard * sep_cache) ok = false;   // possible branch jump
                if (ok && chordal(cur, w) > opt.max_gap) ok = false;   // refine for output density
            }
            if (!ok) {
                dt *= 0.5;
                if (dt < opt.min_param_step) throw NoConvergence(tn);
                continue;
            }
            out.ts.push_back(tn);
            out.pts.push_back(w);
            t = tn;
            if (chordal(cur, w) < 0.25 * opt.max_gap) dt = std::min(dt * 1.7, t1 - t0);
        }
    }
    return out;
}

Curve lift_curve(const MapSpec& f, const Curve& base, cplx start, const LiftOptions& opt) {
    return lift_curve(f, base, start, critical_values(f), opt);
}

Condition05Report check_condition_0_5(const MapSpec& f, const std::vector<Curve>& base_curves,
                                      int horizon, double clearance) {
    Condition05Report rep;
    rep.clearance = clearance;
    rep.horizon = horizon;
    rep.min_distance = 1e300;

    std::vector<SpherePoint> orbit_pts;
    for (const auto& c : critical_points(f)) {
        if (!c.location.finite()) continue;
        SpherePoint z = c.location;
        for (int n = 1; n <= horizon; ++n) {
            z = evaluate(f, z);
            orbit_pts.push_back(z);
        }
    }

    for (size_t j = 0; j < base_curves.size(); ++j) {
        for (const cplx& p : base_curves[j].pts) {
            for (size_t i = 0; i < orbit_pts.size(); ++i) {
                double d = chordal(SpherePoint(p), orbit_pts[i]);
                if (d < rep.min_distance) {
                    rep.min_distance = d;
                    rep.worst_curve = int(j);
                    rep.worst_orbit_step = int(i % size_t(horizon)) + 1;
                }
            }
        }
    }
    if (orbit_pts.empty()) rep.min_distance = 1e300; // no finite critical orbit at all
    rep.pass = rep.min_distance >= clearance;
    return rep;
}

} // namespace gct
