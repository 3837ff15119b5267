#include "gct/good_points.hpp"

#include <algorithm>
#include <cmath>

#include "gct/error.hpp"

namespace gct {

void GoodPointParams::validate() const {
    if (!(r > 0.0)) throw ConfigError("good-point radius must be positive");
    if (!(delta > 0.0 && delta < r)) throw ConfigError("need 0 < delta < r");
    if (!(kappa > 0.0 && kappa <= 1.0)) throw ConfigError("need 0 < kappa <= 1");
    if (Delta < 1) throw ConfigError("Delta must be a positive integer");
    if (n0 < 0) throw ConfigError("n0 must be non-negative");
}

BasinOracle basin_of_infinity_oracle(const MapSpec& f, int cap) {
    double coeff = std::max(poly::coeff_scale(f.num), poly::coeff_scale(f.den));
    double escape = 2.0 * std::max(1.0, coeff);
    MapSpec map = f;
    return [map, escape, cap](cplx z) {
        SpherePoint p(z);
        for (int i = 0; i < cap; ++i) {
            if (p.at_infinity || std::abs(p.value) > escape) return true;
            p = evaluate(map, p);
        }
        return p.at_infinity || std::abs(p.value) > escape;
    };
}

GoodTimesReport good_times(const MapSpec& f, cplx q, const GoodPointParams& params, int horizon,
                           const BasinOracle* basin, int boundary_samples) {
    params.validate();
    GoodTimesReport rep;
    rep.horizon = horizon;
    rep.params = params;

    // Forward orbit; candidates through points too large for a chordal ball are
    // marked undetermined rather than silently skipped.
    std::vector<SpherePoint> orbit(size_t(horizon) + 1);
    orbit[0] = SpherePoint(q);
    for (int i = 1; i <= horizon; ++i) orbit[size_t(i)] = evaluate(f, orbit[size_t(i) - 1]);

    PullbackOptions popt;
    for (int n = 1; n <= horizon; ++n) {
        GoodTimeEntry ent;
        ent.n = n;
        if (n < params.Delta) {
            ent.verdict = TimeVerdict::Skipped;
            ent.note = "span shorter than Delta";
            rep.entries.push_back(ent);
            continue;
        }
        bool representable = true;
        for (int l = 0; l <= n; ++l)
            if (!orbit[size_t(l)].finite()) representable = false;
        Region reg;
        if (representable) {
            try {
                reg = Region::chordal_ball(orbit[size_t(n)].value, params.r, boundary_samples);
            } catch (const Error&) {
                representable = false;
            }
        }
        if (!representable) {
            ent.verdict = TimeVerdict::Undetermined;
            ent.note = "orbit point not representable in the plane chart";
            rep.entries.push_back(ent);
            continue;
        }

        ent.min_margin = 1e300;
        ent.verdict = TimeVerdict::Good;
        for (int l = n - 1; l >= 0; --l) {
            auto pb = pull_back_once(f, reg, orbit[size_t(l)].value, popt);
            if (!pb.ok) {
                ent.verdict = TimeVerdict::Undetermined;
                ent.note = pb.failure;
                break;
            }
            reg = std::move(pb.region);
            if (l <= n - params.Delta) {
                double reach = reg.max_chordal_from(orbit[size_t(l)].value);
                double margin = (params.r - params.delta) - reach;
                ent.min_margin = std::min(ent.min_margin, margin);
                if (margin <= 0.0) {
                    ent.verdict = TimeVerdict::Bad;
                    break;
                }
            }
        }
        if (ent.verdict == TimeVerdict::Good) {
            ent.trace_diameter = reg.diameter();
            if (basin) {
                // Sampled inclusion: points of the time-0 component whose n-th
                // iterate lies in the basin must already be in the basin.
                auto check = [&](cplx s) {
                    SpherePoint w(s);
                    for (int i = 0; i < n; ++i) w = evaluate(f, w);
                    bool fwd = w.at_infinity || (*basin)(w.value);
                    if (fwd && !(*basin)(s)) ent.basin_ok = false;
                };
                for (const cplx& s : reg.boundary.pts) check(s);
                for (const cplx& s : reg.spine.pts) check(s);
                check(reg.witness);
            }
            rep.good_times.push_back(n);
        }
        rep.entries.push_back(ent);
    }

    rep.density = horizon > 0 ? double(rep.good_times.size()) / double(horizon) : 0.0;
    rep.density_ok = rep.density >= params.kappa;

    // Trend for the trace diameters: the last decile must sit well below the first.
    std::vector<std::pair<int, double>> diams;
    for (const auto& e : rep.entries)
        if (e.verdict == TimeVerdict::Good) diams.push_back({e.n, e.trace_diameter});
    if (diams.size() >= 10) {
        size_t decile = std::max<size_t>(1, diams.size() / 10);
        double lo = 0.0, hi = 0.0;
        for (size_t i = 0; i < decile; ++i) lo = std::max(lo, diams[i].second);
        for (size_t i = diams.size() - decile; i < diams.size(); ++i)
            hi = std::max(hi, diams[i].second);
        rep.diam_trend_checked = true;
        rep.diam_trend_ok = hi < 0.1 * lo;
    }

    if (basin) {
        bool all = true;
        for (const auto& e : rep.entries)
            if (e.verdict == TimeVerdict::Good && !e.basin_ok) all = false;
        rep.basin_checked = all;
    }
    return rep;
}

} // namespace gct
