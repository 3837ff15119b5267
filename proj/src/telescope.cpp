#include "gct/telescope.hpp"

#include <algorithm>
#include <cmath>

namespace gct {

SignificanceResult significance(cplx center, double radius, const CodingTree& tree, int n0) {
    SignificanceResult res;
    double total = 1.0;
    for (int n = 0; n <= n0; ++n) {
        total *= tree.degree();
        if (total > double(tree.options().exhaustive_budget)) res.exhaustive = false;
    }
    tree.sweep_levels(n0, 7, [&](const SymbolWord& w, const Curve& c) {
        for (const cplx& p : c.pts) {
            if (chordal(SpherePoint(p), SpherePoint(center)) < radius) {
                res.significant = true;
                int lvl = int(w.size()) - 1;
                if (res.first_level < 0 || lvl < res.first_level) res.first_level = lvl;
                break;
            }
        }
        return !(res.significant && res.first_level == 0);
    });
    return res;
}

Telescope build_telescope(const MapSpec& f, cplx q, const std::vector<int>& good_time_set,
                          const GoodPointParams& params, int k,
                          const CodingTree* tree_for_significance, int boundary_samples) {
    params.validate();
    if (k < 1) throw TelescopeBuildError("telescope needs at least one link");

    // Every Delta-th good time; the density constant rescales accordingly.
    std::vector<int> chosen;
    for (size_t i = size_t(params.Delta) - 1; i < good_time_set.size();
         i += size_t(params.Delta))
        chosen.push_back(good_time_set[i]);
    if (int(chosen.size()) < k)
        throw TelescopeBuildError("only " + std::to_string(chosen.size()) +
                                  " selected good times for a " + std::to_string(k) +
                                  "-link telescope");

    Telescope tel;
    tel.q = q;
    tel.params = params;
    tel.kappa_effective = params.kappa / double(params.Delta);
    tel.times.push_back(0);
    for (int t = 0; t < k; ++t) tel.times.push_back(chosen[size_t(t)]);

    int horizon = tel.times.back();
    std::vector<SpherePoint> orbit(size_t(horizon) + 1);
    orbit[0] = SpherePoint(q);
    for (int i = 1; i <= horizon; ++i) orbit[size_t(i)] = evaluate(f, orbit[size_t(i) - 1]);
    for (int n : tel.times) {
        if (!orbit[size_t(n)].finite())
            throw TelescopeBuildError("orbit point at a selected time is at infinity");
        tel.centers.push_back(orbit[size_t(n)].value);
    }

    // Significance of the deepest region.
    if (tree_for_significance) {
        auto sig = significance(tel.centers.back(), params.r, *tree_for_significance, params.n0);
        if (!sig.significant) {
            int n0_try = params.n0;
            SignificanceResult s2;
            for (; n0_try <= params.n0 + 16; ++n0_try) {
                s2 = significance(tel.centers.back(), params.r, *tree_for_significance, n0_try);
                if (s2.significant) break;
            }
            throw NoSignificantComponent(s2.significant ? n0_try : -1);
        }
        tel.significance_level = sig.first_level;
    }

    PullbackOptions popt;
    // Links: the component of the pullback of D_t containing the earlier orbit point.
    for (int t = 1; t <= k; ++t) {
        Region reg = Region::chordal_ball(tel.centers[size_t(t)], params.r, boundary_samples);
        for (int l = tel.times[size_t(t)] - 1; l >= tel.times[size_t(t) - 1]; --l) {
            auto pb = pull_back_once(f, reg, orbit[size_t(l)].value, popt);
            if (!pb.ok)
                throw TelescopeBuildError("link " + std::to_string(t) +
                                          " pullback failed: " + pb.failure);
            reg = std::move(pb.region);
        }
        TelescopeLink link;
        link.n_prev = tel.times[size_t(t) - 1];
        link.n_t = tel.times[size_t(t)];
        link.margin = params.r - reg.max_chordal_from(tel.centers[size_t(t) - 1]);
        link.component = std::move(reg);
        tel.links.push_back(std::move(link));
    }

    // Trace: pull each component all the way back to time 0 along the orbit.
    for (int t = 1; t <= k; ++t) {
        Region reg = tel.links[size_t(t) - 1].component;
        for (int l = tel.times[size_t(t) - 1] - 1; l >= 0; --l) {
            auto pb = pull_back_once(f, reg, orbit[size_t(l)].value, popt);
            if (!pb.ok)
                throw TelescopeBuildError("trace of link " + std::to_string(t) +
                                          " failed: " + pb.failure);
            reg = std::move(pb.region);
        }
        tel.trace.push_back(std::move(reg));
    }
    return tel;
}

TelescopeVerifyReport verify_telescope(const MapSpec& f, const Telescope& tel) {
    TelescopeVerifyReport rep;
    for (int t = 1; t <= tel.k(); ++t) {
        const TelescopeLink& link = tel.links[size_t(t) - 1];
        LinkCheck chk;
        chk.t = t;
        chk.time_ok = double(t) / double(link.n_t) > tel.kappa_effective;

        // Sampled clearance of the component's boundary inside the previous ball.
        double reach = link.component.max_chordal_from(tel.centers[size_t(t) - 1]);
        chk.margin = tel.params.r - reach;
        chk.margin_ok = chk.margin > tel.params.delta;

        // Forward re-check: the traced boundary must map onto the sphere-circle
        // bounding D_t.
        double dev = 0.0;
        int gap = link.n_t - link.n_prev;
        size_t stride = std::max<size_t>(1, link.component.boundary.pts.size() / 48);
        for (size_t i = 0; i < link.component.boundary.pts.size(); i += stride) {
            SpherePoint w(link.component.boundary.pts[i]);
            for (int s = 0; s < gap; ++s) w = evaluate(f, w);
            dev = std::max(dev,
                           std::abs(chordal(w, SpherePoint(tel.centers[size_t(t)])) - tel.params.r));
        }
        chk.forward_deviation = dev;

        if ((!chk.time_ok || !chk.margin_ok) && rep.first_failed_link < 0)
            rep.first_failed_link = t;
        rep.time_condition_ok = rep.time_condition_ok && chk.time_ok;
        rep.clearance_ok = rep.clearance_ok && chk.margin_ok;
        rep.links.push_back(chk);
    }

    // Trace nesting, sampled on boundary points.
    for (size_t t = 1; t < tel.trace.size(); ++t) {
        const Region& inner = tel.trace[t];
        const Region& outer = tel.trace[t - 1];
        size_t stride = std::max<size_t>(1, inner.boundary.pts.size() / 64);
        for (size_t i = 0; i < inner.boundary.pts.size(); i += stride)
            if (!outer.contains(inner.boundary.pts[i])) rep.nesting_ok = false;
        if (!outer.contains(inner.witness)) rep.nesting_ok = false;
    }
    return rep;
}

GoodPointVerdict good_point_verdict(const MapSpec& f, cplx q, const CodingTree& tree,
                                    const GoodPointParams& params, int count, int min_len,
                                    int horizon, int boundary_samples) {
    GoodPointVerdict out;
    int max_len = min_len + count - 1;
    if (horizon <= 0) horizon = 2 * params.Delta * max_len + 10;

    GoodTimesReport gt = good_times(f, q, params, horizon, nullptr, boundary_samples);
    if (int(gt.good_times.size()) < params.Delta * max_len) {
        out.reason = "only " + std::to_string(gt.good_times.size()) +
                     " good times within horizon " + std::to_string(horizon);
        return out;
    }

    std::vector<Telescope> tels;
    for (int j = 0; j < count; ++j) {
        try {
            tels.push_back(
                build_telescope(f, q, gt.good_times, params, min_len + j, &tree, boundary_samples));
        } catch (const TelescopeBuildError& e) {
            out.reason = e.what();
            return out;
        }
    }
    out.telescopes_built = count;

    out.sup_trace_distance.assign(size_t(min_len) + 1, 0.0);
    for (int l = 1; l <= min_len; ++l) {
        double sup = 0.0;
        for (const auto& tel : tels)
            sup = std::max(sup, tel.trace[size_t(l) - 1].max_chordal_from(q));
        out.sup_trace_distance[size_t(l)] = sup;
    }
    out.final_sup = out.sup_trace_distance.back();
    out.decay_ok = out.final_sup < 0.5 * out.sup_trace_distance[1];
    out.verdict = out.decay_ok ? Verdict::Good : Verdict::Undetermined;
    if (!out.decay_ok) out.reason = "trace distances do not decay";
    return out;
}

} // namespace gct
