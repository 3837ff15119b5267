#include "gct/pesin.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>

#include "gct/error.hpp"
#include "gct/lift.hpp"

namespace gct {

namespace {

struct OrbitProbe {
    bool valid = false;
    std::vector<double> log_deriv;                 // log |F_n'(anchor)|, n = 1..N
    std::vector<std::vector<double>> probe_deriv;  // per radius, per checkpoint index: worst log ratio
};

// Derivative products of the inverse branch along a sampled backward orbit, and
// distortion probes on circles of each candidate radius.
OrbitProbe probe_orbit(const MapSpec& f, cplx anchor, int orbit_len, Rng& rng,
                       const std::vector<double>& r_grid, const std::vector<int>& checkpoints,
                       int circle_probes) {
    OrbitProbe out;
    std::vector<cplx> past(size_t(orbit_len) + 1);
    past[0] = anchor;
    for (int n = 1; n <= orbit_len; ++n) {
        auto pre = finite_preimages(f, past[size_t(n) - 1]);
        if (pre.empty()) return out;
        past[size_t(n)] = pre[size_t(rng.below(uint64_t(pre.size())))];
    }

    out.log_deriv.resize(size_t(orbit_len));
    double acc = 0.0;
    for (int n = 1; n <= orbit_len; ++n) {
        double dn = sphere_derivative_norm(f, SpherePoint(past[size_t(n)]));
        if (dn < 1e-14) return out; // orbit through a critical point
        acc -= std::log(dn);
        out.log_deriv[size_t(n) - 1] = acc;
    }

    // Distortion: continue the branch over segments from the anchor to circle
    // points, one backward step at a time, accumulating the endpoint derivative.
    out.probe_deriv.assign(r_grid.size(), std::vector<double>(checkpoints.size(), -1e300));
    LiftOptions lopt;
    lopt.max_gap = 0.2;
    for (size_t ri = 0; ri < r_grid.size(); ++ri) {
        double r = r_grid[ri];
        double worst = -1e300;
        bool ok = true;
        for (int pj = 0; pj < circle_probes && ok; ++pj) {
            double th = 2.0 * M_PI * (pj + 0.5) / circle_probes;
            cplx zp = anchor + r * cplx(std::cos(th), std::sin(th));
            Curve seg = Curve::segment(anchor, zp, 9);
            double accp = 0.0;
            size_t ci = 0;
            for (int n = 1; n <= orbit_len && ci < checkpoints.size(); ++n) {
                try {
                    seg = lift_curve(f, seg, past[size_t(n)], lopt);
                } catch (const Error&) {
                    ok = false;
                    break;
                }
                double dn = sphere_derivative_norm(f, SpherePoint(seg.back()));
                if (dn < 1e-14) {
                    ok = false;
                    break;
                }
                accp -= std::log(dn);
                if (n == checkpoints[ci]) {
                    // log |F_n'(anchor)| - log |F_n'(z)|
                    double ratio = out.log_deriv[size_t(n) - 1] - accp;
                    out.probe_deriv[ri][ci] = std::max(out.probe_deriv[ri][ci], ratio);
                    worst = std::max(worst, ratio);
                    ++ci;
                }
            }
        }
        if (!ok) {
            // mark this radius (and all larger ones already marked) unusable
            for (auto& v : out.probe_deriv[ri]) v = 1e300;
        }
    }
    out.valid = true;
    return out;
}

bool orbit_passes(const OrbitProbe& p, size_t ri, double C, double lambda, int orbit_len,
                  const std::vector<int>& checkpoints) {
    if (!p.valid) return false;
    double logC = std::log(C), logl = std::log(lambda);
    for (int n = 1; n <= orbit_len; ++n)
        if (!(p.log_deriv[size_t(n) - 1] < logC + n * logl)) return false;
    for (size_t ci = 0; ci < checkpoints.size(); ++ci)
        if (!(p.probe_deriv[ri][ci] < logC)) return false;
    return true;
}

std::vector<cplx> pick_anchors(const EmpiricalMeasure& mu, int n, Rng& rng) {
    std::vector<cplx> anchors;
    for (int i = 0; i < n; ++i) {
        const SpherePoint& a = mu.atoms[size_t(rng.below(uint64_t(mu.atoms.size())))];
        if (a.finite()) anchors.push_back(a.value);
    }
    return anchors;
}

} // namespace

PesinBlock pesin_block(const MapSpec& f, const EmpiricalMeasure& mu, double lambda_slack,
                       PesinOptions opt) {
    mu.validate();
    LyapunovEstimate chi = lyapunov(f, mu);

    PesinBlock blk;
    blk.chi = chi.chi;
    blk.lambda = std::exp(-chi.chi) * (1.0 + lambda_slack);
    blk.r_grid = opt.r_grid;
    blk.c_grid = opt.c_grid;

    Rng rng(opt.seed);
    std::vector<cplx> anchors = pick_anchors(mu, opt.n_orbits, rng);
    std::vector<OrbitProbe> probes;
    probes.reserve(anchors.size());
    for (cplx a : anchors) {
        Rng orng = rng.fork(probes.size());
        probes.push_back(probe_orbit(f, a, opt.orbit_len, orng, opt.r_grid,
                                     opt.distortion_checkpoints, opt.circle_probes));
    }
    blk.orbits_tested = int(probes.size());

    blk.coverage_grid.assign(opt.r_grid.size(), std::vector<double>(opt.c_grid.size(), 0.0));
    for (size_t ri = 0; ri < opt.r_grid.size(); ++ri)
        for (size_t ci = 0; ci < opt.c_grid.size(); ++ci) {
            int pass = 0;
            for (const auto& p : probes)
                if (orbit_passes(p, ri, opt.c_grid[ci], blk.lambda, opt.orbit_len,
                                 opt.distortion_checkpoints))
                    ++pass;
            blk.coverage_grid[ri][ci] = probes.empty() ? 0.0 : double(pass) / double(probes.size());
        }

    // Largest r first, then smallest C, reaching the coverage target.
    blk.r = 0.0;
    blk.C = 0.0;
    blk.coverage = 0.0;
    for (size_t ri = 0; ri < opt.r_grid.size() && blk.r == 0.0; ++ri)
        for (size_t ci = 0; ci < opt.c_grid.size(); ++ci)
            if (blk.coverage_grid[ri][ci] >= opt.coverage_target) {
                blk.r = opt.r_grid[ri];
                blk.C = opt.c_grid[ci];
                blk.coverage = blk.coverage_grid[ri][ci];
                break;
            }
    if (blk.r == 0.0) {
        // Report the best achievable cell.
        for (size_t ri = 0; ri < opt.r_grid.size(); ++ri)
            for (size_t ci = 0; ci < opt.c_grid.size(); ++ci)
                if (blk.coverage_grid[ri][ci] > blk.coverage) {
                    blk.coverage = blk.coverage_grid[ri][ci];
                    blk.r = opt.r_grid[ri];
                    blk.C = opt.c_grid[ci];
                }
    }
    return blk;
}

double pesin_verify(const MapSpec& f, const EmpiricalMeasure& mu, const PesinBlock& block,
                    int n_orbits, uint64_t seed, PesinOptions opt) {
    size_t ri = 0;
    for (size_t i = 0; i < opt.r_grid.size(); ++i)
        if (std::abs(opt.r_grid[i] - block.r) < 1e-12) ri = i;

    Rng rng(seed);
    std::vector<cplx> anchors = pick_anchors(mu, n_orbits, rng);
    int pass = 0, total = 0;
    for (size_t i = 0; i < anchors.size(); ++i) {
        Rng orng = rng.fork(i + 0x5eedull);
        OrbitProbe p = probe_orbit(f, anchors[i], opt.orbit_len, orng, opt.r_grid,
                                   opt.distortion_checkpoints, opt.circle_probes);
        ++total;
        if (orbit_passes(p, ri, block.C, block.lambda, opt.orbit_len,
                         opt.distortion_checkpoints))
            ++pass;
    }
    return total ? double(pass) / double(total) : 0.0;
}

GoodDensityReport statistical_good_density(const MapSpec& f, const EmpiricalMeasure& mu,
                                           const GoodPointParams& params, int horizon,
                                           int n_points, uint64_t seed, const BasinOracle* basin,
                                           int workers) {
    mu.validate();
    GoodDensityReport rep;
    rep.horizon = horizon;

    Rng rng(seed);
    std::vector<cplx> pts;
    for (int i = 0; i < n_points; ++i) {
        const SpherePoint& a = mu.atoms[size_t(rng.below(uint64_t(mu.atoms.size())))];
        if (a.finite()) pts.push_back(a.value);
    }
    rep.points_tested = int(pts.size());
    rep.densities.assign(pts.size(), 0.0);

    std::vector<int> verdicts(pts.size(), 0); // 1 good, 0 not good, -1 undetermined
    auto work = [&](size_t i) {
        if (horizon <= 0) {
            verdicts[i] = -1;
            return;
        }
        try {
            GoodTimesReport gt = good_times(f, pts[i], params, horizon, basin);
            rep.densities[i] = gt.density;
            bool any_undetermined_only = gt.good_times.empty() &&
                std::all_of(gt.entries.begin(), gt.entries.end(), [](const GoodTimeEntry& e) {
                    return e.verdict == TimeVerdict::Undetermined ||
                           e.verdict == TimeVerdict::Skipped;
                });
            if (any_undetermined_only)
                verdicts[i] = -1;
            else
                verdicts[i] = gt.good() ? 1 : 0;
        } catch (const Error&) {
            verdicts[i] = -1;
        }
    };

    if (workers > 1) {
        std::vector<std::future<void>> futs;
        std::atomic<size_t> next{0};
        for (int w = 0; w < workers; ++w)
            futs.push_back(std::async(std::launch::async, [&]() {
                for (size_t i = next.fetch_add(1); i < pts.size(); i = next.fetch_add(1)) work(i);
            }));
        for (auto& fu : futs) fu.get();
    } else {
        for (size_t i = 0; i < pts.size(); ++i) work(i);
    }

    for (int v : verdicts) {
        if (v == 1) ++rep.points_good;
        if (v == -1) ++rep.points_undetermined;
    }
    rep.fraction_good = rep.points_tested
                            ? double(rep.points_good) / double(rep.points_tested)
                            : 0.0;
    return rep;
}

} // namespace gct
