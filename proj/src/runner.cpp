#include "gct/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gct/branch_search.hpp"
#include "gct/census.hpp"
#include "gct/error.hpp"
#include "gct/good_points.hpp"
#include "gct/koenigs.hpp"
#include "gct/measure.hpp"
#include "gct/pesin.hpp"
#include "gct/potential.hpp"
#include "gct/ray.hpp"
#include "gct/svg.hpp"
#include "gct/telescope.hpp"

namespace gct {

namespace {

std::string artifact_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return cfg.out_dir + "/" + name;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

PeriodicPoint resolve_chart_point(const RunConfig& cfg) {
    if (!cfg.chart) throw ConfigError("this command needs a 'chart' section");
    const ChartConfig& cc = *cfg.chart;
    auto pts = periodic_points(cfg.map, cc.period);
    if (cc.q) {
        for (const auto& p : pts)
            if (p.location.finite() && chordal(p.location, SpherePoint(*cc.q)) < 1e-6) return p;
        throw ConfigError("chart.q is not a periodic point of the stated period");
    }
    for (const auto& p : pts)
        if (p.cls == Stability::Repelling && p.location.finite()) return p;
    throw ConfigError("no repelling cycle of the stated period");
}

json curve_to_json(const Curve& c) {
    json j = json::array();
    for (size_t i = 0; i < c.pts.size(); ++i)
        j.push_back({c.ts[i], c.pts[i].real(), c.pts[i].imag()});
    return j;
}

void cmd_tree_build(const RunConfig& cfg, RunReport& rep, bool artifacts) {
    CodingTree tree = build_tree(cfg);
    int depth = cfg.tree->depth;
    std::ostringstream lines;
    size_t count = 0;
    tree.sweep_levels(depth, cfg.seed, [&](const SymbolWord& w, const Curve& c) {
        json j;
        j["word"] = w.str();
        j["level"] = int(w.size()) - 1;
        j["endpoint"] = complex_to_json(c.back());
        j["diameter"] = curve_diameter(c);
        lines << j.dump() << "\n";
        ++count;
        return true;
    });
    if (artifacts) {
        std::string path = artifact_path(cfg, "tree_build.jsonl");
        write_text(path, lines.str());
        rep.artifacts.push_back(path);
    }
    rep.tables["edges_emitted"] = count;
    rep.tables["depth"] = depth;
    rep.verdicts["built"] = count > 0;
}

void cmd_tree_diam(const RunConfig& cfg, RunReport& rep, bool artifacts) {
    CodingTree tree = build_tree(cfg);
    auto profile = tree.diameter_profile(cfg.tree->depth, cfg.seed);
    std::ostringstream csv;
    csv << "n,max_diam,exhaustive,words\n";
    json tbl = json::array();
    for (const auto& e : profile) {
        csv << e.level << "," << e.max_diameter << "," << (e.exhaustive ? 1 : 0) << ","
            << e.words_visited << "\n";
        tbl.push_back({{"n", e.level},
                       {"max_diam", e.max_diameter},
                       {"exhaustive", e.exhaustive},
                       {"words", e.words_visited}});
    }
    if (artifacts) {
        std::string path = artifact_path(cfg, "tree_diam.csv");
        write_text(path, csv.str());
        rep.artifacts.push_back(path);
    }
    rep.tables["profile"] = tbl;
    rep.verdicts["last_level_below_first"] =
        profile.size() >= 2 && profile.back().max_diameter < profile.front().max_diameter;
}

void cmd_access_periodic(const RunConfig& cfg, RunReport& rep, bool) {
    CodingTree tree = build_tree(cfg);
    PeriodicPoint q = resolve_chart_point(cfg);
    KoenigsChart chart = koenigs_chart(cfg.map, q, cfg.chart->order);
    BranchSearchOptions bopt;
    bopt.seed = cfg.seed;
    auto res = find_periodic_branch(tree, chart, cfg.chart->max_period, bopt);

    rep.tables["q"] = complex_to_json(chart.q);
    rep.tables["multiplier"] = complex_to_json(chart.lambda);
    rep.tables["period"] = chart.period;
    if (res.found) {
        rep.tables["address"] = res.address.str();
        rep.tables["fitted_rate"] = res.fitted_rate;
        rep.tables["expected_rate"] = res.expected_rate;
        rep.tables["rate_rel_error"] = res.rate_rel_error;
        rep.tables["landing_residual"] = res.landing_residual;
        rep.tables["isteps"] = res.isteps_used;
        rep.tables["degenerate"] = res.degenerate;
        rep.tables["condition_1_1"] = res.condition_1_1;
    } else {
        rep.tables["failure"] = res.failure;
    }
    rep.verdicts["found"] = res.found;
    if (res.found && !res.degenerate)
        rep.verdicts["rate_within_20pct"] = res.rate_rel_error < 0.20;
}

void cmd_access_good(const RunConfig& cfg, RunReport& rep, bool) {
    if (!cfg.good) throw ConfigError("this command needs a 'good' section");
    if (!cfg.chart || !cfg.chart->q) throw ConfigError("access good needs chart.q");
    CodingTree tree = build_tree(cfg);
    cplx q = *cfg.chart->q;

    BasinOracle basin = basin_of_infinity_oracle(cfg.map);
    GoodTimesReport gt = good_times(cfg.map, q, *cfg.good, cfg.good_horizon, &basin);
    rep.tables["good_times"] = gt.good_times;
    rep.tables["density"] = gt.density;
    rep.verdicts["density_ok"] = gt.density_ok;
    if (gt.diam_trend_checked) rep.verdicts["diam_trend_ok"] = gt.diam_trend_ok;
    if (gt.basin_checked) rep.verdicts["basin_ok"] = *gt.basin_checked;

    int count = cfg.telescope ? cfg.telescope->count : 4;
    int min_len = cfg.telescope ? cfg.telescope->min_len : 8;
    auto verdict = good_point_verdict(cfg.map, q, tree, *cfg.good, count, min_len);
    rep.tables["sup_trace_distance"] = verdict.sup_trace_distance;
    rep.tables["telescopes_built"] = verdict.telescopes_built;
    if (!verdict.reason.empty()) rep.tables["reason"] = verdict.reason;
    rep.verdicts["good"] = verdict.verdict == Verdict::Good;
}

void cmd_telescope_verify(const RunConfig& cfg, RunReport& rep, bool artifacts) {
    if (!cfg.good) throw ConfigError("this command needs a 'good' section");
    if (!cfg.chart || !cfg.chart->q) throw ConfigError("telescope verify needs chart.q");
    CodingTree tree = build_tree(cfg);
    cplx q = *cfg.chart->q;
    int k = cfg.telescope ? cfg.telescope->k : 10;

    GoodTimesReport gt = good_times(cfg.map, q, *cfg.good, cfg.good_horizon);
    Telescope tel = build_telescope(cfg.map, q, gt.good_times, *cfg.good, k, &tree);
    auto ver = verify_telescope(cfg.map, tel);

    json links = json::array();
    for (const auto& l : ver.links)
        links.push_back({{"t", l.t},
                         {"time_ok", l.time_ok},
                         {"margin", l.margin},
                         {"margin_ok", l.margin_ok},
                         {"forward_deviation", l.forward_deviation}});
    rep.tables["links"] = links;
    rep.tables["times"] = tel.times;
    rep.tables["significance_level"] = tel.significance_level;
    rep.verdicts["time_condition"] = ver.time_condition_ok;
    rep.verdicts["clearance"] = ver.clearance_ok;
    rep.verdicts["nesting"] = ver.nesting_ok;

    if (artifacts) {
        // Nested trace regions around q.
        double span = tel.params.r * 1.2;
        SvgPlot plot(q.real() - span, q.real() + span, q.imag() - span, q.imag() + span, 700);
        plot.comment("config " + rep.config_hash);
        plot.circle(q, tel.params.r, "#888");
        for (const auto& reg : tel.trace) plot.polyline(reg.boundary.pts, "#356", 1.0);
        plot.dot(q, 3.0, "#c33");
        std::string path = artifact_path(cfg, "telescope_trace.svg");
        write_text(path, plot.finish());
        rep.artifacts.push_back(path);
    }
}

void cmd_ray_trace(const RunConfig& cfg, RunReport& rep, bool artifacts) {
    if (!cfg.ray) throw ConfigError("this command needs a 'ray' section");
    const RayConfig& rc = *cfg.ray;
    PolyLikeSpec spec = PolyLikeSpec::make(cfg.map, rc.W, rc.W1);
    PotentialM::Options popt;
    popt.basis_order = rc.basis_order;
    PotentialM pot = PotentialM::build(spec, popt);

    Rng rng(cfg.seed);
    rep.tables["boundary_residual"] = pot.boundary_residual();
    double func_res = pot.functional_residual(rng, 500);
    rep.tables["functional_residual"] = func_res;
    rep.verdicts["functional_equation"] = func_res < 1e-5;

    json rays = json::array();
    bool all_landed = true;
    std::vector<TauRay> traced;
    for (double ang : rc.start_angles) {
        cplx start = spec.W.boundary_point(ang);
        TauRay ray = trace_ray(pot, rc.tau, start, rc.max_level);
        LandingReport land = landing(ray, spec);
        json jr;
        jr["start_angle"] = ang;
        jr["points"] = ray.pts.size();
        jr["max_level"] = ray.max_level_reached;
        jr["landed"] = land.landed;
        if (land.landed) {
            jr["landing_point"] = complex_to_json(land.point);
            jr["window_spread"] = land.window_spread;
            jr["dist_to_k"] = land.dist_to_k_estimate;
        } else {
            jr["note"] = land.note;
        }
        auto pieces = ray_pieces(ray, spec);
        json jp = json::array();
        for (const auto& p : pieces) jp.push_back({{"n", p.n}, {"length", p.length}});
        jr["pieces"] = jp;
        rays.push_back(jr);
        all_landed = all_landed && land.landed;
        traced.push_back(std::move(ray));
    }
    rep.tables["rays"] = rays;
    rep.verdicts["all_landed"] = all_landed;

    if (artifacts) {
        double R = (rc.W.kind == DomainSpec::Disk) ? rc.W.radius * 1.05 : 5.0;
        cplx c = rc.W.center;
        SvgPlot plot(c.real() - R, c.real() + R, c.imag() - R, c.imag() + R, 800);
        plot.comment("config " + rep.config_hash);
        int n = cfg.plot_raster;
        std::vector<unsigned char> raster(size_t(n) * size_t(n), 255);
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                cplx z(c.real() - R + 2.0 * R * (x + 0.5) / n,
                       c.imag() + R - 2.0 * R * (y + 0.5) / n);
                if (in_filled_k(spec, z, 80)) raster[size_t(y) * size_t(n) + size_t(x)] = 90;
            }
        plot.raster_background(raster, n, n);
        plot.circle(rc.W.center, rc.W.kind == DomainSpec::Disk ? rc.W.radius : 0.0, "#999");
        plot.circle(rc.W1.center, rc.W1.kind == DomainSpec::Disk ? rc.W1.radius : 0.0, "#bbb");
        for (const auto& ray : traced) plot.polyline(ray.pts, "#c2401f", 1.2);
        std::string path = artifact_path(cfg, "rays.svg");
        write_text(path, plot.finish());
        rep.artifacts.push_back(path);
    }
}

void write_atom_csv(const RunConfig& cfg, const EmpiricalMeasure& mu, RunReport& rep,
                    const char* name) {
    std::ostringstream csv;
    csv << "re,im,weight\n";
    for (size_t i = 0; i < mu.atoms.size(); ++i) {
        if (!mu.atoms[i].finite()) continue;
        csv << mu.atoms[i].value.real() << "," << mu.atoms[i].value.imag() << ","
            << mu.weights[i] << "\n";
    }
    std::string path = artifact_path(cfg, name);
    write_text(path, csv.str());
    rep.artifacts.push_back(path);
}

void cmd_measure_lyapunov(const RunConfig& cfg, RunReport& rep, bool artifacts) {
    if (!cfg.measure) throw ConfigError("this command needs a 'measure' section");
    EmpiricalMeasure mu = sample_mme(cfg.map, cfg.measure->samples, cfg.measure->burn_in,
                                     cfg.seed);
    LyapunovEstimate est = lyapunov(cfg.map, mu);
    RuelleCheck rc = ruelle_check(cfg.measure->h_mu, est);
    rep.tables["chi"] = est.chi;
    rep.tables["std_error"] = est.std_error;
    rep.tables["atoms_used"] = est.atoms_used;
    rep.tables["atoms_dropped"] = est.atoms_dropped;
    rep.tables["h_mu"] = rc.h_mu;
    rep.verdicts["chi_positive"] = est.chi > 0.0;
    rep.verdicts["ruelle"] = rc.pass;
    if (artifacts) write_atom_csv(cfg, mu, rep, "mme_atoms.csv");
}

void cmd_measure_pesin(const RunConfig& cfg, RunReport& rep, bool) {
    if (!cfg.measure) throw ConfigError("this command needs a 'measure' section");
    PesinConfig pc = cfg.pesin ? *cfg.pesin : PesinConfig{};
    EmpiricalMeasure mu = sample_mme(cfg.map, cfg.measure->samples, cfg.measure->burn_in,
                                     cfg.seed);
    PesinOptions popt;
    popt.n_orbits = pc.orbits;
    popt.orbit_len = pc.orbit_len;
    popt.seed = cfg.seed ^ 0xb10cull;
    PesinBlock blk = pesin_block(cfg.map, mu, pc.lambda_slack, popt);
    double holdout = pesin_verify(cfg.map, mu, blk, pc.holdout, cfg.seed ^ 0x401dull, popt);
    rep.tables["r"] = blk.r;
    rep.tables["C"] = blk.C;
    rep.tables["lambda"] = blk.lambda;
    rep.tables["chi"] = blk.chi;
    rep.tables["coverage"] = blk.coverage;
    rep.tables["holdout_coverage"] = holdout;
    rep.verdicts["coverage_majority"] = blk.coverage >= 0.5;
}

void cmd_measure_good_density(const RunConfig& cfg, RunReport& rep, bool) {
    if (!cfg.measure) throw ConfigError("this command needs a 'measure' section");
    if (!cfg.good) throw ConfigError("this command needs a 'good' section");
    DensityConfig dc = cfg.density ? *cfg.density : DensityConfig{};
    EmpiricalMeasure mu = sample_mme(cfg.map, cfg.measure->samples, cfg.measure->burn_in,
                                     cfg.seed);
    BasinOracle basin = basin_of_infinity_oracle(cfg.map);
    GoodDensityReport rep2 = statistical_good_density(
        cfg.map, mu, *cfg.good, dc.horizon, dc.points, cfg.seed ^ 0xdeed5ull,
        dc.use_basin_oracle ? &basin : nullptr, cfg.workers);
    rep.tables["points_tested"] = rep2.points_tested;
    rep.tables["points_good"] = rep2.points_good;
    rep.tables["points_undetermined"] = rep2.points_undetermined;
    rep.tables["fraction_good"] = rep2.fraction_good;
    rep.tables["densities"] = rep2.densities;
    rep.verdicts["fraction_ok"] = rep2.fraction_good >= dc.min_fraction;
}

void cmd_plot(const RunConfig& cfg, RunReport& rep, bool artifacts) {
    CodingTree tree = build_tree(cfg); // throws on a missing/defective tree section
    int depth = std::min(cfg.tree->depth, 12);
    auto pts = tree.limit_set_sample(depth, cfg.seed);
    if (pts.empty()) throw ConfigError("tree produced no vertices to plot");

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (cplx p : pts) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    double pad = 0.1 * std::max(xmax - xmin, ymax - ymin) + 1e-6;
    SvgPlot plot(xmin - pad, xmax + pad, ymin - pad, ymax + pad, 800);
    plot.comment("config " + rep.config_hash);
    tree.sweep_levels(std::min(depth, 8), cfg.seed,
                      [&](const SymbolWord&, const Curve& c) {
                          plot.polyline(c.pts, "#7a9", 0.6);
                          return true;
                      });
    for (cplx p : pts) plot.dot(p, 1.2, "#235");
    if (artifacts) {
        std::string path = artifact_path(cfg, "tree_plot.svg");
        write_text(path, plot.finish());
        rep.artifacts.push_back(path);
    }
    rep.tables["points"] = pts.size();
    rep.verdicts["plotted"] = true;
}

} // namespace

RunOutcome run_command(const std::string& command, const RunConfig& cfg, bool write_artifacts) {
    RunOutcome out;
    out.report.command = command;
    out.report.config_hash = config_hash(cfg);
    out.report.seed = cfg.seed;

    auto t0 = std::chrono::steady_clock::now();
    try {
        if (command == "tree build")
            cmd_tree_build(cfg, out.report, write_artifacts);
        else if (command == "tree diam")
            cmd_tree_diam(cfg, out.report, write_artifacts);
        else if (command == "access periodic")
            cmd_access_periodic(cfg, out.report, write_artifacts);
        else if (command == "access good")
            cmd_access_good(cfg, out.report, write_artifacts);
        else if (command == "telescope verify")
            cmd_telescope_verify(cfg, out.report, write_artifacts);
        else if (command == "ray trace")
            cmd_ray_trace(cfg, out.report, write_artifacts);
        else if (command == "measure lyapunov")
            cmd_measure_lyapunov(cfg, out.report, write_artifacts);
        else if (command == "measure pesin")
            cmd_measure_pesin(cfg, out.report, write_artifacts);
        else if (command == "measure good-density")
            cmd_measure_good_density(cfg, out.report, write_artifacts);
        else if (command == "plot")
            cmd_plot(cfg, out.report, write_artifacts);
        else
            throw ConfigError("unknown command: " + command);
    } catch (const std::exception& e) {
        out.exit_code = 2;
        out.error = e.what();
        return out;
    }
    auto t1 = std::chrono::steady_clock::now();
    out.report.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    if (write_artifacts) write_report(out.report, cfg.out_dir);
    out.exit_code = out.report.all_verdicts_pass() ? 0 : 1;
    return out;
}

} // namespace gct
