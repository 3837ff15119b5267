#include "gct/config.hpp"

#include <fstream>

#include "gct/error.hpp"

namespace gct {

cplx parse_complex(const json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2)
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw ConfigError("complex values must be [re, im] pairs (got " + j.dump() + ")");
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

namespace {

poly::Poly parse_poly(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty())
        throw ConfigError("field '" + field + "' must be a non-empty coefficient list");
    poly::Poly p;
    for (const auto& c : j) p.push_back(parse_complex(c));
    return p;
}

DomainSpec parse_domain(const json& j, const std::string& field) {
    if (j.contains("radius")) {
        cplx c = j.contains("center") ? parse_complex(j["center"]) : cplx(0.0);
        return DomainSpec::disk(c, j["radius"].get<double>());
    }
    if (j.contains("vertices")) {
        std::vector<cplx> vs;
        for (const auto& v : j["vertices"]) vs.push_back(parse_complex(v));
        return DomainSpec::polygon(std::move(vs));
    }
    throw ConfigError("domain '" + field + "' needs either radius or vertices");
}

template <typename T>
T get_or(const json& j, const char* key, T def) {
    if (!j.contains(key)) return def;
    return j[key].get<T>();
}

} // namespace

RunConfig RunConfig::from_json(const json& j) {
    RunConfig cfg;
    cfg.raw = j;
    if (!j.contains("map")) throw ConfigError("config needs a 'map' section");
    const json& jm = j["map"];
    cfg.map = MapSpec::make(parse_poly(jm.at("numerator"), "map.numerator"),
                            jm.contains("denominator") ? parse_poly(jm["denominator"], "map.denominator")
                                                       : poly::Poly{cplx(1.0)});

    cfg.seed = get_or<uint64_t>(j, "seed", 1);
    cfg.out_dir = get_or<std::string>(j, "out", "out");
    cfg.workers = get_or<int>(j, "workers", 1);
    if (cfg.workers < 1) throw ConfigError("workers must be positive");

    if (j.contains("tree")) {
        const json& jt = j["tree"];
        TreeConfig tc;
        tc.root = parse_complex(jt.at("root"));
        if (!jt.contains("base_curves") || !jt["base_curves"].is_array() ||
            jt["base_curves"].empty())
            throw ConfigError("tree.base_curves must be a non-empty list");
        tc.base_curves = jt["base_curves"];
        tc.depth = get_or<int>(jt, "depth", 12);
        tc.exhaustive_budget = get_or<int>(jt, "exhaustive_budget", 4096);
        tc.sample_per_level = get_or<int>(jt, "sample_per_level", 512);
        if (tc.depth < 1 || tc.exhaustive_budget < 1 || tc.sample_per_level < 1)
            throw ConfigError("tree budgets must be positive");
        cfg.tree = tc;
    }
    if (j.contains("chart")) {
        const json& jc = j["chart"];
        ChartConfig cc;
        if (jc.contains("q")) cc.q = parse_complex(jc["q"]);
        cc.period = get_or<int>(jc, "period", 1);
        cc.order = get_or<int>(jc, "order", 16);
        cc.max_period = get_or<int>(jc, "max_period", 16);
        if (cc.period < 1 || cc.order < 2 || cc.max_period < 1)
            throw ConfigError("chart parameters must be positive");
        cfg.chart = cc;
    }
    if (j.contains("good")) {
        const json& jg = j["good"];
        GoodPointParams gp;
        gp.r = get_or<double>(jg, "r", 0.5);
        gp.delta = get_or<double>(jg, "delta", 0.1);
        gp.kappa = get_or<double>(jg, "kappa", 0.5);
        gp.Delta = get_or<int>(jg, "Delta", 1);
        gp.n0 = get_or<int>(jg, "n0", 8);
        gp.validate();
        cfg.good = gp;
        cfg.good_horizon = get_or<int>(jg, "horizon", 50);
        if (cfg.good_horizon < 1) throw ConfigError("good.horizon must be positive");
    }
    if (j.contains("telescope")) {
        const json& jt = j["telescope"];
        TelescopeConfig tc;
        tc.k = get_or<int>(jt, "k", 10);
        tc.count = get_or<int>(jt, "count", 6);
        tc.min_len = get_or<int>(jt, "min_len", 12);
        if (tc.k < 1 || tc.count < 1 || tc.min_len < 1)
            throw ConfigError("telescope parameters must be positive");
        cfg.telescope = tc;
    }
    if (j.contains("census")) {
        const json& jc = j["census"];
        CensusConfig cc;
        cc.k = get_or<int>(jc, "k", 20);
        cc.E = get_or<int>(jc, "E", 16);
        cc.kappa = get_or<double>(jc, "kappa", 1.0);
        if (cc.k < 1 || cc.E < 1 || !(cc.kappa > 0.0))
            throw ConfigError("census parameters must be positive");
        cfg.census = cc;
    }
    if (j.contains("measure")) {
        const json& jm2 = j["measure"];
        MeasureConfig mc;
        mc.samples = get_or<size_t>(jm2, "samples", 100000);
        mc.burn_in = get_or<size_t>(jm2, "burn_in", 100);
        mc.h_mu = get_or<double>(jm2, "h_mu", std::log(double(cfg.map.degree)));
        if (mc.samples < 1) throw ConfigError("measure.samples must be positive");
        cfg.measure = mc;
    }
    if (j.contains("pesin")) {
        const json& jp = j["pesin"];
        PesinConfig pc;
        pc.lambda_slack = get_or<double>(jp, "lambda_slack", 0.1);
        pc.orbits = get_or<int>(jp, "orbits", 200);
        pc.orbit_len = get_or<int>(jp, "orbit_len", 24);
        pc.holdout = get_or<int>(jp, "holdout", 100);
        if (pc.orbits < 1 || pc.orbit_len < 1) throw ConfigError("pesin budgets must be positive");
        cfg.pesin = pc;
    }
    if (j.contains("density")) {
        const json& jd = j["density"];
        DensityConfig dc;
        dc.points = get_or<int>(jd, "points", 100);
        dc.horizon = get_or<int>(jd, "horizon", 40);
        dc.min_fraction = get_or<double>(jd, "min_fraction", 0.5);
        dc.use_basin_oracle = get_or<bool>(jd, "use_basin_oracle", true);
        if (dc.points < 1) throw ConfigError("density.points must be positive");
        cfg.density = dc;
    }
    if (j.contains("ray")) {
        const json& jr = j["ray"];
        RayConfig rc;
        rc.W = parse_domain(jr.at("W"), "ray.W");
        rc.W1 = parse_domain(jr.at("W1"), "ray.W1");
        rc.tau = get_or<double>(jr, "tau", M_PI / 2.0);
        if (jr.contains("start_angles")) {
            rc.start_angles.clear();
            for (const auto& a : jr["start_angles"]) rc.start_angles.push_back(a.get<double>());
        }
        rc.max_level = get_or<double>(jr, "max_level", 30.0);
        rc.basis_order = get_or<int>(jr, "basis_order", 14);
        if (!(rc.tau > 0.0 && rc.tau < M_PI)) throw ConfigError("ray.tau must lie in (0, pi)");
        if (rc.max_level <= 0.0 || rc.basis_order < 2)
            throw ConfigError("ray budgets must be positive");
        cfg.ray = rc;
    }
    cfg.plot_raster = get_or<int>(j, "plot_raster", 256);
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return from_json(j);
}

CodingTree build_tree(const RunConfig& cfg) {
    if (!cfg.tree) throw ConfigError("this command needs a 'tree' section");
    const TreeConfig& tc = *cfg.tree;

    std::vector<Curve> curves;
    for (const auto& jc : tc.base_curves) {
        std::string kind = jc.contains("kind") ? jc["kind"].get<std::string>() : "points";
        if (kind == "segment") {
            cplx to = parse_complex(jc.at("to"));
            curves.push_back(Curve::segment(tc.root, to, jc.contains("samples")
                                                             ? jc["samples"].get<int>()
                                                             : 33));
        } else if (kind == "arc") {
            cplx to = parse_complex(jc.at("to"));
            curves.push_back(Curve::spiral_arc(tc.root, to, jc.contains("samples")
                                                                ? jc["samples"].get<int>()
                                                                : 65));
        } else if (kind == "points") {
            Curve c;
            for (const auto& s : jc.at("points")) {
                if (!s.is_array() || s.size() != 3)
                    throw ConfigError("curve points must be [t, re, im] triples");
                c.ts.push_back(s[0].get<double>());
                c.pts.push_back(cplx(s[1].get<double>(), s[2].get<double>()));
            }
            curves.push_back(std::move(c));
        } else {
            throw ConfigError("unknown base curve kind: " + kind);
        }
    }

    TreeOptions opt;
    opt.exhaustive_budget = tc.exhaustive_budget;
    opt.sample_per_level = tc.sample_per_level;
    return CodingTree(cfg.map, tc.root, std::move(curves), opt);
}

std::string config_hash(const RunConfig& cfg) {
    std::string dump = cfg.raw.dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace gct
