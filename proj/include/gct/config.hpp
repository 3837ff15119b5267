#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gct/good_points.hpp"
#include "gct/map.hpp"
#include "gct/polylike.hpp"
#include "gct/tree.hpp"

namespace gct {

using json = nlohmann::json;

struct TreeConfig {
    cplx root{0.0};
    json base_curves; // list of curve generators: segment / arc / points
    int depth = 12;
    int exhaustive_budget = 4096;
    int sample_per_level = 512;
};

struct ChartConfig {
    std::optional<cplx> q;
    int period = 1;
    int order = 16;
    int max_period = 16;
};

struct TelescopeConfig {
    int k = 10;
    int count = 6;
    int min_len = 12;
};

struct CensusConfig {
    int k = 20;
    int E = 16;
    double kappa = 1.0;
};

struct MeasureConfig {
    size_t samples = 100000;
    size_t burn_in = 100;
    double h_mu = 0.0; // supplied entropy for the Ruelle check
};

struct PesinConfig {
    double lambda_slack = 0.1;
    int orbits = 200;
    int orbit_len = 24;
    int holdout = 100;
};

struct DensityConfig {
    int points = 100;
    int horizon = 40;
    double min_fraction = 0.5;
    bool use_basin_oracle = true;
};

struct RayConfig {
    DomainSpec W = DomainSpec::disk(0.0, 4.0);
    DomainSpec W1 = DomainSpec::disk(0.0, 2.0);
    double tau = M_PI / 2.0;
    std::vector<double> start_angles = {0.0};
    double max_level = 30.0;
    int basis_order = 14;
};

struct RunConfig {
    uint64_t seed = 1;
    std::string out_dir = "out";
    int workers = 1;

    MapSpec map;
    std::optional<TreeConfig> tree;
    std::optional<ChartConfig> chart;
    std::optional<GoodPointParams> good;
    int good_horizon = 50;
    std::optional<TelescopeConfig> telescope;
    std::optional<CensusConfig> census;
    std::optional<MeasureConfig> measure;
    std::optional<PesinConfig> pesin;
    std::optional<DensityConfig> density;
    std::optional<RayConfig> ray;
    int plot_raster = 256;

    json raw; // canonical parsed form, used for hashing and round-trips

    static RunConfig from_json(const json& j);
    static RunConfig from_file(const std::string& path);
};

/// Builds the tree described by the config (root, generated base curves).
CodingTree build_tree(const RunConfig& cfg);

/// FNV-1a over the canonical dump of the raw config.
std::string config_hash(const RunConfig& cfg);

cplx parse_complex(const json& j);
json complex_to_json(cplx z);

} // namespace gct
