#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "gct/runner.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir;
    int workers = 0;
    int depth = 0;
    int samples = 0;
    int horizon = 0;
};

int execute(const std::string& command, const CommonArgs& args) {
    gct::RunConfig cfg;
    try {
        cfg = gct::RunConfig::from_file(args.config_path);
        if (args.seed_set) cfg.seed = args.seed;
        if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
        if (args.workers > 0) cfg.workers = args.workers;
        if (args.depth > 0 && cfg.tree) cfg.tree->depth = args.depth;
        if (args.samples > 0 && cfg.measure) cfg.measure->samples = size_t(args.samples);
        if (args.horizon > 0) {
            cfg.good_horizon = args.horizon;
            if (cfg.density) cfg.density->horizon = args.horizon;
        }
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    gct::RunOutcome out = gct::run_command(command, cfg);
    if (out.exit_code == 2) {
        std::cerr << "error: " << out.error << "\n";
        return 2;
    }
    std::cout << out.report.dump() << "\n";
    return out.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric coding trees, accessibility checks, and ray tracing "
                 "for iterated holomorphic maps"};
    app.require_subcommand(1);

    // One subcommand runs per invocation, so a single argument block is shared.
    CommonArgs args;
    std::string chosen;

    auto add_common = [&](CLI::App* sub, const std::string& command) {
        sub->add_option("--config", args.config_path, "configuration file (JSON)")->required();
        sub->add_option("--seed", args.seed, "override the configured seed")
            ->each([&args](const std::string&) { args.seed_set = true; });
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--workers", args.workers, "worker count for parallel sections");
        sub->add_option("--depth", args.depth, "override the tree depth budget");
        sub->add_option("--samples", args.samples, "override the sample budget");
        sub->add_option("--horizon", args.horizon, "override the orbit horizon");
        sub->callback([&chosen, command]() { chosen = command; });
    };

    struct Entry {
        const char* group;
        const char* name;
        const char* command;
        const char* help;
    };
    const Entry entries[] = {
        {"tree", "build", "tree build", "build the tree and emit edge records"},
        {"tree", "diam", "tree diam", "per-level max edge diameters (CSV)"},
        {"access", "periodic", "access periodic", "periodic branch search at a repelling point"},
        {"access", "good", "access good", "good-time detection and telescope verdict"},
        {"telescope", "verify", "telescope verify", "build and re-check one telescope"},
        {"ray", "trace", "ray trace", "trace constant-angle rays of the level function"},
        {"measure", "lyapunov", "measure lyapunov", "backward-orbit sampling and exponent"},
        {"measure", "pesin", "measure pesin", "inverse-branch block estimation"},
        {"measure", "good-density", "measure good-density", "good-point fraction over atoms"},
        {nullptr, "plot", "plot", "SVG of the tree and its limit-set sample"},
    };

    std::map<std::string, CLI::App*> groups;
    for (const Entry& e : entries) {
        CLI::App* parent = &app;
        if (e.group) {
            auto it = groups.find(e.group);
            if (it == groups.end()) {
                parent = app.add_subcommand(e.group, "");
                parent->require_subcommand(1);
                groups[e.group] = parent;
            } else {
                parent = it->second;
            }
        }
        add_common(parent->add_subcommand(e.name, e.help), e.command);
    }

    CLI11_PARSE(app, argc, argv);
    if (chosen.empty()) {
        std::cerr << "no command selected\n";
        return 2;
    }
    return execute(chosen, args);
}
