#pragma once

#include <string>

#include "gct/config.hpp"
#include "gct/report.hpp"

namespace gct {

struct RunOutcome {
    int exit_code = 0; // 0 pass, 1 verdict failure, 2 error
    RunReport report;
    std::string error; // set when exit_code == 2
};

/// Dispatches one command: "tree build", "tree diam", "access periodic",
/// "access good", "telescope verify", "ray trace", "measure lyapunov",
/// "measure pesin", "measure good-density", "plot".  Writes the JSON report and
/// any CSV/SVG artifacts under the config's output directory.
RunOutcome run_command(const std::string& command, const RunConfig& cfg,
                       bool write_artifacts = true);

} // namespace gct
