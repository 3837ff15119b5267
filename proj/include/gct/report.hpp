#pragma once

#include <string>

#include "gct/config.hpp"

namespace gct {

/// Result of one CLI command: verdicts decide the exit status, tables carry the
/// numbers, file artifacts are listed for the caller.  Serialization is
/// deterministic given config and seed; wall time is the only field excluded
/// from determinism comparisons.
struct RunReport {
    int schema = 1;
    std::string command;
    std::string config_hash;
    uint64_t seed = 0;
    json verdicts = json::object();
    json tables = json::object();
    std::vector<std::string> warnings;
    std::vector<std::string> artifacts;
    double wall_ms = 0.0;

    bool all_verdicts_pass() const;
    json to_json(bool include_wall_time = true) const;
    std::string dump(bool include_wall_time = true) const;
};

/// Writes the report under <out_dir>/<command with spaces dashed>.json.
std::string write_report(const RunReport& rep, const std::string& out_dir);

} // namespace gct
