#include "gct/report.hpp"

#include <filesystem>
#include <fstream>

#include "gct/error.hpp"

namespace gct {

bool RunReport::all_verdicts_pass() const {
    bool ok = true;
    for (auto it = verdicts.begin(); it != verdicts.end(); ++it)
        if (it.value().is_boolean()) ok = ok && it.value().get<bool>();
    return ok;
}

json RunReport::to_json(bool include_wall_time) const {
    json j;
    j["schema"] = schema;
    j["command"] = command;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["verdicts"] = verdicts;
    j["tables"] = tables;
    j["warnings"] = warnings;
    j["artifacts"] = artifacts;
    if (include_wall_time) j["wall_ms"] = wall_ms;
    return j;
}

std::string RunReport::dump(bool include_wall_time) const {
    return to_json(include_wall_time).dump(2);
}

std::string write_report(const RunReport& rep, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::string name = rep.command;
    for (char& c : name)
        if (c == ' ') c = '-';
    std::string path = out_dir + "/" + name + ".json";
    std::ofstream out(path);
    if (!out) throw Error("cannot write report to " + path);
    out << rep.dump() << "\n";
    return path;
}

} // namespace gct
