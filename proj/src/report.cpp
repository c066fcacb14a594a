#include "orbitscale/report.hpp"

#include <cstdio>
#include <fstream>

namespace orbitscale {

void Report::add(const std::string& name, double predicted, double measured, double residual,
                 double tolerance) {
    rows.push_back({name, predicted, measured, residual, tolerance, residual <= tolerance});
}

bool Report::all_pass() const {
    for (const auto& row : rows)
        if (!row.pass) return false;
    return true;
}

void Report::print(std::ostream& out) const {
    if (rows.empty()) return;
    char buf[256];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%-40s predicted %-14.8g measured %-14.8g residual %-10.3g %s",
                      row.name.c_str(), row.predicted, row.measured, row.residual,
                      row.pass ? "PASS" : "FAIL");
        out << buf << '\n';
    }
}

nlohmann::json Report::to_json() const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& row : rows) {
        rows_json.push_back({{"name", row.name},
                             {"predicted", row.predicted},
                             {"measured", row.measured},
                             {"residual", row.residual},
                             {"tolerance", row.tolerance},
                             {"pass", row.pass}});
    }
    return {{"rows", rows_json}, {"all_pass", all_pass()}};
}

void Manifest::write(const std::filesystem::path& dir) {
    files.push_back("manifest.json");
    nlohmann::json j;
    j["schema"] = "orbitscale-manifest/1";
    j["task"] = task;
    j["config"] = config;
    j["files"] = files;
    j["invariants"] = invariants;
    std::ofstream out(dir / "manifest.json");
    out << j.dump(2) << '\n';
}

}  // namespace orbitscale
