#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace orbitscale {

struct ReportRow {
    std::string name;
    double predicted = 0.0;
    double measured = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

// Predicted-versus-measured summary with a machine-readable twin.
struct Report {
    std::vector<ReportRow> rows;

    void add(const std::string& name, double predicted, double measured, double residual,
             double tolerance);
    bool all_pass() const;
    void print(std::ostream& out) const;
    nlohmann::json to_json() const;
};

// Every run records the files it wrote and the invariants it computed.
struct Manifest {
    std::string task;
    nlohmann::json config;
    std::vector<std::string> files;
    nlohmann::json invariants;

    void write(const std::filesystem::path& dir);  // appends manifest.json to files
};

}  // namespace orbitscale
