#include "orbitscale/config.hpp"

#include <fstream>
#include <set>

namespace orbitscale {

namespace {

using nlohmann::json;

void reject_unknown(const json& object, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = object.begin(); it != object.end(); ++it)
        require(allowed.count(it.key()) > 0, ErrorKind::schema,
                "unknown key \"" + it.key() + "\" in " + where);
}

double number_at(const json& object, const std::string& key, const std::string& where) {
    require(object.contains(key), ErrorKind::schema, where + " requires \"" + key + "\"");
    require(object[key].is_number(), ErrorKind::schema,
            "\"" + key + "\" in " + where + " must be a number");
    return object[key].get<double>();
}

BoundaryCondition bc_from(const json& object, const std::string& where) {
    if (!object.contains("bc")) return BoundaryCondition::dirichlet;
    std::string bc = object["bc"].get<std::string>();
    if (bc == "dirichlet") return BoundaryCondition::dirichlet;
    if (bc == "neumann") return BoundaryCondition::neumann;
    fail(ErrorKind::schema, "unknown boundary condition \"" + bc + "\" in " + where);
}

}  // namespace

HamiltonianSpec hamiltonian_from_json(const nlohmann::json& j) {
    require(j.is_object(), ErrorKind::schema, "system config must be a JSON object");
    reject_unknown(j, {"schema", "mass", "hbar", "dimension", "terms", "domain"}, "system config");
    require(j.contains("schema"), ErrorKind::schema, "system config requires a \"schema\" field");
    require(j["schema"] == kSystemSchema, ErrorKind::schema,
            std::string("unsupported schema; expected \"") + kSystemSchema + "\"");

    HamiltonianSpec spec;
    if (j.contains("mass")) spec.mass = number_at(j, "mass", "system config");
    if (j.contains("hbar")) spec.hbar = number_at(j, "hbar", "system config");

    int inferred_dim = 1;
    if (j.contains("terms")) {
        require(j["terms"].is_array(), ErrorKind::schema, "\"terms\" must be an array");
        for (const auto& t : j["terms"]) {
            require(t.is_object(), ErrorKind::schema, "each term must be an object");
            reject_unknown(t, {"coupling", "degree", "shape"}, "potential term");
            require(t.contains("shape") && t["shape"].is_string(), ErrorKind::schema,
                    "each term requires a \"shape\" string");
            std::string shape = t["shape"].get<std::string>();
            double coupling = number_at(t, "coupling", "potential term");
            if (shape == "power") {
                double degree = number_at(t, "degree", "power term");
                spec.terms.push_back(power_term(coupling, degree));
            } else if (shape == "coulomb") {
                if (t.contains("degree"))
                    require(t["degree"].get<double>() == -1.0, ErrorKind::schema,
                            "the coulomb shape has degree -1");
                spec.terms.push_back(coulomb_term(coupling));
                inferred_dim = std::max(inferred_dim, 3);
            } else if (shape == "oscillator_xy") {
                if (t.contains("degree"))
                    require(t["degree"].get<double>() == 2.0, ErrorKind::schema,
                            "the oscillator_xy shape has degree 2");
                spec.terms.push_back(oscillator_xy_term(coupling));
                inferred_dim = std::max(inferred_dim, 2);
            } else {
                fail(ErrorKind::schema, "unknown shape \"" + shape + "\"");
            }
        }
    }

    if (j.contains("domain")) {
        const auto& d = j["domain"];
        require(d.is_object(), ErrorKind::schema, "\"domain\" must be an object");
        require(d.contains("kind") && d["kind"].is_string(), ErrorKind::schema,
                "domain requires a \"kind\" string");
        std::string kind = d["kind"].get<std::string>();
        if (kind == "unbounded") {
            reject_unknown(d, {"kind"}, "domain");
        } else if (kind == "interval") {
            reject_unknown(d, {"kind", "min", "max", "bc"}, "domain");
            spec.domain = Domain::interval(number_at(d, "min", "interval domain"),
                                           number_at(d, "max", "interval domain"),
                                           bc_from(d, "interval domain"));
        } else if (kind == "rectangle") {
            reject_unknown(d, {"kind", "a", "b", "bc"}, "domain");
            spec.domain = Domain::rectangle(number_at(d, "a", "rectangle domain"),
                                            number_at(d, "b", "rectangle domain"),
                                            bc_from(d, "rectangle domain"));
            inferred_dim = std::max(inferred_dim, 2);
        } else {
            fail(ErrorKind::schema, "unknown domain kind \"" + kind + "\"");
        }
    }

    spec.dimension = inferred_dim;
    if (j.contains("dimension")) {
        require(j["dimension"].is_number_integer(), ErrorKind::schema,
                "\"dimension\" must be an integer");
        int d = j["dimension"].get<int>();
        require(d >= (spec.domain.kind == Domain::Kind::rectangle ? 2 : 1) && d <= kMaxDim,
                ErrorKind::schema, "\"dimension\" out of range for this system");
        spec.dimension = d;
    }

    try {
        spec.validate();
    } catch (const Error& err) {
        fail(ErrorKind::schema, std::string("invalid system: ") + err.what());
    }
    return spec;
}

HamiltonianSpec load_system(const std::filesystem::path& file) {
    std::ifstream in(file);
    require(in.good(), ErrorKind::schema, "cannot open system file " + file.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& err) {
        fail(ErrorKind::schema, std::string("malformed JSON: ") + err.what());
    }
    return hamiltonian_from_json(j);
}

nlohmann::json hamiltonian_to_json(const HamiltonianSpec& spec) {
    nlohmann::json j;
    j["schema"] = kSystemSchema;
    j["mass"] = spec.mass;
    j["hbar"] = spec.hbar;
    j["dimension"] = spec.dimension;
    j["terms"] = nlohmann::json::array();
    for (const auto& term : spec.terms) {
        nlohmann::json t;
        t["shape"] = term.shape;
        t["coupling"] = term.coupling;
        t["degree"] = term.degree;
        j["terms"].push_back(t);
    }
    switch (spec.domain.kind) {
        case Domain::Kind::unbounded:
            j["domain"] = {{"kind", "unbounded"}};
            break;
        case Domain::Kind::interval:
            j["domain"] = {{"kind", "interval"},
                           {"min", spec.domain.lo[0]},
                           {"max", spec.domain.hi[0]},
                           {"bc", spec.domain.bc == BoundaryCondition::dirichlet ? "dirichlet"
                                                                                 : "neumann"}};
            break;
        case Domain::Kind::rectangle:
            j["domain"] = {{"kind", "rectangle"},
                           {"a", spec.domain.hi[0]},
                           {"b", spec.domain.hi[1]},
                           {"bc", spec.domain.bc == BoundaryCondition::dirichlet ? "dirichlet"
                                                                                 : "neumann"}};
            break;
    }
    return j;
}

}  // namespace orbitscale
