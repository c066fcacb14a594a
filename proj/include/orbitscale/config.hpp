#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "orbitscale/hamiltonian.hpp"

namespace orbitscale {

inline constexpr const char* kSystemSchema = "orbitscale/1";

// Strict parse: the versioned schema field is required and unknown keys
// are rejected everywhere.
HamiltonianSpec hamiltonian_from_json(const nlohmann::json& j);
HamiltonianSpec load_system(const std::filesystem::path& file);

nlohmann::json hamiltonian_to_json(const HamiltonianSpec& spec);

}  // namespace orbitscale
