#pragma once

#include <stdexcept>
#include <string>

namespace orbitscale {

// Failure categories surfaced by the library. The CLI maps `schema` to
// exit code 2 and everything else to exit code 3.
enum class ErrorKind {
    contract_violation,
    domain,
    numeric,
    escape,
    orbit_structure,
    degeneracy,
    family,
    wrong_kind,
    singular_exponent,
    not_periodic,
    resolution,
    insufficient_data,
    map,
    schema,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
    if (!condition) fail(kind, message);
}

}  // namespace orbitscale
