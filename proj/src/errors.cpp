#include "orbitscale/errors.hpp"

namespace orbitscale {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::contract_violation: return "contract violation";
        case ErrorKind::domain: return "domain error";
        case ErrorKind::numeric: return "numeric error";
        case ErrorKind::escape: return "escape error";
        case ErrorKind::orbit_structure: return "orbit-structure error";
        case ErrorKind::degeneracy: return "degeneracy error";
        case ErrorKind::family: return "family error";
        case ErrorKind::wrong_kind: return "wrong-kind error";
        case ErrorKind::singular_exponent: return "singular-exponent error";
        case ErrorKind::not_periodic: return "not-periodic error";
        case ErrorKind::resolution: return "resolution error";
        case ErrorKind::insufficient_data: return "insufficient-data error";
        case ErrorKind::map: return "map error";
        case ErrorKind::schema: return "schema violation";
    }
    return "error";
}

}  // namespace orbitscale
