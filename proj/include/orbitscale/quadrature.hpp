#pragma once

#include <vector>

namespace orbitscale::detail {

struct GaussLegendre {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

// Nodes/weights by Newton iteration on the Legendre polynomial; cached per order.
const GaussLegendre& gauss_legendre(int order);

}  // namespace orbitscale::detail
