#pragma once

#include <ostream>
#include <vector>

#include "orbitscale/hamiltonian.hpp"

namespace orbitscale {

// Uniform-step phase-space history. `tau` holds wave-equation time
// stamps when a square-root reparametrization has been applied.
struct Trajectory {
    int dimension = 1;
    double dt = 0.0;
    std::vector<PhaseState> samples;
    std::vector<double> energy;  // H evaluated at each sample
    std::vector<double> tau;
    double energy0 = 0.0;
    double energy_drift = 0.0;       // max |H - energy0| over the run
    double drift_coefficient = 0.0;  // energy_drift / dt^2

    bool has_tau() const { return !tau.empty(); }
    std::size_t size() const { return samples.size(); }
    double duration() const { return samples.empty() ? 0.0 : samples.back().t - samples.front().t; }

    // Columns: t[,tau],x...,p...,H
    void write_csv(std::ostream& out) const;
};

}  // namespace orbitscale
