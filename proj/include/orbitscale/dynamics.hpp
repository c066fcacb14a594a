#pragma once

#include "orbitscale/hamiltonian.hpp"
#include "orbitscale/trajectory.hpp"

namespace orbitscale {

struct IntegrateOptions {
    double escape_radius = 1e8;    // unbounded runs beyond this radius abort
    double wall_bisect_tol = 1e-13;  // crossing-time tolerance as a fraction of dt
};

// Velocity-Verlet integration of dx/dt = p/m, dp/dt = -grad V with
// specular reflection at hard walls (crossing time located by bisection,
// so billiard paths stay exactly polygonal between samples).
Trajectory integrate(const HamiltonianSpec& spec, const PhaseState& start, double dt,
                     long n_steps, const IntegrateOptions& options = {});

// Square-root (wave-equation) time reparametrization: same phase-space
// points, new stamps tau with dtau/dt = 2 sqrt(E). The configuration
// trace is untouched; only the clock changes.
Trajectory sqrt_reparametrize(const Trajectory& trajectory, double energy);

// Squared speed |dx/dtau|^2 along a reparametrized trajectory, computed
// by central differences in tau (endpoints use one-sided stencils).
std::vector<double> reparametrized_speed_squared(const Trajectory& trajectory);

}  // namespace orbitscale
