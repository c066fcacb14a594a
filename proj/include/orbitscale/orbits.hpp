#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "orbitscale/dynamics.hpp"
#include "orbitscale/hamiltonian.hpp"
#include "orbitscale/trajectory.hpp"

namespace orbitscale {

struct OrbitOptions {
    double trace_dt = 0.0;   // 0: period / 1e5
    // Node count balances truncation against turning-point rounding noise,
    // which the endpoint-clustered nodes amplify as n^2; 64 keeps smooth
    // wells at spectral accuracy with the noise floor near 1e-13.
    int quadrature_nodes = 64;
    double root_tol = 1e-12;  // turning-point tolerance, relative to the length scale
};

// A closed classical orbit with its invariants. `action` and `period`
// come from turning-point quadrature for 1D wells (spectrally accurate)
// and from the stored trace for integration-built orbits; the measured_*
// accessors always evaluate the discrete trace functionals.
struct PeriodicOrbit {
    HamiltonianSpec spec;
    double energy = 0.0;
    double period = 0.0;       // T
    double action = 0.0;       // S = loop integral of p.dx
    double arclength = 0.0;    // geometric length of the closed path
    double time_action = 0.0;  // R = S - E T (Lagrangian loop integral)
    double closure_residual = 0.0;
    double x_max = 0.0;
    std::optional<std::array<double, 2>> turning_points;  // 1D wells
    Trajectory trace;

    double measured_period() const;
    double measured_action() const;       // periodic trapezoid of |p|^2/m dt
    double measured_arclength() const;
    double measured_mean_potential() const;  // (1/T) integral of the potential over one period
};

PeriodicOrbit find_orbit_1d(const HamiltonianSpec& spec, double energy,
                            const OrbitOptions& options = {});

// Package an integrated one-period trajectory as a PeriodicOrbit,
// measuring all invariants from the trace.
PeriodicOrbit orbit_from_trajectory(const HamiltonianSpec& spec, const Trajectory& trace,
                                    double energy);

// Integrate from `start` until the trajectory first returns to the
// section through the start point normal to the initial velocity, and
// refine the return time. Used for closed orbits known from symmetry
// (Kepler ellipses, circular orbits in central fields).
double find_first_return_period(const HamiltonianSpec& spec, const PhaseState& start, double dt,
                                double t_max);

PeriodicOrbit orbit_from_integration(const HamiltonianSpec& spec, const PhaseState& start,
                                     double period, long n_steps);

// Circular orbit in the z = 0 plane of a centrally attractive in-plane
// force, launched at the given radius with the balancing tangential
// momentum; the period is measured by first return.
PeriodicOrbit circular_orbit(const HamiltonianSpec& spec, double radius, long n_steps = 200000);

struct CatalogEntry {
    std::string label;
    double length = 0.0;
    double action_at(double energy, double mass) const;  // sqrt(2 m E) L
    double period_at(double energy, double mass) const;  // sqrt(m / 2E) L
};

struct OrbitCatalog {
    double mass = 0.5;
    double hbar = 1.0;
    std::vector<CatalogEntry> entries;  // sorted by length, unique labels

    // Columns: label,L,S_at_E0,T_at_E0,E0
    void write_csv(std::ostream& out, double e0) const;
};

// Closed straight-line paths of a rectangular billiard (or a 1D box when
// b is absent): lengths 2 sqrt((p a)^2 + (q b)^2) over integer pairs up
// to n_max, repetitions included, duplicates by length merged.
OrbitCatalog rectangle_orbit_lengths(double a, std::optional<double> b, int n_max,
                                     double mass = 0.5, double hbar = 1.0);

struct OrbitInvariants {
    double action = 0.0;
    double period = 0.0;
    double arclength = 0.0;
    double time_action = 0.0;
};

OrbitInvariants orbit_invariants(const PeriodicOrbit& orbit);

struct DsDeReport {
    double ds_de = 0.0;
    double period = 0.0;
    double residual = 0.0;  // |dS/dE - T| / T
};

// Central-difference check of the action-period theorem dS/dE = T on a
// constant-coupling orbit family.
DsDeReport ds_de_check(const HamiltonianSpec& spec, double energy, double delta,
                       const OrbitOptions& options = {});

}  // namespace orbitscale
