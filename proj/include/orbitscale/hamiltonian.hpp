#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orbitscale/errors.hpp"

namespace orbitscale {

// Configuration-space dimension is capped at 3; every supported system
// (1D wells, rectangular billiards, central fields with a planar trap)
// fits, and fixed-size state keeps the integrator allocation-free.
inline constexpr int kMaxDim = 3;

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b, int dim);
double norm(const Vec3& a, int dim);

struct PhaseState {
    Vec3 x{};
    Vec3 p{};
    double t = 0.0;
    int dim = 1;

    static PhaseState line(double x, double p, double t = 0.0);
    static PhaseState planar(double x, double y, double px, double py, double t = 0.0);
    static PhaseState spatial(const Vec3& x, const Vec3& p, double t = 0.0);
    bool finite() const;
};

// One additive piece of the potential: coupling * profile(x).
// The profile is dimensionless; `degree` is the homogeneity exponent
// when `homogeneous` is set. `deformable` marks profiles that may be
// carried along a dilation family as profile_alpha(x) =
// alpha^(2 nu1) profile(alpha^-2 x) instead of a coupling rescale.
struct PotentialTerm {
    double coupling = 1.0;
    double degree = 0.0;
    bool homogeneous = true;
    bool deformable = false;
    std::string shape = "custom";
    std::function<double(const Vec3&, int)> value;
    std::function<Vec3(const Vec3&, int)> grad;
};

PotentialTerm power_term(double coupling, double degree);    // |x|^nu, 1D
PotentialTerm coulomb_term(double coupling);                 // -1/r profile, coupling = e^2
PotentialTerm oscillator_xy_term(double coupling);           // x^2 + y^2 (planar trap)

enum class BoundaryCondition { dirichlet, neumann };

struct Domain {
    enum class Kind { unbounded, interval, rectangle };
    Kind kind = Kind::unbounded;
    std::array<double, 2> lo{};
    std::array<double, 2> hi{};
    BoundaryCondition bc = BoundaryCondition::dirichlet;

    static Domain unbounded();
    static Domain interval(double lo, double hi, BoundaryCondition bc = BoundaryCondition::dirichlet);
    static Domain rectangle(double a, double b, BoundaryCondition bc = BoundaryCondition::dirichlet);
    int wall_count() const;
};

struct HamiltonianSpec {
    double mass = 0.5;  // default units: hbar = 1, 2m = 1
    double hbar = 1.0;
    int dimension = 1;
    std::vector<PotentialTerm> terms;
    Domain domain{};

    void validate() const;
    double potential(const Vec3& x) const;
    Vec3 force(const Vec3& x) const;  // -grad of the total potential
    bool single_degree(double* nu = nullptr) const;
};

double evaluate_energy(const HamiltonianSpec& spec, const PhaseState& state);

// Sampled checks behind the declared-term invariants: homogeneity under
// beta in {0.5, 2, 3} and gradient-vs-finite-difference agreement.
double homogeneity_residual(const PotentialTerm& term, int dim);
double gradient_residual(const PotentialTerm& term, int dim);

// Ready-made systems used across the test problems and the CLI.
HamiltonianSpec oscillator_system(double mass, double omega);            // V = (m omega^2 / 2) x^2
HamiltonianSpec power_system(double mass, double coupling, double degree);
HamiltonianSpec coulomb_system(double mass, double e2, int dimension = 3);
HamiltonianSpec diamagnetic_kepler_system(double mass, double e2, double omega);
HamiltonianSpec box_system(double a, double mass = 0.5, double hbar = 1.0);
HamiltonianSpec rectangle_system(double a, double b, double mass = 0.5, double hbar = 1.0);

}  // namespace orbitscale
