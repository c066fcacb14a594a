#pragma once

// Independent reference computations for the test suites. Everything here
// deliberately avoids the library's own numerical paths: RK4 instead of
// velocity Verlet, tanh-sinh instead of Gauss-Legendre with the sin^2
// substitution, Numerov shooting instead of Sturm bisection, and a direct
// slow transform instead of the FFT pipeline.

#include <functional>
#include <vector>

#include "orbitscale/hamiltonian.hpp"
#include "orbitscale/trajectory.hpp"

namespace oracles {

// Classic fixed-step RK4 on the full first-order system.
orbitscale::Trajectory rk4_reference(const orbitscale::HamiltonianSpec& spec,
                                     const orbitscale::PhaseState& start, double dt, long n_steps);

// Adaptive tanh-sinh quadrature on (a, b); integrable endpoint
// singularities are handled by the double-exponential substitution. The
// integrand receives (x, dist_a, dist_b) with the endpoint distances
// computed cancellation-free.
double tanh_sinh(const std::function<double(double, double, double)>& f, double a, double b,
                 double tol = 1e-13);

struct PeriodAction {
    double period = 0.0;
    double action = 0.0;
    double x_lo = 0.0;
    double x_hi = 0.0;
};

// Period and action of a 1D well orbit: turning points by plain bisection
// on a sampled bracket, then tanh-sinh quadrature of 2 int dx/v and
// 2 int p dx.
PeriodAction well_period_action(const orbitscale::HamiltonianSpec& spec, double energy);

// Lowest eigenvalue with `nodes` interior nodes of
// -(hbar^2/2m) psi'' + V psi = E psi with psi(a) = psi(b) = 0, by Numerov
// integration and node-counting bisection.
double numerov_level(const orbitscale::HamiltonianSpec& spec, double x_lo, double x_hi,
                     int grid_n, int nodes, double e_lo, double e_hi);

// Peak of the windowed direct transform 2|sum w f e^{-i nu s}|/sum w over
// a frequency scan, refined parabolically. Hann window.
double slow_dtft_peak(const std::vector<double>& s, const std::vector<double>& f, double nu_lo,
                      double nu_hi, int scan = 400);

// Kepler closed forms for V = -lambda/r (bound orbits, E < 0).
double kepler_semimajor(double lambda, double energy);
double kepler_period(double mass, double lambda, double energy);
double kepler_action(double mass, double lambda, double energy);

// Frozen well invariants for V = x^4, m = 1 (from 30-digit Beta-function
// evaluations): T(E) = T1 E^(-1/4), S(E) = S1 E^(3/4).
inline constexpr double kQuarticPeriodE1 = 3.7081493546027438;
inline constexpr double kQuarticActionE1 = 4.9441991394703251;

}  // namespace oracles
