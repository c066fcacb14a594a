#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "orbitscale/hamiltonian.hpp"

namespace orbitscale {

enum class SpectrumSolver { analytic, finite_difference };

struct SpectrumResult {
    std::vector<double> levels;  // strictly increasing
    SpectrumSolver solver = SpectrumSolver::analytic;
    int grid_points = 0;              // FD only
    std::vector<double> est_error;    // FD only: conservative Richardson bound per level

    int count() const { return static_cast<int>(levels.size()); }
    // Columns: n,E_n,est_error
    void write_csv(std::ostream& out) const;
};

SpectrumResult box_levels(double a, int count, double mass = 0.5, double hbar = 1.0);
// Rectangle levels carry two quantum numbers internally; the result is the
// sorted union.
SpectrumResult rectangle_levels(double a, double b, int count, double mass = 0.5,
                                double hbar = 1.0);
SpectrumResult oscillator_levels(double omega, int count, double hbar = 1.0);
SpectrumResult coulomb_levels(double e2, int count, double mass = 0.5, double hbar = 1.0);

enum class AnalyticKind { box, oscillator, coulomb };

struct AnalyticParams {
    double a = 1.0;
    double b = 0.0;  // nonzero: rectangle
    double omega = 1.0;
    double e2 = 1.0;
    double mass = 0.5;
    double hbar = 1.0;
};

SpectrumResult analytic_spectrum(AnalyticKind kind, const AnalyticParams& params, int count);

// Lowest `count` Dirichlet eigenvalues of the second-order central
// difference discretization of -(hbar^2/2m) d^2/dx^2 + V on [x_lo, x_hi],
// by Sturm-sequence bisection on the symmetric tridiagonal matrix. The
// per-level error bound is the raw Richardson difference against the
// half-resolution grid (roughly 3x the actual error).
SpectrumResult fd_spectrum_1d(const HamiltonianSpec& spec, double x_lo, double x_hi, int grid_n,
                              int count);

}  // namespace orbitscale
