#pragma once

#include <ostream>
#include <vector>

#include "orbitscale/orbits.hpp"

namespace orbitscale {

enum class ScalingKind { coupling, homogeneous, mixed };

const char* to_string(ScalingKind kind);

// An actively transformed orbit plus the exponent bookkeeping. The
// transformed trace is built by resampling the stored trace (never by
// re-running the orbit search) and then re-validated against the scaled
// equations of motion. measured_* are trace functionals; predicted_* are
// the exponent laws applied to the input orbit's invariants.
struct ScalingResult {
    ScalingKind kind = ScalingKind::coupling;
    double alpha = 1.0;
    double new_energy = 0.0;
    std::vector<double> new_couplings;
    double predicted_period = 0.0;
    double predicted_action = 0.0;
    double measured_period = 0.0;
    double measured_action = 0.0;
    double input_measured_period = 0.0;
    double input_measured_action = 0.0;
    double eom_residual = 0.0;     // worst relative defect of the scaled equations of motion
    double energy_residual = 0.0;  // worst relative drift off the scaled energy surface
    double gamma = 1.0;            // mixed scaling: field-strength ratio of the first varied term
    int anchor_index = -1;
    double period_factor = 1.0;    // exponent law applied to T
    double action_factor = 1.0;    // exponent law applied to S
    PeriodicOrbit transformed;

    // Residuals of the scaling laws, trace functional against trace functional.
    double period_law_residual() const;
    double action_law_residual() const;

    // Columns: alpha,E,lambda_0..,T_meas,T_pred,S_meas,S_pred,eom_residual,energy_residual
    void write_csv(std::ostream& out) const;
};

// Coupling-constant scaling: x(t) -> x0(alpha t), p -> alpha p0, with
// lambda -> alpha^2 lambda and E -> alpha^2 E. The configuration-space
// path is frozen.
ScalingResult scale_coupling(const PeriodicOrbit& orbit, double alpha);

// Dilation scaling of a homogeneous potential of degree nu:
// x -> alpha^2 x0(alpha^(nu-2) t), p -> alpha^nu p0, lambda fixed,
// E -> alpha^(2 nu) E.
ScalingResult scale_homogeneous(const PeriodicOrbit& orbit, double alpha);

// Mixed scaling: the anchor term's coupling is held fixed and drives the
// dilation with its degree nu1; every other coupling follows
// lambda_j -> alpha^(2(nu1 - nu_j)) lambda_j (deformable non-homogeneous
// terms are carried along as wrapped profiles instead).
ScalingResult scale_mixed(const PeriodicOrbit& orbit, double alpha, int anchor_index);

// Coupling-scale-invariant length of an orbit, S / sqrt(2 m |E|). Equals
// the geometric length for billiard paths and pi times the amplitude for
// the harmonic oscillator.
double characteristic_length(double action, double energy, double mass);

struct VirialReport {
    double residual = 0.0;           // |int lambda V dt - 2 E T/(nu+2)| / (|E| T)
    double legendre_residual = 0.0;  // |S/2E - (T - (1/E) int lambda V dt)| / T
    double mean_potential = 0.0;     // time average of lambda V over one period
};

VirialReport virial_report(const PeriodicOrbit& orbit);
double virial_residual(const PeriodicOrbit& orbit);

// Transmute a coupling into a length: x0 = |lambda|^(-1/(nu+2)) in units
// hbar^2 = 2m.
double transmute_length(double coupling, double degree);

enum class LociKind { oscillator, coulomb };

struct LociRow {
    double coupling = 0.0;
    int n = 0;
    double energy = 0.0;
    double scaled_energy = 0.0;  // E_n x0^2
};

// Energy-level loci over a coupling grid in units hbar = 1, 2m = 1. The
// oscillator coupling is identified with the squared frequency, so that
// E_n x0^2 = n + 1/2; for the attractive Coulomb coupling e^2,
// E_n x0^2 = -1/(4 n^2) independent of the coupling.
std::vector<LociRow> level_loci(LociKind kind, int n_max, const std::vector<double>& couplings);

void write_loci_csv(std::ostream& out, const std::vector<LociRow>& rows);

}  // namespace orbitscale
