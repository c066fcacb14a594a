#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "orbitscale/orbits.hpp"
#include "orbitscale/qspec.hpp"

namespace orbitscale {

// Change of spectral variable in which the density-of-states oscillations
// become globally sinusoidal: omega = sqrt(E) for billiards and
// coupling-scaled families, |E/E0|^((nu+2)/2nu) for dilation families of
// degree nu, and the field-ratio power gamma^(-1/3) for scaled-field data.
struct ScaledVariableMap {
    enum class Kind { omega, homogeneous, gamma_field, raw_energy };
    Kind kind = Kind::omega;
    double degree = 0.0;   // nu (homogeneous)
    double e0 = 1.0;       // reference energy (homogeneous)

    static ScaledVariableMap omega();
    static ScaledVariableMap homogeneous(double nu, double e0);
    static ScaledVariableMap gamma_field();  // input values are field ratios
    static ScaledVariableMap raw_energy();
};

double map_variable(double value, const ScaledVariableMap& map);

struct Peak {
    double frequency = 0.0;  // conjugate of the scaled variable (angular)
    double amplitude = 0.0;
};

struct RecurrencePeaks {
    std::vector<double> s_grid;     // uniform
    std::vector<double> delta_rho;  // oscillatory density of states in s
    std::vector<Peak> peaks;        // sorted by frequency
    double bin_width = 0.0;         // 2 pi / (s range)
    double noise_floor = 0.0;       // median transform amplitude

    double grid_step() const;
    double total_power() const;  // integral of delta_rho^2
    const Peak* strongest() const;
    const Peak* nearest(double frequency) const;
    // Columns: s,delta_rho
    void write_dos_csv(std::ostream& out) const;
};

// Gaussian-broadened level density in the scaled variable minus a
// least-squares polynomial trend (the Weyl-like smooth part). sigma is
// the kernel width in s and must resolve the grid (sigma >= 2 h).
RecurrencePeaks oscillatory_dos(const SpectrumResult& spectrum, const ScaledVariableMap& map,
                                double sigma, int detrend_degree, int grid_n);

enum class WindowKind { hann, rect };

struct RecurrenceOptions {
    WindowKind window = WindowKind::hann;
    double threshold = 5.0;              // times the median amplitude
    double min_expected_frequency = 0.0; // when set, the window must span one period of it
};

// Windowed Fourier transform of delta_rho; local maxima above the noise
// threshold become peaks, refined by quadratic interpolation of the log
// amplitude.
RecurrencePeaks recurrence_spectrum(const RecurrencePeaks& osc,
                                    const RecurrenceOptions& options = {});

struct PeakMatch {
    double frequency = 0.0;
    double amplitude = 0.0;
    bool matched = false;
    std::string label;
    double predicted = 0.0;
    double rel_error = 0.0;
};

struct MatchReport {
    std::vector<PeakMatch> rows;
    int matched_count = 0;
    // Columns: frequency,amplitude,matched_label,predicted,rel_error
    void write_csv(std::ostream& out) const;
};

using FrequencyPredictions = std::vector<std::pair<std::string, double>>;

MatchReport match_orbits(const RecurrencePeaks& peaks, const FrequencyPredictions& predictions,
                         double tol);

// Predicted peak positions of catalog orbits in the given scaled
// variable: sqrt(2m) L / hbar in omega for billiard paths.
FrequencyPredictions catalog_frequencies(const OrbitCatalog& catalog,
                                         const ScaledVariableMap& map);

// Local period of the density-of-states oscillation in raw energy,
// 2 pi hbar / T.
double local_energy_period(const PeriodicOrbit& orbit);

}  // namespace orbitscale
