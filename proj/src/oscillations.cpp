#include "orbitscale/oscillations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>

#include <fftw3.h>

namespace orbitscale {

namespace {

constexpr double kPi = 3.14159265358979323846;

void put(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

// Least-squares fit in a Chebyshev basis over the mapped grid; low degrees
// only, so normal equations with Cholesky are plenty stable.
std::vector<double> detrend(const std::vector<double>& values, int degree) {
    std::size_t n = values.size();
    int m = degree + 1;
    std::vector<double> basis(static_cast<std::size_t>(m) * n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = n > 1 ? 2.0 * static_cast<double>(i) / (n - 1) - 1.0 : 0.0;
        double* col = basis.data() + i * m;
        col[0] = 1.0;
        if (m > 1) col[1] = t;
        for (int j = 2; j < m; ++j) col[j] = 2.0 * t * col[j - 1] - col[j - 2];
    }
    std::vector<double> ata(static_cast<std::size_t>(m) * m, 0.0), atb(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* col = basis.data() + i * m;
        for (int r = 0; r < m; ++r) {
            atb[r] += col[r] * values[i];
            for (int c = r; c < m; ++c) ata[static_cast<std::size_t>(r) * m + c] += col[r] * col[c];
        }
    }
    // Cholesky solve of the symmetric system.
    std::vector<double> chol(ata);
    for (int r = 0; r < m; ++r) {
        for (int c = r; c < m; ++c) {
            double sum = chol[static_cast<std::size_t>(r) * m + c];
            for (int k = 0; k < r; ++k)
                sum -= chol[static_cast<std::size_t>(k) * m + r] * chol[static_cast<std::size_t>(k) * m + c];
            if (r == c) {
                require(sum > 0.0, ErrorKind::numeric, "detrend normal equations not positive");
                chol[static_cast<std::size_t>(r) * m + c] = std::sqrt(sum);
            } else {
                chol[static_cast<std::size_t>(r) * m + c] = sum / chol[static_cast<std::size_t>(r) * m + r];
            }
        }
    }
    std::vector<double> y(atb);
    for (int r = 0; r < m; ++r) {
        for (int k = 0; k < r; ++k) y[r] -= chol[static_cast<std::size_t>(k) * m + r] * y[k];
        y[r] /= chol[static_cast<std::size_t>(r) * m + r];
    }
    for (int r = m - 1; r >= 0; --r) {
        for (int k = r + 1; k < m; ++k) y[r] -= chol[static_cast<std::size_t>(r) * m + k] * y[k];
        y[r] /= chol[static_cast<std::size_t>(r) * m + r];
    }
    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* col = basis.data() + i * m;
        double fit = 0.0;
        for (int j = 0; j < m; ++j) fit += y[j] * col[j];
        residual[i] = values[i] - fit;
    }
    return residual;
}

std::mutex fftw_mutex;  // plan creation is not thread-safe

std::vector<double> amplitude_spectrum(const std::vector<double>& signal) {
    int n = static_cast<int>(signal.size());
    std::vector<double> padded(signal);
    std::vector<fftw_complex> out(static_cast<std::size_t>(n) / 2 + 1);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_plan plan = fftw_plan_dft_r2c_1d(n, padded.data(), out.data(), FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    std::vector<double> amp(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) amp[k] = std::hypot(out[k][0], out[k][1]);
    return amp;
}

}  // namespace

ScaledVariableMap ScaledVariableMap::omega() { return {Kind::omega, 0.0, 1.0}; }

ScaledVariableMap ScaledVariableMap::homogeneous(double nu, double e0) {
    require(nu != 0.0 && nu != -2.0, ErrorKind::singular_exponent,
            "degrees 0 and -2 admit no scaled variable");
    require(e0 != 0.0, ErrorKind::domain, "reference energy must be nonzero");
    return {Kind::homogeneous, nu, e0};
}

ScaledVariableMap ScaledVariableMap::gamma_field() { return {Kind::gamma_field, 0.0, 1.0}; }

ScaledVariableMap ScaledVariableMap::raw_energy() { return {Kind::raw_energy, 0.0, 1.0}; }

double map_variable(double value, const ScaledVariableMap& map) {
    switch (map.kind) {
        case ScaledVariableMap::Kind::omega:
            require(value > 0.0, ErrorKind::domain, "omega map needs E > 0");
            return std::sqrt(value);
        case ScaledVariableMap::Kind::homogeneous: {
            require(value * map.e0 > 0.0, ErrorKind::domain,
                    "homogeneous map needs E on the same side of zero as E0");
            double exponent = (map.degree + 2.0) / (2.0 * map.degree);
            return std::pow(std::abs(value / map.e0), exponent);
        }
        case ScaledVariableMap::Kind::gamma_field:
            require(value > 0.0, ErrorKind::domain, "field ratio must be positive");
            return std::pow(value, -1.0 / 3.0);
        case ScaledVariableMap::Kind::raw_energy:
            return value;
    }
    fail(ErrorKind::domain, "unknown scaled-variable map");
}

double RecurrencePeaks::grid_step() const {
    return s_grid.size() > 1 ? s_grid[1] - s_grid[0] : 0.0;
}

double RecurrencePeaks::total_power() const {
    double p = 0.0;
    for (double v : delta_rho) p += v * v;
    return p * grid_step();
}

const Peak* RecurrencePeaks::strongest() const {
    const Peak* best = nullptr;
    for (const auto& p : peaks)
        if (!best || p.amplitude > best->amplitude) best = &p;
    return best;
}

const Peak* RecurrencePeaks::nearest(double frequency) const {
    const Peak* best = nullptr;
    for (const auto& p : peaks)
        if (!best || std::abs(p.frequency - frequency) < std::abs(best->frequency - frequency))
            best = &p;
    return best;
}

void RecurrencePeaks::write_dos_csv(std::ostream& out) const {
    out << "s,delta_rho\n";
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        put(out, s_grid[i]);
        out << ',';
        put(out, delta_rho[i]);
        out << '\n';
    }
}

RecurrencePeaks oscillatory_dos(const SpectrumResult& spectrum, const ScaledVariableMap& map,
                                double sigma, int detrend_degree, int grid_n) {
    require(spectrum.count() >= 50, ErrorKind::insufficient_data,
            "need at least 50 levels for a meaningful oscillation analysis");
    require(grid_n >= 64, ErrorKind::domain, "grid too small");
    require(detrend_degree >= 0 && detrend_degree <= 12, ErrorKind::domain,
            "detrend degree out of range");

    std::vector<double> s(spectrum.levels.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = map_variable(spectrum.levels[i], map);
    // Monotone up to ties; degenerate levels may map onto one s value.
    bool increasing = s.back() > s.front();
    for (std::size_t i = 1; i < s.size(); ++i)
        require(increasing ? s[i] >= s[i - 1] : s[i] <= s[i - 1], ErrorKind::map,
                "scaled variable is not monotone over the spectrum");
    if (!increasing) std::reverse(s.begin(), s.end());
    require(s.back() > s.front(), ErrorKind::map, "scaled variable collapses the spectrum");

    double s_min = s.front(), s_max = s.back();
    double h = (s_max - s_min) / (grid_n - 1);
    require(sigma >= 2.0 * h, ErrorKind::domain,
            "kernel width must cover at least two grid steps");
    require(sigma <= 0.25 * (s_max - s_min), ErrorKind::domain,
            "kernel width would smooth away the whole window");

    RecurrencePeaks out;
    out.s_grid.resize(static_cast<std::size_t>(grid_n));
    for (int i = 0; i < grid_n; ++i) out.s_grid[static_cast<std::size_t>(i)] = s_min + h * i;
    out.bin_width = 2.0 * kPi / (s_max - s_min);

    std::vector<double> rho(static_cast<std::size_t>(grid_n), 0.0);
    double inv_norm = 1.0 / (sigma * std::sqrt(2.0 * kPi));
    double half_width = 8.5 * sigma;
    for (double sn : s) {
        int lo = std::max(0, static_cast<int>(std::ceil((sn - half_width - s_min) / h)));
        int hi = std::min(grid_n - 1, static_cast<int>(std::floor((sn + half_width - s_min) / h)));
        for (int i = lo; i <= hi; ++i) {
            double z = (out.s_grid[static_cast<std::size_t>(i)] - sn) / sigma;
            rho[static_cast<std::size_t>(i)] += inv_norm * std::exp(-0.5 * z * z);
        }
    }
    out.delta_rho = detrend(rho, detrend_degree);
    return out;
}

RecurrencePeaks recurrence_spectrum(const RecurrencePeaks& osc, const RecurrenceOptions& options) {
    require(!osc.delta_rho.empty(), ErrorKind::domain, "oscillatory density not populated");
    std::size_t n = osc.delta_rho.size();
    double h = osc.grid_step();
    double s_range = h * static_cast<double>(n - 1);
    if (options.min_expected_frequency > 0.0)
        require(s_range >= 2.0 * kPi / options.min_expected_frequency, ErrorKind::resolution,
                "window shorter than one period of the expected fundamental");

    std::vector<double> windowed(n);
    double w_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double w = 1.0;
        if (options.window == WindowKind::hann)
            w = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / (n - 1));
        windowed[i] = osc.delta_rho[i] * w;
        w_sum += w;
    }
    std::vector<double> amp = amplitude_spectrum(windowed);
    // Amplitude normalization: a pure sinusoid of unit amplitude reads 1.
    for (double& a : amp) a *= 2.0 / w_sum;

    std::vector<double> sorted(amp.begin() + 1, amp.end());
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2),
                     sorted.end());
    double median = sorted[sorted.size() / 2];
    double max_amp = *std::max_element(amp.begin() + 1, amp.end());
    // The 1e-9 max-relative term only suppresses double-precision dust in
    // noise-free synthetic spectra.
    double threshold = std::max(options.threshold * median, 1e-9 * max_amp);

    RecurrencePeaks out = osc;
    out.noise_floor = median;
    double freq_step = 2.0 * kPi / (static_cast<double>(n) * h);
    for (std::size_t k = 2; k + 1 < amp.size(); ++k) {
        if (amp[k] <= threshold) continue;
        if (!(amp[k] > amp[k - 1] && amp[k] >= amp[k + 1])) continue;
        double la = std::log(std::max(amp[k - 1], 1e-300));
        double lb = std::log(amp[k]);
        double lc = std::log(std::max(amp[k + 1], 1e-300));
        double denom = la - 2.0 * lb + lc;
        double shift = denom < 0.0 ? 0.5 * (la - lc) / denom : 0.0;
        if (!(shift > -1.0 && shift < 1.0)) shift = 0.0;
        out.peaks.push_back({(static_cast<double>(k) + shift) * freq_step, amp[k]});
    }
    return out;
}

void MatchReport::write_csv(std::ostream& out) const {
    out << "frequency,amplitude,matched_label,predicted,rel_error\n";
    for (const auto& row : rows) {
        put(out, row.frequency);
        out << ',';
        put(out, row.amplitude);
        out << ',' << (row.matched ? row.label : "unmatched") << ',';
        put(out, row.matched ? row.predicted : 0.0);
        out << ',';
        put(out, row.matched ? row.rel_error : 0.0);
        out << '\n';
    }
}

MatchReport match_orbits(const RecurrencePeaks& peaks, const FrequencyPredictions& predictions,
                         double tol) {
    MatchReport report;
    for (const auto& peak : peaks.peaks) {
        PeakMatch row;
        row.frequency = peak.frequency;
        row.amplitude = peak.amplitude;
        const std::pair<std::string, double>* best = nullptr;
        for (const auto& pred : predictions)
            if (!best || std::abs(peak.frequency - pred.second) < std::abs(peak.frequency - best->second))
                best = &pred;
        if (best && std::abs(peak.frequency - best->second) <= tol) {
            row.matched = true;
            row.label = best->first;
            row.predicted = best->second;
            row.rel_error = std::abs(peak.frequency - best->second) / std::abs(best->second);
            ++report.matched_count;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

FrequencyPredictions catalog_frequencies(const OrbitCatalog& catalog,
                                         const ScaledVariableMap& map) {
    require(map.kind == ScaledVariableMap::Kind::omega, ErrorKind::map,
            "catalog predictions are defined in the omega variable");
    FrequencyPredictions out;
    double factor = std::sqrt(2.0 * catalog.mass) / catalog.hbar;
    for (const auto& entry : catalog.entries) out.emplace_back(entry.label, factor * entry.length);
    return out;
}

double local_energy_period(const PeriodicOrbit& orbit) {
    require(orbit.period > 0.0, ErrorKind::contract_violation, "orbit period must be positive");
    return 2.0 * kPi * orbit.spec.hbar / orbit.period;
}

}  // namespace orbitscale
