#include "orbitscale/qspec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "orbitscale/parallel.hpp"

namespace orbitscale {

namespace {

constexpr double kPi = 3.14159265358979323846;

void put(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

void check_increasing(const std::vector<double>& levels) {
    for (std::size_t i = 1; i < levels.size(); ++i)
        require(levels[i] > levels[i - 1], ErrorKind::numeric,
                "spectrum is not strictly increasing");
}

// Eigenvalue counter for the symmetric tridiagonal matrix (diag d,
// off-diagonal e): negative pivots of the shifted LDL^T recurrence.
int sturm_count(const std::vector<double>& d, double off_sq, double x) {
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        q = (i == 0) ? d[0] - x : (d[i] - x) - off_sq / q;
        if (q == 0.0) q = -1e-300;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> sturm_lowest(const std::vector<double>& d, double off, int count) {
    double off_sq = off * off;
    double lo = d[0], hi = d[0];
    for (double v : d) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    lo -= 2.0 * std::abs(off) + 1.0;
    hi += 2.0 * std::abs(off) + 1.0;

    std::vector<double> levels(static_cast<std::size_t>(count));
    detail::parallel_for(static_cast<std::size_t>(count), [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            int k = static_cast<int>(idx) + 1;
            double a = lo, b = hi;
            for (int iter = 0; iter < 200; ++iter) {
                double mid = 0.5 * (a + b);
                if (sturm_count(d, off_sq, mid) >= k)
                    b = mid;
                else
                    a = mid;
                if (b - a <= 1e-14 * std::max(1.0, std::abs(mid))) break;
            }
            levels[idx] = 0.5 * (a + b);
        }
    });
    return levels;
}

std::vector<double> fd_levels_once(const HamiltonianSpec& spec, double x_lo, double x_hi,
                                   int grid_n, int count) {
    double h = (x_hi - x_lo) / grid_n;
    std::size_t interior = static_cast<std::size_t>(grid_n - 1);
    double kinetic = spec.hbar * spec.hbar / (2.0 * spec.mass * h * h);
    std::vector<double> diag(interior);
    for (std::size_t i = 0; i < interior; ++i) {
        Vec3 x{};
        x[0] = x_lo + h * static_cast<double>(i + 1);
        double v = spec.potential(x);
        require(std::isfinite(v), ErrorKind::numeric,
                "potential is singular at an interior grid point");
        diag[i] = 2.0 * kinetic + v;
    }
    return sturm_lowest(diag, -kinetic, count);
}

}  // namespace

void SpectrumResult::write_csv(std::ostream& out) const {
    out << "n,E_n,est_error\n";
    for (std::size_t i = 0; i < levels.size(); ++i) {
        out << i << ',';
        put(out, levels[i]);
        out << ',';
        put(out, i < est_error.size() ? est_error[i] : 0.0);
        out << '\n';
    }
}

SpectrumResult box_levels(double a, int count, double mass, double hbar) {
    require(a > 0.0 && mass > 0.0 && hbar > 0.0, ErrorKind::domain,
            "box parameters must be positive");
    require(count >= 1, ErrorKind::domain, "need at least one level");
    SpectrumResult out;
    double c = kPi * kPi * hbar * hbar / (2.0 * mass * a * a);
    for (int n = 1; n <= count; ++n) out.levels.push_back(c * n * n);
    check_increasing(out.levels);
    return out;
}

SpectrumResult rectangle_levels(double a, double b, int count, double mass, double hbar) {
    require(a > 0.0 && b > 0.0 && mass > 0.0 && hbar > 0.0, ErrorKind::domain,
            "rectangle parameters must be positive");
    require(count >= 1, ErrorKind::domain, "need at least one level");
    double c = kPi * kPi * hbar * hbar / (2.0 * mass);
    // Weyl estimate for the enumeration cutoff, padded and grown on demand.
    double area = a * b;
    double e_cut = 4.0 * kPi * (count + 16) * hbar * hbar / (2.0 * mass * area) * 1.5;
    std::vector<double> levels;
    while (true) {
        levels.clear();
        int p_max = static_cast<int>(a * std::sqrt(e_cut / c)) + 1;
        int q_max = static_cast<int>(b * std::sqrt(e_cut / c)) + 1;
        for (int p = 1; p <= p_max; ++p)
            for (int q = 1; q <= q_max; ++q) {
                double e = c * (p * p / (a * a) + q * q / (b * b));
                if (e <= e_cut) levels.push_back(e);
            }
        if (static_cast<int>(levels.size()) >= count) break;
        e_cut *= 2.0;
    }
    std::sort(levels.begin(), levels.end());
    levels.resize(static_cast<std::size_t>(count));
    SpectrumResult out;
    out.levels = std::move(levels);
    // Exactly degenerate pairs stay in the list one ulp apart, so the
    // multiplicity still shows up in the density of states.
    for (std::size_t i = 1; i < out.levels.size(); ++i)
        if (out.levels[i] <= out.levels[i - 1])
            out.levels[i] = std::nextafter(out.levels[i - 1], 1e308);
    check_increasing(out.levels);
    return out;
}

SpectrumResult oscillator_levels(double omega, int count, double hbar) {
    require(omega > 0.0 && hbar > 0.0, ErrorKind::domain, "oscillator parameters must be positive");
    require(count >= 1, ErrorKind::domain, "need at least one level");
    SpectrumResult out;
    for (int n = 0; n < count; ++n) out.levels.push_back((n + 0.5) * hbar * omega);
    check_increasing(out.levels);
    return out;
}

SpectrumResult coulomb_levels(double e2, int count, double mass, double hbar) {
    require(e2 > 0.0 && mass > 0.0 && hbar > 0.0, ErrorKind::domain,
            "Coulomb parameters must be positive");
    require(count >= 1, ErrorKind::domain, "need at least one level");
    SpectrumResult out;
    double c = mass * e2 * e2 / (2.0 * hbar * hbar);
    for (int n = 1; n <= count; ++n) out.levels.push_back(-c / (static_cast<double>(n) * n));
    check_increasing(out.levels);
    return out;
}

SpectrumResult analytic_spectrum(AnalyticKind kind, const AnalyticParams& params, int count) {
    switch (kind) {
        case AnalyticKind::box:
            return params.b > 0.0
                       ? rectangle_levels(params.a, params.b, count, params.mass, params.hbar)
                       : box_levels(params.a, count, params.mass, params.hbar);
        case AnalyticKind::oscillator:
            return oscillator_levels(params.omega, count, params.hbar);
        case AnalyticKind::coulomb:
            return coulomb_levels(params.e2, count, params.mass, params.hbar);
    }
    fail(ErrorKind::domain, "unknown analytic spectrum kind");
}

SpectrumResult fd_spectrum_1d(const HamiltonianSpec& spec, double x_lo, double x_hi, int grid_n,
                              int count) {
    spec.validate();
    require(spec.dimension == 1, ErrorKind::contract_violation,
            "finite-difference solver is one-dimensional");
    require(x_lo < x_hi, ErrorKind::domain, "interval must be ordered");
    require(count >= 1, ErrorKind::domain, "need at least one level");
    require(grid_n >= 8 * count, ErrorKind::resolution,
            "grid too coarse to resolve the requested levels (need grid_n >= 8 count)");
    if (spec.domain.kind == Domain::Kind::interval)
        require(spec.domain.bc == BoundaryCondition::dirichlet, ErrorKind::domain,
                "only Dirichlet walls are discretized");

    SpectrumResult out;
    out.solver = SpectrumSolver::finite_difference;
    out.grid_points = grid_n;
    out.levels = fd_levels_once(spec, x_lo, x_hi, grid_n, count);
    std::vector<double> coarse = fd_levels_once(spec, x_lo, x_hi, grid_n / 2, count);
    out.est_error.resize(out.levels.size());
    for (std::size_t i = 0; i < out.levels.size(); ++i)
        out.est_error[i] = std::abs(out.levels[i] - coarse[i]);
    check_increasing(out.levels);
    return out;
}

}  // namespace orbitscale
