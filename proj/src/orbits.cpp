#include "orbitscale/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "orbitscale/quadrature.hpp"

namespace orbitscale {

namespace {

double potential_1d(const HamiltonianSpec& spec, double x) {
    Vec3 v{};
    v[0] = x;
    return spec.potential(v);
}

double potential_slope_1d(const HamiltonianSpec& spec, double x) {
    Vec3 v{};
    v[0] = x;
    Vec3 f = spec.force(v);
    return -f[0];
}

struct Well {
    double x_lo = 0.0;
    double x_hi = 0.0;
};

// Bracket and polish the two classical turning points of a single well.
Well locate_turning_points(const HamiltonianSpec& spec, double energy, double root_tol) {
    constexpr int kScanSamples = 8192;
    double radius = 1.0;
    const double radius_max = 1e8;

    while (true) {
        std::vector<double> xs(kScanSamples + 1), us(kScanSamples + 1);
        for (int i = 0; i <= kScanSamples; ++i) {
            xs[i] = -radius + 2.0 * radius * i / kScanSamples;
            us[i] = potential_1d(spec, xs[i]);
        }
        int i_min = 0;
        for (int i = 1; i <= kScanSamples; ++i)
            if (us[i] < us[i_min]) i_min = i;

        double u_min = us[i_min];
        double scale = std::max(1.0, std::abs(energy));
        if (!(u_min < energy)) {
            if (std::abs(u_min - energy) <= 1e-12 * scale)
                fail(ErrorKind::degeneracy,
                     "energy sits at a potential extremum; the orbit degenerates to a point");
            if (radius < radius_max) {
                radius *= 8.0;
                continue;
            }
            fail(ErrorKind::orbit_structure, "no classically allowed region found");
        }

        // March outward from the minimum to bracket the two roots of U(x) = E.
        int hi_idx = -1, lo_idx = -1;
        for (int i = i_min; i < kScanSamples; ++i)
            if (us[i + 1] >= energy) {
                hi_idx = i;
                break;
            }
        for (int i = i_min; i > 0; --i)
            if (us[i - 1] >= energy) {
                lo_idx = i;
                break;
            }
        if (hi_idx < 0 || lo_idx <= 0) {
            if (radius < radius_max) {
                radius *= 8.0;
                continue;
            }
            fail(ErrorKind::orbit_structure, "the well is not bounded at this energy");
        }

        // The precondition is exactly two simple roots over the whole line;
        // count transitions of the classically-allowed predicate so that
        // roots landing exactly on scan samples are still seen.
        int crossings = 0;
        for (int i = 0; i < kScanSamples; ++i)
            if ((us[i] < energy) != (us[i + 1] < energy)) ++crossings;
        if (crossings != 2) {
            // Distinguish a separatrix (energy at an interior extremum,
            // merged orbit families) from a plain multi-well bracket.
            for (int i = 1; i < kScanSamples; ++i)
                if (std::abs(us[i] - energy) <= 1e-9 * scale && us[i - 1] < us[i] &&
                    us[i] >= us[i + 1])
                    fail(ErrorKind::degeneracy,
                         "energy sits at a potential maximum (separatrix); orbit families merge");
            fail(ErrorKind::orbit_structure,
                 "the energy line must cross the potential exactly twice (found " +
                     std::to_string(crossings) + " crossings)");
        }

        auto polish = [&](double a, double b) {
            // Bisect to a coarse bracket, then Newton to machine precision;
            // the quadrature accuracy hinges on exact turning points. The
            // guard is one bracket width wider than the bracket so Newton
            // may settle on a root sitting exactly at a bracket edge.
            double guard_lo = a - (b - a), guard_hi = b + (b - a);
            double fa = potential_1d(spec, a) - energy;
            while (b - a > 1e-6 * std::max(1.0, std::abs(a) + std::abs(b))) {
                double mid = 0.5 * (a + b);
                double fm = potential_1d(spec, mid) - energy;
                if ((fa < 0) == (fm < 0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            double x = 0.5 * (a + b);
            bool newton_ok = false;
            for (int iter = 0; iter < 60; ++iter) {
                double f = potential_1d(spec, x) - energy;
                double df = potential_slope_1d(spec, x);
                if (df == 0.0) break;
                double step = f / df;
                double xn = x - step;
                if (xn < guard_lo || xn > guard_hi) break;
                x = xn;
                if (std::abs(step) <= 4e-16 * std::max(1.0, std::abs(x))) {
                    newton_ok = true;
                    break;
                }
            }
            if (!newton_ok) {
                // Fall back to full bisection when Newton cannot converge.
                while (b - a > root_tol * std::max(1.0, std::abs(a) + std::abs(b))) {
                    double mid = 0.5 * (a + b);
                    double fm = potential_1d(spec, mid) - energy;
                    if ((fa < 0) == (fm < 0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                x = 0.5 * (a + b);
            }
            return x;
        };

        Well well;
        well.x_lo = polish(xs[lo_idx - 1], xs[lo_idx]);
        well.x_hi = polish(xs[hi_idx], xs[hi_idx + 1]);

        double span = well.x_hi - well.x_lo;
        require(span > 1e-10 * std::max(1.0, std::abs(well.x_lo) + std::abs(well.x_hi)),
                ErrorKind::degeneracy, "turning points merged; the orbit family is degenerate");
        double slope_scale = std::max(1.0, std::abs(energy)) / span;
        for (double xt : {well.x_lo, well.x_hi})
            require(std::abs(potential_slope_1d(spec, xt)) > 1e-8 * slope_scale,
                    ErrorKind::degeneracy,
                    "turning point coincides with a potential extremum (separatrix)");
        return well;
    }
}

struct WellInvariants {
    Well well;
    double period = 0.0;
    double action = 0.0;
};

WellInvariants quadrature_invariants(const HamiltonianSpec& spec, double energy,
                                     const OrbitOptions& options) {
    WellInvariants out;
    out.well = locate_turning_points(spec, energy, options.root_tol);
    double span = out.well.x_hi - out.well.x_lo;

    // The turning points carry rounding-level residuals E - U(x_pm); blend
    // them out linearly in the substitution parameter so the integrand
    // vanishes exactly at both endpoints. Without this the inverse square
    // root picks up an O(sqrt(eps)) boundary-layer error.
    double defect_lo = energy - potential_1d(spec, out.well.x_lo);
    double defect_hi = energy - potential_1d(spec, out.well.x_hi);

    const auto& gl = detail::gauss_legendre(options.quadrature_nodes);
    const double half_pi = 1.57079632679489661923;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        // x = x_lo + span sin^2(theta) removes the inverse-square-root
        // turning-point singularity analytically.
        double theta = half_pi * 0.5 * (gl.nodes[i] + 1.0);
        double w = half_pi * 0.5 * gl.weights[i];
        double s2 = std::sin(theta);
        s2 *= s2;
        double x = out.well.x_lo + span * s2;
        double dxdtheta = span * std::sin(2.0 * theta);
        double e_minus_u = (energy - potential_1d(spec, x)) -
                           (defect_lo * (1.0 - s2) + defect_hi * s2);
        require(e_minus_u > 0.0, ErrorKind::numeric,
                "quadrature node fell outside the classically allowed region");
        out.period += w * dxdtheta * std::sqrt(spec.mass / (2.0 * e_minus_u));
        out.action += w * dxdtheta * std::sqrt(2.0 * spec.mass * e_minus_u);
    }
    out.period *= 2.0;
    out.action *= 2.0;
    return out;
}

double closure_of(const Trajectory& trace) {
    if (trace.samples.size() < 2) return 0.0;
    int d = trace.dimension;
    double x_scale = 0.0, p_scale = 0.0;
    for (const auto& s : trace.samples) {
        x_scale = std::max(x_scale, norm(s.x, d));
        p_scale = std::max(p_scale, norm(s.p, d));
    }
    x_scale = std::max(x_scale, 1e-300);
    p_scale = std::max(p_scale, 1e-300);
    const auto& first = trace.samples.front();
    const auto& last = trace.samples.back();
    double sum = 0.0;
    for (int k = 0; k < d; ++k) {
        double dx = (last.x[k] - first.x[k]) / x_scale;
        double dp = (last.p[k] - first.p[k]) / p_scale;
        sum += dx * dx + dp * dp;
    }
    return std::sqrt(sum);
}

double max_radius_of(const Trajectory& trace) {
    double m = 0.0;
    for (const auto& s : trace.samples) m = std::max(m, norm(s.x, trace.dimension));
    return m;
}

void put(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

}  // namespace

double PeriodicOrbit::measured_period() const { return trace.duration(); }

double PeriodicOrbit::measured_action() const {
    // Loop integral of p.dx as the periodic trapezoid of |p|^2/m over one
    // period; spectrally accurate for smooth closed orbits.
    const auto& s = trace.samples;
    if (s.size() < 2) return 0.0;
    int d = trace.dimension;
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        double f = dot(s[i].p, s[i].p, d) / spec.mass;
        double w = (i == 0 || i + 1 == s.size()) ? 0.5 : 1.0;
        sum += w * f;
    }
    return sum * trace.dt;
}

double PeriodicOrbit::measured_arclength() const {
    const auto& s = trace.samples;
    int d = trace.dimension;
    double len = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        double seg = 0.0;
        for (int k = 0; k < d; ++k) {
            double dx = s[i].x[k] - s[i - 1].x[k];
            seg += dx * dx;
        }
        len += std::sqrt(seg);
    }
    return len;
}

double PeriodicOrbit::measured_mean_potential() const {
    const auto& s = trace.samples;
    if (s.size() < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        double w = (i == 0 || i + 1 == s.size()) ? 0.5 : 1.0;
        sum += w * spec.potential(s[i].x);
    }
    return sum * trace.dt / trace.duration();
}

PeriodicOrbit find_orbit_1d(const HamiltonianSpec& spec, double energy,
                            const OrbitOptions& options) {
    spec.validate();
    require(spec.dimension == 1, ErrorKind::contract_violation,
            "turning-point orbit search is one-dimensional");
    require(std::isfinite(energy), ErrorKind::domain, "energy must be finite");
    require(!spec.terms.empty(), ErrorKind::orbit_structure,
            "free motion on the line has no closed orbits");

    WellInvariants inv = quadrature_invariants(spec, energy, options);
    double span = inv.well.x_hi - inv.well.x_lo;

    PeriodicOrbit orbit;
    orbit.spec = spec;
    orbit.energy = energy;
    orbit.period = inv.period;
    orbit.action = inv.action;
    orbit.arclength = 2.0 * span;
    orbit.time_action = inv.action - energy * inv.period;
    orbit.turning_points = std::array<double, 2>{inv.well.x_lo, inv.well.x_hi};
    orbit.x_max = std::max(std::abs(inv.well.x_lo), std::abs(inv.well.x_hi));

    double dt = options.trace_dt > 0.0 ? options.trace_dt : inv.period / 1e5;
    long n = std::max<long>(16, std::lround(inv.period / dt));
    dt = inv.period / static_cast<double>(n);
    orbit.trace = integrate(spec, PhaseState::line(inv.well.x_lo, 0.0), dt, n);
    orbit.closure_residual = closure_of(orbit.trace);
    return orbit;
}

PeriodicOrbit orbit_from_trajectory(const HamiltonianSpec& spec, const Trajectory& trace,
                                    double energy) {
    require(trace.samples.size() >= 3, ErrorKind::domain, "trajectory too short");
    PeriodicOrbit orbit;
    orbit.spec = spec;
    orbit.energy = energy;
    orbit.trace = trace;
    orbit.period = orbit.measured_period();
    orbit.action = orbit.measured_action();
    orbit.arclength = orbit.measured_arclength();
    orbit.time_action = orbit.action - energy * orbit.period;
    orbit.closure_residual = closure_of(trace);
    orbit.x_max = max_radius_of(trace);
    return orbit;
}

double find_first_return_period(const HamiltonianSpec& spec, const PhaseState& start, double dt,
                                double t_max) {
    spec.validate();
    double p0 = norm(start.p, spec.dimension);
    require(p0 > 0.0, ErrorKind::domain, "first-return detection needs nonzero initial momentum");
    int d = spec.dimension;
    Vec3 vhat{};
    for (int k = 0; k < d; ++k) vhat[k] = start.p[k] / p0;

    auto section = [&](const PhaseState& s) {
        double g = 0.0;
        for (int k = 0; k < d; ++k) g += (s.x[k] - start.x[k]) * vhat[k];
        return g;
    };

    const long chunk = 8192;
    PhaseState current = start;
    bool armed = false;
    double g_prev = 0.0;
    long total = 0;
    const long limit = static_cast<long>(t_max / dt) + 1;
    while (total < limit) {
        long steps = std::min(chunk, limit - total);
        Trajectory piece = integrate(spec, current, dt, steps);
        for (long i = 1; i <= steps; ++i) {
            const PhaseState& s = piece.samples[static_cast<std::size_t>(i)];
            double g = section(s);
            if (!armed && g < 0.0) armed = true;
            bool forward = dot(s.p, vhat, d) > 0.0;
            if (armed && g_prev < 0.0 && g >= 0.0 && forward) {
                // Refine the crossing inside the last step by bisection.
                PhaseState base = piece.samples[static_cast<std::size_t>(i - 1)];
                double h_lo = 0.0, h_hi = dt;
                for (int iter = 0; iter < 64; ++iter) {
                    double h = 0.5 * (h_lo + h_hi);
                    Trajectory sub = integrate(spec, base, h, 1);
                    if (section(sub.samples.back()) < 0.0)
                        h_lo = h;
                    else
                        h_hi = h;
                }
                return base.t - start.t + 0.5 * (h_lo + h_hi);
            }
            g_prev = g;
        }
        current = piece.samples.back();
        total += steps;
    }
    fail(ErrorKind::not_periodic, "no return to the initial section before t_max");
}

PeriodicOrbit orbit_from_integration(const HamiltonianSpec& spec, const PhaseState& start,
                                     double period, long n_steps) {
    require(period > 0.0, ErrorKind::domain, "period must be positive");
    double dt = period / static_cast<double>(n_steps);
    Trajectory trace = integrate(spec, start, dt, n_steps);
    return orbit_from_trajectory(spec, trace, evaluate_energy(spec, start));
}

PeriodicOrbit circular_orbit(const HamiltonianSpec& spec, double radius, long n_steps) {
    spec.validate();
    require(spec.dimension >= 2, ErrorKind::contract_violation,
            "circular orbits need at least two dimensions");
    require(radius > 0.0, ErrorKind::domain, "radius must be positive");

    Vec3 x0{};
    x0[0] = radius;
    Vec3 f = spec.force(x0);
    require(f[0] < 0.0, ErrorKind::orbit_structure,
            "force at this radius is not attractive; no circular orbit");
    double speed = std::sqrt(-f[0] * radius / spec.mass);

    PhaseState start;
    start.dim = spec.dimension;
    start.x = x0;
    start.p[1] = spec.mass * speed;

    double t_guess = 2.0 * 3.14159265358979323846 * radius / speed;
    double dt = t_guess / static_cast<double>(n_steps);
    double period = find_first_return_period(spec, start, dt, 3.0 * t_guess);
    return orbit_from_integration(spec, start, period, n_steps);
}

double CatalogEntry::action_at(double energy, double mass) const {
    require(energy > 0.0, ErrorKind::domain, "billiard invariants need positive energy");
    return std::sqrt(2.0 * mass * energy) * length;
}

double CatalogEntry::period_at(double energy, double mass) const {
    require(energy > 0.0, ErrorKind::domain, "billiard invariants need positive energy");
    return std::sqrt(mass / (2.0 * energy)) * length;
}

void OrbitCatalog::write_csv(std::ostream& out, double e0) const {
    out << "label,L,S_at_E0,T_at_E0,E0\n";
    for (const auto& e : entries) {
        out << e.label << ',';
        put(out, e.length);
        out << ',';
        put(out, e.action_at(e0, mass));
        out << ',';
        put(out, e.period_at(e0, mass));
        out << ',';
        put(out, e0);
        out << '\n';
    }
}

OrbitCatalog rectangle_orbit_lengths(double a, std::optional<double> b, int n_max, double mass,
                                     double hbar) {
    require(a > 0.0, ErrorKind::domain, "side length must be positive");
    if (b) require(*b > 0.0, ErrorKind::domain, "side length must be positive");
    require(n_max >= 1, ErrorKind::domain, "n_max must be at least 1");

    OrbitCatalog catalog;
    catalog.mass = mass;
    catalog.hbar = hbar;

    std::vector<CatalogEntry> raw;
    if (!b) {
        for (int k = 1; k <= n_max; ++k)
            raw.push_back({std::to_string(k), 2.0 * a * k});
    } else {
        for (int p = 0; p <= n_max; ++p)
            for (int q = 0; q <= n_max; ++q) {
                if (p == 0 && q == 0) continue;
                double length = 2.0 * std::hypot(p * a, q * *b);
                raw.push_back({std::to_string(p) + "," + std::to_string(q), length});
            }
    }
    std::sort(raw.begin(), raw.end(), [](const CatalogEntry& lhs, const CatalogEntry& rhs) {
        return lhs.length < rhs.length || (lhs.length == rhs.length && lhs.label < rhs.label);
    });
    for (auto& entry : raw) {
        if (!catalog.entries.empty() &&
            std::abs(entry.length - catalog.entries.back().length) <=
                1e-12 * catalog.entries.back().length) {
            catalog.entries.back().label += "|" + entry.label;  // reversal / symmetry partners
        } else {
            catalog.entries.push_back(entry);
        }
    }
    return catalog;
}

OrbitInvariants orbit_invariants(const PeriodicOrbit& orbit) {
    double recheck = orbit.action - orbit.energy * orbit.period;
    require(std::abs(recheck - orbit.time_action) <= 1e-9 * std::max(1.0, std::abs(orbit.action)),
            ErrorKind::contract_violation, "stored invariants violate R = S - E T");
    return {orbit.action, orbit.period, orbit.arclength, orbit.time_action};
}

DsDeReport ds_de_check(const HamiltonianSpec& spec, double energy, double delta,
                       const OrbitOptions& options) {
    require(delta > 0.0, ErrorKind::domain, "stencil width must be positive");

    auto invariants_at = [&](double e) {
        try {
            return quadrature_invariants(spec, e, options);
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::orbit_structure || err.kind() == ErrorKind::degeneracy)
                fail(ErrorKind::family,
                     std::string("orbit family broken across the stencil: ") + err.what());
            throw;
        }
    };

    double s_plus = invariants_at(energy + delta).action;
    double s_minus = invariants_at(energy - delta).action;
    WellInvariants center = invariants_at(energy);

    DsDeReport report;
    report.ds_de = (s_plus - s_minus) / (2.0 * delta);
    report.period = center.period;
    report.residual = std::abs(report.ds_de - center.period) / center.period;
    return report;
}

}  // namespace orbitscale
