#include "oracles.hpp"

#include <cmath>
#include <complex>

using namespace orbitscale;

namespace oracles {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Trajectory rk4_reference(const HamiltonianSpec& spec, const PhaseState& start, double dt,
                         long n_steps) {
    int d = spec.dimension;
    Trajectory traj;
    traj.dimension = d;
    traj.dt = dt;
    traj.samples.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.energy.reserve(static_cast<std::size_t>(n_steps) + 1);

    Vec3 x = start.x, p = start.p;
    auto record = [&](double t) {
        PhaseState s;
        s.x = x;
        s.p = p;
        s.t = t;
        s.dim = d;
        traj.samples.push_back(s);
        traj.energy.push_back(dot(p, p, d) / (2.0 * spec.mass) + spec.potential(x));
    };
    record(start.t);

    auto deriv = [&](const Vec3& xx, const Vec3& pp, Vec3& dx, Vec3& dp) {
        Vec3 f = spec.force(xx);
        for (int k = 0; k < d; ++k) {
            dx[k] = pp[k] / spec.mass;
            dp[k] = f[k];
        }
    };

    for (long i = 1; i <= n_steps; ++i) {
        Vec3 k1x, k1p, k2x, k2p, k3x, k3p, k4x, k4p, tx, tp;
        deriv(x, p, k1x, k1p);
        for (int k = 0; k < d; ++k) {
            tx[k] = x[k] + 0.5 * dt * k1x[k];
            tp[k] = p[k] + 0.5 * dt * k1p[k];
        }
        deriv(tx, tp, k2x, k2p);
        for (int k = 0; k < d; ++k) {
            tx[k] = x[k] + 0.5 * dt * k2x[k];
            tp[k] = p[k] + 0.5 * dt * k2p[k];
        }
        deriv(tx, tp, k3x, k3p);
        for (int k = 0; k < d; ++k) {
            tx[k] = x[k] + dt * k3x[k];
            tp[k] = p[k] + dt * k3p[k];
        }
        deriv(tx, tp, k4x, k4p);
        for (int k = 0; k < d; ++k) {
            x[k] += dt / 6.0 * (k1x[k] + 2.0 * k2x[k] + 2.0 * k3x[k] + k4x[k]);
            p[k] += dt / 6.0 * (k1p[k] + 2.0 * k2p[k] + 2.0 * k3p[k] + k4p[k]);
        }
        record(start.t + dt * static_cast<double>(i));
    }
    traj.energy0 = traj.energy.front();
    for (double e : traj.energy)
        traj.energy_drift = std::max(traj.energy_drift, std::abs(e - traj.energy0));
    traj.drift_coefficient = traj.energy_drift / (dt * dt);
    return traj;
}

double tanh_sinh(const std::function<double(double, double, double)>& f, double a, double b,
                 double tol) {
    double center = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    const double t_max = 6.0;

    auto eval = [&](double t) {
        double u = 0.5 * kPi * std::sinh(t);
        // Endpoint distances without cancellation: 1 -+ tanh(u).
        double dist_lo = half * 2.0 / (1.0 + std::exp(2.0 * u));   // x - a
        double dist_hi = half * 2.0 / (1.0 + std::exp(-2.0 * u));  // b - x
        double x = dist_lo < dist_hi ? a + dist_lo : b - dist_hi;
        double cosh_u = std::cosh(u);
        double w = half * 0.5 * kPi * std::cosh(t) / (cosh_u * cosh_u);
        if (w == 0.0 || dist_lo == 0.0 || dist_hi == 0.0) return 0.0;
        double v = f(x, dist_lo, dist_hi);
        return std::isfinite(v) ? w * v : 0.0;
    };

    double h = 1.0;
    double sum = eval(0.0);
    for (int t = 1; t * h <= t_max; ++t) sum += eval(t * h) + eval(-t * h);
    double previous = sum * h;
    for (int level = 1; level <= 10; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (int i = 1; i * h <= t_max; i += 2) add += eval(i * h) + eval(-i * h);
        sum += add;
        double current = sum * h;
        if (std::abs(current - previous) <= tol * std::max(1.0, std::abs(current)) && level >= 3)
            return current;
        previous = current;
    }
    return previous;
}

PeriodAction well_period_action(const HamiltonianSpec& spec, double energy) {
    auto u_of = [&](double x) {
        Vec3 v{};
        v[0] = x;
        return spec.potential(v);
    };

    // Bracket the well by scanning outward from the sampled minimum.
    double radius = 1.0;
    double x_min = 0.0;
    for (;; radius *= 4.0) {
        double best = u_of(0.0);
        x_min = 0.0;
        for (int i = -2000; i <= 2000; ++i) {
            double x = radius * i / 2000.0;
            double u = u_of(x);
            if (u < best) {
                best = u;
                x_min = x;
            }
        }
        if (best < energy && u_of(radius) > energy && u_of(-radius) > energy) break;
        if (radius > 1e6) throw std::runtime_error("oracle: no well found");
    }
    auto root = [&](double lo, double hi) {
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            if ((u_of(lo) - energy) * (u_of(mid) - energy) <= 0.0)
                hi = mid;
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    };

    PeriodAction out;
    out.x_lo = root(-radius, x_min);
    out.x_hi = root(x_min, radius);

    // Blend the rounding-level turning-point residuals to zero linearly in
    // x so the singular integrand vanishes at the endpoints exactly.
    double defect_lo = energy - u_of(out.x_lo);
    double defect_hi = energy - u_of(out.x_hi);
    double span = out.x_hi - out.x_lo;
    auto e_minus_u = [&](double x) {
        double s = (x - out.x_lo) / span;
        return (energy - u_of(x)) - (defect_lo * (1.0 - s) + defect_hi * s);
    };

    // Inside `skip` of a turning point the double-precision evaluation of
    // E - U is pure rounding noise against the inverse square root; cut
    // the integrand there and add the local-slope tail analytically.
    double m = spec.mass;
    double skip = 1e-9 * span;
    auto slope_at = [&](double x) {
        Vec3 v{};
        v[0] = x;
        return std::abs(spec.force(v)[0]);
    };
    double tail = 4.0 * std::sqrt(m * skip / (2.0 * slope_at(out.x_lo))) +
                  4.0 * std::sqrt(m * skip / (2.0 * slope_at(out.x_hi)));

    out.period = tail + tanh_sinh(
                            [&](double x, double dist_lo, double dist_hi) {
                                if (dist_lo < skip || dist_hi < skip) return 0.0;
                                double emu = e_minus_u(x);
                                if (emu <= 0.0) return 0.0;
                                return 2.0 * std::sqrt(m / (2.0 * emu));
                            },
                            out.x_lo, out.x_hi);
    out.action = tanh_sinh(
        [&](double x, double, double) {
            double emu = e_minus_u(x);
            if (emu <= 0.0) return 0.0;
            return 2.0 * std::sqrt(2.0 * m * emu);
        },
        out.x_lo, out.x_hi);
    return out;
}

double numerov_level(const HamiltonianSpec& spec, double x_lo, double x_hi, int grid_n, int nodes,
                     double e_lo, double e_hi) {
    double h = (x_hi - x_lo) / grid_n;
    double factor = 2.0 * spec.mass / (spec.hbar * spec.hbar);
    std::vector<double> v(static_cast<std::size_t>(grid_n) + 1);
    for (int i = 0; i <= grid_n; ++i) {
        Vec3 x{};
        x[0] = x_lo + h * i;
        v[static_cast<std::size_t>(i)] = spec.potential(x);
    }

    auto shoot = [&](double e, int& node_count) {
        double c = h * h / 12.0;
        double g_prev = factor * (v[0] - e);
        double g_curr = factor * (v[1] - e);
        double psi_prev = 0.0, psi_curr = 1e-12;
        node_count = 0;
        for (int i = 1; i < grid_n; ++i) {
            double g_next = factor * (v[static_cast<std::size_t>(i) + 1] - e);
            double psi_next = (2.0 * (1.0 + 5.0 * c * g_curr) * psi_curr -
                               (1.0 - c * g_prev) * psi_prev) /
                              (1.0 - c * g_next);
            if (psi_next * psi_curr < 0.0) ++node_count;
            psi_prev = psi_curr;
            psi_curr = psi_next;
            g_prev = g_curr;
            g_curr = g_next;
            // Rescale to dodge overflow in classically forbidden regions.
            if (std::abs(psi_curr) > 1e100) {
                psi_prev /= 1e100;
                psi_curr /= 1e100;
            }
        }
        return psi_curr;
    };

    for (int iter = 0; iter < 200; ++iter) {
        double e_mid = 0.5 * (e_lo + e_hi);
        int node_count = 0;
        double end_value = shoot(e_mid, node_count);
        bool too_high =
            node_count > nodes ||
            (node_count == nodes && end_value * ((nodes % 2 == 0) ? 1.0 : -1.0) < 0.0);
        if (too_high)
            e_hi = e_mid;
        else
            e_lo = e_mid;
        if (e_hi - e_lo < 1e-13 * std::max(1.0, std::abs(e_mid))) break;
    }
    return 0.5 * (e_lo + e_hi);
}

double slow_dtft_peak(const std::vector<double>& s, const std::vector<double>& f, double nu_lo,
                      double nu_hi, int scan) {
    std::size_t n = s.size();
    std::vector<double> w(n), amps(static_cast<std::size_t>(scan) + 1);
    double w_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / (n - 1));
        w_sum += w[i];
    }
    int best = 0;
    for (int k = 0; k <= scan; ++k) {
        double nu = nu_lo + (nu_hi - nu_lo) * k / scan;
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            acc += w[i] * f[i] * std::exp(std::complex<double>(0.0, -nu * s[i]));
        amps[static_cast<std::size_t>(k)] = 2.0 * std::abs(acc) / w_sum;
        if (amps[static_cast<std::size_t>(k)] > amps[static_cast<std::size_t>(best)]) best = k;
    }
    double step = (nu_hi - nu_lo) / scan;
    double nu_best = nu_lo + step * best;
    if (best > 0 && best < scan) {
        double a = amps[static_cast<std::size_t>(best) - 1];
        double b = amps[static_cast<std::size_t>(best)];
        double c = amps[static_cast<std::size_t>(best) + 1];
        double denom = a - 2.0 * b + c;
        if (denom < 0.0) nu_best += 0.5 * (a - c) / denom * step;
    }
    return nu_best;
}

double kepler_semimajor(double lambda, double energy) { return lambda / (2.0 * std::abs(energy)); }

double kepler_period(double mass, double lambda, double energy) {
    double a = kepler_semimajor(lambda, energy);
    return 2.0 * kPi * std::sqrt(mass * a * a * a / lambda);
}

double kepler_action(double mass, double lambda, double energy) {
    return 2.0 * kPi * lambda * std::sqrt(mass / (2.0 * std::abs(energy)));
}

}  // namespace oracles
