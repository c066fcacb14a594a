#include "orbitscale/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace orbitscale {

namespace {

struct WallHit {
    int coord = -1;
    double position = 0.0;
};

bool inside(const Domain& domain, const Vec3& x, WallHit* hit = nullptr) {
    int walls = domain.wall_count();
    for (int k = 0; k < walls; ++k) {
        if (x[k] < domain.lo[k]) {
            if (hit) *hit = {k, domain.lo[k]};
            return false;
        }
        if (x[k] > domain.hi[k]) {
            if (hit) *hit = {k, domain.hi[k]};
            return false;
        }
    }
    return true;
}

struct Stepper {
    const HamiltonianSpec& spec;
    Vec3 x{};
    Vec3 p{};
    Vec3 f{};

    void check_force() const {
        for (int k = 0; k < spec.dimension; ++k)
            require(std::isfinite(f[k]), ErrorKind::numeric, "non-finite force encountered");
    }

    // Velocity-Verlet kick-drift-kick over h, from the stored force.
    void advance(double h, Vec3& x_out, Vec3& p_out, Vec3& f_out) const {
        int d = spec.dimension;
        Vec3 ph{}, x1{};
        for (int k = 0; k < d; ++k) ph[k] = p[k] + 0.5 * h * f[k];
        for (int k = 0; k < d; ++k) x1[k] = x[k] + h * ph[k] / spec.mass;
        Vec3 f1 = spec.force(x1);
        Vec3 p1{};
        for (int k = 0; k < d; ++k) p1[k] = ph[k] + 0.5 * h * f1[k];
        x_out = x1;
        p_out = p1;
        f_out = f1;
    }
};

}  // namespace

Trajectory integrate(const HamiltonianSpec& spec, const PhaseState& start, double dt,
                     long n_steps, const IntegrateOptions& options) {
    spec.validate();
    require(dt > 0.0, ErrorKind::domain, "step size must be positive");
    require(n_steps >= 1, ErrorKind::domain, "need at least one step");
    require(start.dim == spec.dimension, ErrorKind::contract_violation,
            "initial state dimension does not match the Hamiltonian");
    require(start.finite(), ErrorKind::numeric, "non-finite initial state");
    require(inside(spec.domain, start.x), ErrorKind::domain, "initial point lies outside the domain");

    const int d = spec.dimension;
    const bool walled = spec.domain.wall_count() > 0;
    const double bisect_tol = options.wall_bisect_tol * dt;

    Trajectory traj;
    traj.dimension = d;
    traj.dt = dt;
    traj.samples.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.energy.reserve(static_cast<std::size_t>(n_steps) + 1);

    Stepper stepper{spec};
    stepper.x = start.x;
    stepper.p = start.p;
    stepper.f = spec.force(start.x);
    stepper.check_force();

    auto record = [&](double t) {
        PhaseState s;
        s.x = stepper.x;
        s.p = stepper.p;
        s.t = t;
        s.dim = d;
        traj.samples.push_back(s);
        double kinetic = dot(stepper.p, stepper.p, d) / (2.0 * spec.mass);
        traj.energy.push_back(kinetic + spec.potential(stepper.x));
        if (!walled)
            require(norm(stepper.x, d) <= options.escape_radius, ErrorKind::escape,
                    "trajectory escaped beyond the configured radius");
    };

    record(start.t);
    traj.energy0 = traj.energy.front();

    for (long step = 1; step <= n_steps; ++step) {
        double remaining = dt;
        int reflections = 0;
        while (remaining > 0.0) {
            Vec3 x1, p1, f1;
            stepper.advance(remaining, x1, p1, f1);
            if (!walled || inside(spec.domain, x1)) {
                stepper.x = x1;
                stepper.p = p1;
                stepper.f = f1;
                stepper.check_force();
                break;
            }
            // Locate the first crossing by bisection on the substep length.
            double h_in = 0.0, h_out = remaining;
            WallHit hit;
            inside(spec.domain, x1, &hit);
            while (h_out - h_in > bisect_tol) {
                double h_mid = 0.5 * (h_in + h_out);
                stepper.advance(h_mid, x1, p1, f1);
                if (inside(spec.domain, x1, &hit))
                    h_in = h_mid;
                else
                    h_out = h_mid;
            }
            stepper.advance(h_out, x1, p1, f1);
            inside(spec.domain, x1, &hit);
            stepper.x = x1;
            stepper.p = p1;
            // Snap onto the wall and reverse the normal momentum exactly;
            // Dirichlet and Neumann walls reflect classically alike.
            stepper.x[hit.coord] = hit.position;
            stepper.p[hit.coord] = -stepper.p[hit.coord];
            stepper.f = spec.force(stepper.x);
            stepper.check_force();
            remaining -= h_out;
            require(++reflections <= 64, ErrorKind::numeric,
                    "too many wall reflections within one step");
        }
        record(start.t + static_cast<double>(step) * dt);
    }

    for (double e : traj.energy)
        traj.energy_drift = std::max(traj.energy_drift, std::abs(e - traj.energy0));
    traj.drift_coefficient = traj.energy_drift / (dt * dt);
    return traj;
}

Trajectory sqrt_reparametrize(const Trajectory& trajectory, double energy) {
    require(energy > 0.0, ErrorKind::domain,
            "square-root reparametrization needs positive energy");
    require(!trajectory.samples.empty(), ErrorKind::domain, "empty trajectory");
    double mismatch = std::abs(trajectory.energy0 - energy);
    require(mismatch <= std::max(16.0 * trajectory.energy_drift, 1e-9 * std::abs(energy)),
            ErrorKind::contract_violation,
            "trajectory does not conserve the requested energy");

    Trajectory out = trajectory;
    double rate = 2.0 * std::sqrt(energy);
    out.tau.resize(out.samples.size());
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.tau[i] = rate * out.samples[i].t;
    return out;
}

std::vector<double> reparametrized_speed_squared(const Trajectory& trajectory) {
    require(trajectory.has_tau(), ErrorKind::contract_violation,
            "trajectory has no reparametrized time stamps");
    std::size_t n = trajectory.size();
    require(n >= 3, ErrorKind::domain, "need at least three samples");
    int d = trajectory.dimension;
    std::vector<double> u2(n);
    auto diff = [&](std::size_t a, std::size_t b) {
        double dtau = trajectory.tau[b] - trajectory.tau[a];
        double s = 0.0;
        for (int k = 0; k < d; ++k) {
            double u = (trajectory.samples[b].x[k] - trajectory.samples[a].x[k]) / dtau;
            s += u * u;
        }
        return s;
    };
    u2[0] = diff(0, 1);
    for (std::size_t i = 1; i + 1 < n; ++i) u2[i] = diff(i - 1, i + 1);
    u2[n - 1] = diff(n - 2, n - 1);
    return u2;
}

}  // namespace orbitscale
