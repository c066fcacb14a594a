#include "orbitscale/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace orbitscale {

namespace {

void put(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

Trajectory transform_trace(const Trajectory& in, const HamiltonianSpec& new_spec,
                           double space_factor, double momentum_factor, double time_factor) {
    Trajectory out;
    out.dimension = in.dimension;
    out.dt = in.dt * time_factor;
    out.samples.resize(in.samples.size());
    out.energy.resize(in.samples.size());
    int d = in.dimension;
    for (std::size_t i = 0; i < in.samples.size(); ++i) {
        PhaseState s = in.samples[i];
        for (int k = 0; k < d; ++k) {
            s.x[k] *= space_factor;
            s.p[k] *= momentum_factor;
        }
        s.t *= time_factor;
        out.samples[i] = s;
        out.energy[i] = dot(s.p, s.p, d) / (2.0 * new_spec.mass) + new_spec.potential(s.x);
    }
    out.energy0 = out.energy.front();
    for (double e : out.energy)
        out.energy_drift = std::max(out.energy_drift, std::abs(e - out.energy0));
    out.drift_coefficient = out.energy_drift / (out.dt * out.dt);
    return out;
}

// Worst relative defect of dx/dt = p/m, dp/dt = -grad V along the trace,
// from fourth-order interior difference stencils.
double eom_residual_of(const Trajectory& trace, const HamiltonianSpec& spec) {
    const auto& s = trace.samples;
    std::size_t n = s.size();
    if (n < 5) return 0.0;
    int d = trace.dimension;
    double dt = trace.dt;

    std::vector<Vec3> force(n);
    double v_scale = 0.0, f_scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        force[i] = spec.force(s[i].x);
        v_scale = std::max(v_scale, norm(s[i].p, d) / spec.mass);
        f_scale = std::max(f_scale, norm(force[i], d));
    }
    v_scale = std::max(v_scale, 1e-300);
    f_scale = std::max(f_scale, 1e-300);

    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        for (int k = 0; k < d; ++k) {
            double dx = (s[i - 2].x[k] - 8.0 * s[i - 1].x[k] + 8.0 * s[i + 1].x[k] - s[i + 2].x[k]) /
                        (12.0 * dt);
            double dp = (s[i - 2].p[k] - 8.0 * s[i - 1].p[k] + 8.0 * s[i + 1].p[k] - s[i + 2].p[k]) /
                        (12.0 * dt);
            worst = std::max(worst, std::abs(dx - s[i].p[k] / spec.mass) / v_scale);
            worst = std::max(worst, std::abs(dp - force[i][k]) / f_scale);
        }
    }
    return worst;
}

double energy_surface_residual(const Trajectory& trace, double energy) {
    double worst = 0.0;
    for (double e : trace.energy) worst = std::max(worst, std::abs(e - energy));
    return worst / std::max(std::abs(energy), 1e-300);
}

struct Factors {
    double space = 1.0;
    double momentum = 1.0;
    double time = 1.0;
    double energy = 1.0;
    double action = 1.0;
};

ScalingResult apply_transform(const PeriodicOrbit& orbit, HamiltonianSpec new_spec,
                              ScalingKind kind, double alpha, const Factors& f) {
    ScalingResult result;
    result.kind = kind;
    result.alpha = alpha;
    result.new_energy = f.energy * orbit.energy;
    for (const auto& term : new_spec.terms) result.new_couplings.push_back(term.coupling);
    result.predicted_period = f.time * orbit.period;
    result.predicted_action = f.action * orbit.action;
    result.period_factor = f.time;
    result.action_factor = f.action;
    result.input_measured_period = orbit.measured_period();
    result.input_measured_action = orbit.measured_action();

    PeriodicOrbit out;
    out.spec = new_spec;
    out.energy = result.new_energy;
    out.period = result.predicted_period;
    out.action = result.predicted_action;
    out.arclength = f.space * orbit.arclength;
    out.time_action = out.action - out.energy * out.period;
    out.x_max = f.space * orbit.x_max;
    if (orbit.turning_points)
        out.turning_points =
            std::array<double, 2>{f.space * (*orbit.turning_points)[0],
                                  f.space * (*orbit.turning_points)[1]};
    out.trace = transform_trace(orbit.trace, new_spec, f.space, f.momentum, f.time);
    out.closure_residual = orbit.closure_residual;  // invariant under uniform phase-space scaling

    result.transformed = std::move(out);
    result.measured_period = result.transformed.measured_period();
    result.measured_action = result.transformed.measured_action();
    result.eom_residual = eom_residual_of(result.transformed.trace, new_spec);
    result.energy_residual = energy_surface_residual(result.transformed.trace, result.new_energy);
    return result;
}

}  // namespace

const char* to_string(ScalingKind kind) {
    switch (kind) {
        case ScalingKind::coupling: return "coupling";
        case ScalingKind::homogeneous: return "homogeneous";
        case ScalingKind::mixed: return "mixed";
    }
    return "scaling";
}

double ScalingResult::period_law_residual() const {
    double expect = period_factor * input_measured_period;
    return std::abs(measured_period - expect) / std::abs(expect);
}

double ScalingResult::action_law_residual() const {
    double expect = action_factor * input_measured_action;
    return std::abs(measured_action - expect) / std::abs(expect);
}

void ScalingResult::write_csv(std::ostream& out) const {
    out << "alpha,E";
    for (std::size_t j = 0; j < new_couplings.size(); ++j) out << ",lambda_" << j;
    out << ",T_meas,T_pred,S_meas,S_pred,eom_residual,energy_residual\n";
    put(out, alpha);
    out << ',';
    put(out, new_energy);
    for (double c : new_couplings) {
        out << ',';
        put(out, c);
    }
    for (double v : {measured_period, predicted_period, measured_action, predicted_action,
                     eom_residual, energy_residual}) {
        out << ',';
        put(out, v);
    }
    out << '\n';
}

ScalingResult scale_coupling(const PeriodicOrbit& orbit, double alpha) {
    require(alpha > 0.0, ErrorKind::domain, "scaling parameter must be positive");
    require(orbit.spec.terms.size() == 1, ErrorKind::wrong_kind,
            "coupling scaling needs a single overall coupling");

    HamiltonianSpec new_spec = orbit.spec;
    new_spec.terms[0].coupling *= alpha * alpha;

    Factors f;
    f.space = 1.0;
    f.momentum = alpha;
    f.time = 1.0 / alpha;
    f.energy = alpha * alpha;
    f.action = alpha;
    return apply_transform(orbit, new_spec, ScalingKind::coupling, alpha, f);
}

ScalingResult scale_homogeneous(const PeriodicOrbit& orbit, double alpha) {
    require(alpha > 0.0, ErrorKind::domain, "scaling parameter must be positive");
    double nu = 0.0;
    require(orbit.spec.single_degree(&nu), ErrorKind::wrong_kind,
            "dilation scaling needs one common homogeneity degree");
    require(nu != 0.0 && nu != -2.0, ErrorKind::singular_exponent,
            "degrees 0 and -2 are singular for dilation scaling");

    Factors f;
    f.space = alpha * alpha;
    f.momentum = std::pow(alpha, nu);
    f.time = std::pow(alpha, 2.0 - nu);
    f.energy = std::pow(alpha, 2.0 * nu);
    f.action = std::pow(alpha, nu + 2.0);
    return apply_transform(orbit, orbit.spec, ScalingKind::homogeneous, alpha, f);
}

ScalingResult scale_mixed(const PeriodicOrbit& orbit, double alpha, int anchor_index) {
    require(alpha > 0.0, ErrorKind::domain, "scaling parameter must be positive");
    require(anchor_index >= 0 && anchor_index < static_cast<int>(orbit.spec.terms.size()),
            ErrorKind::domain, "anchor term index out of range");
    const PotentialTerm& anchor = orbit.spec.terms[static_cast<std::size_t>(anchor_index)];
    require(anchor.homogeneous, ErrorKind::wrong_kind, "the anchor term must be homogeneous");
    double nu1 = anchor.degree;
    require(nu1 != 0.0 && nu1 != -2.0, ErrorKind::singular_exponent,
            "anchor degrees 0 and -2 are singular");

    HamiltonianSpec new_spec = orbit.spec;
    double gamma = 1.0;
    bool gamma_set = false;
    for (std::size_t j = 0; j < new_spec.terms.size(); ++j) {
        if (static_cast<int>(j) == anchor_index) continue;
        PotentialTerm& term = new_spec.terms[j];
        if (term.homogeneous) {
            term.coupling *= std::pow(alpha, 2.0 * (nu1 - term.degree));
            if (!gamma_set) {
                gamma = std::pow(alpha, nu1 - term.degree);
                gamma_set = true;
            }
        } else if (term.deformable) {
            // Carry the profile along the dilation instead of the coupling.
            double amp = std::pow(alpha, 2.0 * nu1);
            double shrink = 1.0 / (alpha * alpha);
            double grad_amp = std::pow(alpha, 2.0 * nu1 - 2.0);
            auto value = term.value;
            auto grad = term.grad;
            term.value = [=](const Vec3& x, int dim) {
                Vec3 y{};
                for (int k = 0; k < dim; ++k) y[k] = shrink * x[k];
                return amp * value(y, dim);
            };
            term.grad = [=](const Vec3& x, int dim) {
                Vec3 y{};
                for (int k = 0; k < dim; ++k) y[k] = shrink * x[k];
                Vec3 g = grad(y, dim);
                for (int k = 0; k < dim; ++k) g[k] *= grad_amp;
                return g;
            };
        } else {
            fail(ErrorKind::wrong_kind,
                 "term " + std::to_string(j) +
                     " is neither homogeneous nor marked deformable");
        }
    }

    Factors f;
    f.space = alpha * alpha;
    f.momentum = std::pow(alpha, nu1);
    f.time = std::pow(alpha, 2.0 - nu1);
    f.energy = std::pow(alpha, 2.0 * nu1);
    f.action = std::pow(alpha, nu1 + 2.0);
    ScalingResult result = apply_transform(orbit, new_spec, ScalingKind::mixed, alpha, f);
    result.anchor_index = anchor_index;
    result.gamma = gamma;
    return result;
}

double characteristic_length(double action, double energy, double mass) {
    require(mass > 0.0, ErrorKind::domain, "mass must be positive");
    require(energy != 0.0, ErrorKind::domain, "characteristic length is undefined at E = 0");
    require(action > 0.0, ErrorKind::domain, "action must be positive");
    return action / std::sqrt(2.0 * mass * std::abs(energy));
}

VirialReport virial_report(const PeriodicOrbit& orbit) {
    require(orbit.closure_residual <= 1e-6, ErrorKind::not_periodic,
            "trace does not close; virial identity needs a periodic orbit");
    double nu = 0.0;
    require(orbit.spec.single_degree(&nu), ErrorKind::wrong_kind,
            "virial identity needs a single homogeneity degree");
    require(nu != -2.0, ErrorKind::singular_exponent, "degree -2 is singular");

    double t_meas = orbit.measured_period();
    double mean_v = orbit.measured_mean_potential();
    double integral_v = mean_v * t_meas;
    double target = 2.0 * orbit.energy * t_meas / (nu + 2.0);

    VirialReport report;
    report.mean_potential = mean_v;
    report.residual = std::abs(integral_v - target) / (std::abs(orbit.energy) * t_meas);
    double lhs = orbit.action / (2.0 * orbit.energy);
    double rhs = orbit.period - integral_v / orbit.energy;
    report.legendre_residual = std::abs(lhs - rhs) / orbit.period;
    return report;
}

double virial_residual(const PeriodicOrbit& orbit) { return virial_report(orbit).residual; }

double transmute_length(double coupling, double degree) {
    require(degree != -2.0, ErrorKind::singular_exponent,
            "degree -2 admits no coupling-to-length transmutation");
    require(coupling != 0.0, ErrorKind::domain, "coupling must be nonzero");
    return std::pow(std::abs(coupling), -1.0 / (degree + 2.0));
}

std::vector<LociRow> level_loci(LociKind kind, int n_max, const std::vector<double>& couplings) {
    require(n_max >= 1, ErrorKind::domain, "n_max must be at least 1");
    require(!couplings.empty(), ErrorKind::domain, "need at least one coupling");
    for (double c : couplings) require(c > 0.0, ErrorKind::domain, "couplings must be positive");

    std::vector<LociRow> rows;
    for (double lambda : couplings) {
        if (kind == LociKind::oscillator) {
            // lambda is the squared frequency; levels (n + 1/2) sqrt(lambda).
            double omega = std::sqrt(lambda);
            double x0 = transmute_length(lambda, 2.0);
            for (int n = 0; n < n_max; ++n) {
                double e = (n + 0.5) * omega;
                rows.push_back({lambda, n, e, e * x0 * x0});
            }
        } else {
            // lambda = e^2; levels -lambda^2/(4 n^2) in units hbar = 1, 2m = 1.
            double x0 = transmute_length(lambda, -1.0);
            for (int n = 1; n <= n_max; ++n) {
                double e = -lambda * lambda / (4.0 * n * n);
                rows.push_back({lambda, n, e, e * x0 * x0});
            }
        }
    }
    return rows;
}

void write_loci_csv(std::ostream& out, const std::vector<LociRow>& rows) {
    out << "lambda,n,E_n,E_n_x0sq\n";
    for (const auto& row : rows) {
        put(out, row.coupling);
        out << ',' << row.n << ',';
        put(out, row.energy);
        out << ',';
        put(out, row.scaled_energy);
        out << '\n';
    }
}

}  // namespace orbitscale
