#include "orbitscale/hamiltonian.hpp"

#include <cmath>

namespace orbitscale {

double dot(const Vec3& a, const Vec3& b, int dim) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) s += a[k] * b[k];
    return s;
}

double norm(const Vec3& a, int dim) { return std::sqrt(dot(a, a, dim)); }

PhaseState PhaseState::line(double x, double p, double t) {
    PhaseState s;
    s.x[0] = x;
    s.p[0] = p;
    s.t = t;
    s.dim = 1;
    return s;
}

PhaseState PhaseState::planar(double x, double y, double px, double py, double t) {
    PhaseState s;
    s.x = {x, y, 0.0};
    s.p = {px, py, 0.0};
    s.t = t;
    s.dim = 2;
    return s;
}

PhaseState PhaseState::spatial(const Vec3& x, const Vec3& p, double t) {
    PhaseState s;
    s.x = x;
    s.p = p;
    s.t = t;
    s.dim = 3;
    return s;
}

bool PhaseState::finite() const {
    for (int k = 0; k < dim; ++k)
        if (!std::isfinite(x[k]) || !std::isfinite(p[k])) return false;
    return std::isfinite(t);
}

PotentialTerm power_term(double coupling, double degree) {
    PotentialTerm term;
    term.coupling = coupling;
    term.degree = degree;
    term.homogeneous = true;
    term.shape = "power";
    term.value = [degree](const Vec3& x, int) { return std::pow(std::abs(x[0]), degree); };
    term.grad = [degree](const Vec3& x, int) {
        Vec3 g{};
        if (x[0] == 0.0) {
            g[0] = 0.0;  // valid for degree > 1; lower degrees are rejected upstream
        } else {
            g[0] = degree * std::pow(std::abs(x[0]), degree - 1.0) * (x[0] > 0 ? 1.0 : -1.0);
        }
        return g;
    };
    return term;
}

PotentialTerm coulomb_term(double coupling) {
    PotentialTerm term;
    term.coupling = coupling;
    term.degree = -1.0;
    term.homogeneous = true;
    term.shape = "coulomb";
    term.value = [](const Vec3& x, int dim) { return -1.0 / norm(x, dim); };
    term.grad = [](const Vec3& x, int dim) {
        double r = norm(x, dim);
        double inv3 = 1.0 / (r * r * r);
        Vec3 g{};
        for (int k = 0; k < dim; ++k) g[k] = x[k] * inv3;
        return g;
    };
    return term;
}

PotentialTerm oscillator_xy_term(double coupling) {
    PotentialTerm term;
    term.coupling = coupling;
    term.degree = 2.0;
    term.homogeneous = true;
    term.shape = "oscillator_xy";
    term.value = [](const Vec3& x, int dim) {
        double rho2 = x[0] * x[0];
        if (dim >= 2) rho2 += x[1] * x[1];
        return rho2;
    };
    term.grad = [](const Vec3& x, int dim) {
        Vec3 g{};
        g[0] = 2.0 * x[0];
        if (dim >= 2) g[1] = 2.0 * x[1];
        return g;
    };
    return term;
}

Domain Domain::unbounded() { return Domain{}; }

Domain Domain::interval(double lo, double hi, BoundaryCondition bc) {
    require(lo < hi, ErrorKind::domain, "interval needs lo < hi");
    Domain d;
    d.kind = Kind::interval;
    d.lo = {lo, 0.0};
    d.hi = {hi, 0.0};
    d.bc = bc;
    return d;
}

Domain Domain::rectangle(double a, double b, BoundaryCondition bc) {
    require(a > 0 && b > 0, ErrorKind::domain, "rectangle needs positive side lengths");
    Domain d;
    d.kind = Kind::rectangle;
    d.lo = {0.0, 0.0};
    d.hi = {a, b};
    d.bc = bc;
    return d;
}

int Domain::wall_count() const {
    switch (kind) {
        case Kind::unbounded: return 0;
        case Kind::interval: return 1;
        case Kind::rectangle: return 2;
    }
    return 0;
}

void HamiltonianSpec::validate() const {
    require(mass > 0.0, ErrorKind::domain, "mass must be positive");
    require(hbar > 0.0, ErrorKind::domain, "hbar must be positive");
    require(dimension >= 1 && dimension <= kMaxDim, ErrorKind::domain,
            "dimension must be between 1 and " + std::to_string(kMaxDim));
    for (const auto& term : terms)
        require(static_cast<bool>(term.value) && static_cast<bool>(term.grad), ErrorKind::domain,
                "potential term lacks value/gradient evaluators");
    if (domain.kind == Domain::Kind::rectangle)
        require(dimension >= 2, ErrorKind::domain, "rectangle domain needs dimension >= 2");
}

double HamiltonianSpec::potential(const Vec3& x) const {
    double v = 0.0;
    for (const auto& term : terms) v += term.coupling * term.value(x, dimension);
    return v;
}

Vec3 HamiltonianSpec::force(const Vec3& x) const {
    Vec3 f{};
    for (const auto& term : terms) {
        Vec3 g = term.grad(x, dimension);
        for (int k = 0; k < dimension; ++k) f[k] -= term.coupling * g[k];
    }
    return f;
}

bool HamiltonianSpec::single_degree(double* nu) const {
    if (terms.empty()) return false;
    double first = terms.front().degree;
    for (const auto& term : terms)
        if (!term.homogeneous || term.degree != first) return false;
    if (nu) *nu = first;
    return true;
}

double evaluate_energy(const HamiltonianSpec& spec, const PhaseState& state) {
    require(state.dim == spec.dimension, ErrorKind::contract_violation,
            "state dimension does not match the Hamiltonian");
    require(state.finite(), ErrorKind::numeric, "non-finite phase-space state");
    double kinetic = dot(state.p, state.p, spec.dimension) / (2.0 * spec.mass);
    return kinetic + spec.potential(state.x);
}

namespace {

// Deterministic off-axis sample points kept away from origin and axes.
std::vector<Vec3> sample_points(int dim) {
    std::vector<Vec3> pts;
    const double coords[][3] = {
        {0.7, 0.0, 0.0},   {1.3, 0.0, 0.0},  {-0.9, 0.0, 0.0}, {2.1, 0.0, 0.0},
        {0.6, 1.1, 0.0},   {-1.2, 0.8, 0.0}, {0.4, -1.7, 0.3}, {1.1, 0.5, -0.9},
        {-0.8, -0.6, 1.4},
    };
    for (const auto& c : coords) {
        Vec3 v{};
        bool usable = true;
        for (int k = 0; k < dim; ++k) {
            v[k] = c[k];
            if (k == 0 && v[k] == 0.0) usable = false;
        }
        for (int k = dim; k < 3; ++k)
            if (c[k] != 0.0) usable = false;
        if (usable) pts.push_back(v);
    }
    return pts;
}

}  // namespace

double homogeneity_residual(const PotentialTerm& term, int dim) {
    if (!term.homogeneous) return 0.0;
    double worst = 0.0;
    for (const auto& x : sample_points(dim)) {
        double v = term.value(x, dim);
        for (double beta : {0.5, 2.0, 3.0}) {
            Vec3 bx{};
            for (int k = 0; k < dim; ++k) bx[k] = beta * x[k];
            double lhs = term.value(bx, dim);
            double rhs = std::pow(beta, term.degree) * v;
            double resid = std::abs(lhs - rhs) / std::max(1.0, std::abs(v));
            worst = std::max(worst, resid);
        }
    }
    return worst;
}

double gradient_residual(const PotentialTerm& term, int dim) {
    double worst = 0.0;
    for (const auto& x : sample_points(dim)) {
        Vec3 g = term.grad(x, dim);
        double scale = std::max(1.0, norm(g, dim));
        for (int k = 0; k < dim; ++k) {
            double h = 1e-6 * std::max(1.0, std::abs(x[k]));
            Vec3 xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            double fd = (term.value(xp, dim) - term.value(xm, dim)) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - g[k]) / scale);
        }
    }
    return worst;
}

HamiltonianSpec oscillator_system(double mass, double omega) {
    HamiltonianSpec spec;
    spec.mass = mass;
    spec.dimension = 1;
    spec.terms.push_back(power_term(0.5 * mass * omega * omega, 2.0));
    spec.validate();
    return spec;
}

HamiltonianSpec power_system(double mass, double coupling, double degree) {
    HamiltonianSpec spec;
    spec.mass = mass;
    spec.dimension = 1;
    spec.terms.push_back(power_term(coupling, degree));
    spec.validate();
    return spec;
}

HamiltonianSpec coulomb_system(double mass, double e2, int dimension) {
    HamiltonianSpec spec;
    spec.mass = mass;
    spec.dimension = dimension;
    spec.terms.push_back(coulomb_term(e2));
    spec.validate();
    return spec;
}

HamiltonianSpec diamagnetic_kepler_system(double mass, double e2, double omega) {
    HamiltonianSpec spec;
    spec.mass = mass;
    spec.dimension = 3;
    spec.terms.push_back(coulomb_term(e2));
    spec.terms.push_back(oscillator_xy_term(0.5 * mass * omega * omega));
    spec.validate();
    return spec;
}

HamiltonianSpec box_system(double a, double mass, double hbar) {
    require(a > 0, ErrorKind::domain, "box length must be positive");
    HamiltonianSpec spec;
    spec.mass = mass;
    spec.hbar = hbar;
    spec.dimension = 1;
    spec.domain = Domain::interval(0.0, a);
    spec.validate();
    return spec;
}

HamiltonianSpec rectangle_system(double a, double b, double mass, double hbar) {
    HamiltonianSpec spec;
    spec.mass = mass;
    spec.hbar = hbar;
    spec.dimension = 2;
    spec.domain = Domain::rectangle(a, b);
    spec.validate();
    return spec;
}

}  // namespace orbitscale
