// orbitscale: periodic orbits, scaling transformations, quantum spectra,
// and recurrence-spectrum analysis, driven by JSON system configs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "orbitscale/config.hpp"
#include "orbitscale/dynamics.hpp"
#include "orbitscale/orbits.hpp"
#include "orbitscale/oscillations.hpp"
#include "orbitscale/qspec.hpp"
#include "orbitscale/report.hpp"
#include "orbitscale/scaling.hpp"

namespace fs = std::filesystem;
using namespace orbitscale;
using nlohmann::json;

namespace {

struct Common {
    std::string system_file;
    std::string out_dir = "orbitscale_out";
    double tol = 1e-8;
};

fs::path prepare_out(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

template <typename Writer>
void emit_file(Manifest& manifest, const fs::path& dir, const std::string& name,
               Writer&& writer) {
    std::ofstream out(dir / name);
    require(out.good(), ErrorKind::domain, "cannot write " + (dir / name).string());
    writer(out);
    manifest.files.push_back(name);
}

void finish(Manifest& manifest, Report& report, const fs::path& dir) {
    if (!report.rows.empty()) {
        report.print(std::cout);
        emit_file(manifest, dir, "report.json",
                  [&](std::ostream& out) { out << report.to_json().dump(2) << '\n'; });
    }
    manifest.write(dir);
}

json orbit_json(const PeriodicOrbit& orbit) {
    json j;
    j["energy"] = orbit.energy;
    j["period"] = orbit.period;
    j["action"] = orbit.action;
    j["arclength"] = orbit.arclength;
    j["time_action"] = orbit.time_action;
    j["closure_residual"] = orbit.closure_residual;
    j["x_max"] = orbit.x_max;
    if (orbit.turning_points)
        j["turning_points"] = {(*orbit.turning_points)[0], (*orbit.turning_points)[1]};
    j["characteristic_length"] =
        characteristic_length(orbit.action, orbit.energy, orbit.spec.mass);
    j["local_energy_period"] = local_energy_period(orbit);
    return j;
}

// Orbit construction shared by the scale/check commands: turning-point
// search in 1D, or a circular orbit at --radius for planar central fields.
PeriodicOrbit build_orbit(const HamiltonianSpec& spec, double energy, double dt, double radius) {
    if (spec.dimension == 1) {
        OrbitOptions options;
        options.trace_dt = dt;
        return find_orbit_1d(spec, energy, options);
    }
    require(radius > 0.0, ErrorKind::domain,
            "multi-dimensional systems need --radius to pick a circular orbit");
    return circular_orbit(spec, radius);
}

SpectrumResult spectrum_from_system(const HamiltonianSpec& spec, int levels, double x_lo,
                                    double x_hi, int fd_grid) {
    if (spec.terms.empty() && spec.domain.kind == Domain::Kind::interval)
        return box_levels(spec.domain.hi[0] - spec.domain.lo[0], levels, spec.mass, spec.hbar);
    if (spec.terms.empty() && spec.domain.kind == Domain::Kind::rectangle)
        return rectangle_levels(spec.domain.hi[0], spec.domain.hi[1], levels, spec.mass,
                                spec.hbar);
    if (spec.terms.size() == 1 && spec.terms[0].shape == "power" && spec.terms[0].degree == 2.0) {
        double omega = std::sqrt(2.0 * spec.terms[0].coupling / spec.mass);
        return oscillator_levels(omega, levels, spec.hbar);
    }
    if (spec.terms.size() == 1 && spec.terms[0].shape == "coulomb")
        return coulomb_levels(spec.terms[0].coupling, levels, spec.mass, spec.hbar);
    require(spec.dimension == 1 && x_lo < x_hi, ErrorKind::domain,
            "no analytic levels for this system; provide --xlo/--xhi for the "
            "finite-difference solver");
    return fd_spectrum_1d(spec, x_lo, x_hi, fd_grid, levels);
}

int guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return err.kind() == ErrorKind::schema ? 2 : 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodic orbits, scaling laws, spectra, and recurrence analysis"};
    app.require_subcommand(1);

    Common common;
    double energy = 1.0;
    double delta = 1e-4;
    double alpha = 2.0;
    double dt = 0.0;
    double radius = 0.0;
    int anchor = 0;

    // ---- orbit find | invariants
    auto* orbit_cmd = app.add_subcommand("orbit", "find a periodic orbit and its invariants");
    orbit_cmd->require_subcommand(1);
    auto* orbit_find = orbit_cmd->add_subcommand("find", "orbit trace plus invariants");
    auto* orbit_inv = orbit_cmd->add_subcommand("invariants", "invariants only");
    for (auto* cmd : {orbit_find, orbit_inv}) {
        cmd->add_option("--system", common.system_file, "system JSON file")->required();
        cmd->add_option("--energy", energy, "orbit energy")->required();
        cmd->add_option("--dt", dt, "trace step (default period/1e5)");
        cmd->add_option("--radius", radius, "circular-orbit radius for planar systems");
        cmd->add_option("--out", common.out_dir, "output directory");
    }

    // ---- scale coupling | homogeneous | mixed
    auto* scale_cmd = app.add_subcommand("scale", "apply a scaling transformation to an orbit");
    scale_cmd->require_subcommand(1);
    auto* scale_coupling_cmd = scale_cmd->add_subcommand("coupling", "lambda, E -> a^2 lambda, a^2 E");
    auto* scale_homog_cmd = scale_cmd->add_subcommand("homogeneous", "dilation of a homogeneous potential");
    auto* scale_mixed_cmd = scale_cmd->add_subcommand("mixed", "anchor coupling fixed, others follow");
    for (auto* cmd : {scale_coupling_cmd, scale_homog_cmd, scale_mixed_cmd}) {
        cmd->add_option("--system", common.system_file, "system JSON file")->required();
        cmd->add_option("--energy", energy, "reference orbit energy")->required();
        cmd->add_option("--alpha", alpha, "scaling parameter")->required();
        cmd->add_option("--dt", dt, "trace step");
        cmd->add_option("--radius", radius, "circular-orbit radius for planar systems");
        cmd->add_option("--tol", common.tol, "pass/fail tolerance for the law residuals");
        cmd->add_option("--out", common.out_dir, "output directory");
    }
    scale_mixed_cmd->add_option("--anchor", anchor, "index of the fixed-coupling term");

    // ---- spectrum analytic | fd
    auto* spectrum_cmd = app.add_subcommand("spectrum", "quantum spectra");
    spectrum_cmd->require_subcommand(1);
    auto* spec_analytic = spectrum_cmd->add_subcommand("analytic", "closed-form levels");
    std::string kind_name = "box";
    AnalyticParams aparams;
    int count = 100;
    spec_analytic->add_option("--kind", kind_name, "box|oscillator|coulomb")->required();
    spec_analytic->add_option("--count", count, "number of levels")->required();
    spec_analytic->add_option("--a", aparams.a, "box side");
    spec_analytic->add_option("--b", aparams.b, "second side (rectangle)");
    spec_analytic->add_option("--omega", aparams.omega, "oscillator frequency");
    spec_analytic->add_option("--e2", aparams.e2, "Coulomb coupling");
    spec_analytic->add_option("--mass", aparams.mass, "mass");
    spec_analytic->add_option("--hbar", aparams.hbar, "hbar");
    spec_analytic->add_option("--out", common.out_dir, "output directory");

    auto* spec_fd = spectrum_cmd->add_subcommand("fd", "finite-difference Dirichlet levels");
    double x_lo = 0.0, x_hi = 0.0;
    int grid_n = 4000;
    spec_fd->add_option("--system", common.system_file, "system JSON file")->required();
    spec_fd->add_option("--xlo", x_lo, "left edge")->required();
    spec_fd->add_option("--xhi", x_hi, "right edge")->required();
    spec_fd->add_option("--grid-n", grid_n, "grid intervals");
    spec_fd->add_option("--count", count, "number of levels")->required();
    spec_fd->add_option("--out", common.out_dir, "output directory");

    // ---- oscillate
    auto* osc_cmd = app.add_subcommand("oscillate", "oscillatory DOS and recurrence peaks");
    std::string map_name = "omega";
    int levels = 2000;
    int osc_grid = 1 << 17;
    int detrend_degree = 3;
    double sigma = 0.0;
    double e0 = 0.0;
    double map_nu = 0.0;
    std::string window_name = "hann";
    double match_tol = 0.0;
    int catalog_n = 6;
    int fd_grid = 20000;
    osc_cmd->add_option("--system", common.system_file, "system JSON file")->required();
    osc_cmd->add_option("--map", map_name, "omega|homogeneous|gamma|raw");
    osc_cmd->add_option("--levels", levels, "number of levels to analyze");
    osc_cmd->add_option("--sigma", sigma, "kernel width in s (default 6 grid steps)");
    osc_cmd->add_option("--grid-n", osc_grid, "DOS grid size");
    osc_cmd->add_option("--detrend", detrend_degree, "detrend polynomial degree");
    osc_cmd->add_option("--window", window_name, "hann|rect");
    osc_cmd->add_option("--e0", e0, "reference energy for the homogeneous map");
    osc_cmd->add_option("--nu", map_nu, "degree for the homogeneous map");
    osc_cmd->add_option("--tol", match_tol, "match tolerance (default 5 bins)");
    osc_cmd->add_option("--catalog-n", catalog_n, "billiard catalog depth");
    osc_cmd->add_option("--xlo", x_lo, "FD fallback left edge");
    osc_cmd->add_option("--xhi", x_hi, "FD fallback right edge");
    osc_cmd->add_option("--fd-grid", fd_grid, "FD fallback grid");
    osc_cmd->add_option("--out", common.out_dir, "output directory");

    // ---- loci
    auto* loci_cmd = app.add_subcommand("loci", "level loci over a coupling grid");
    std::string loci_kind_name = "oscillator";
    int n_max = 4;
    std::vector<double> couplings;
    loci_cmd->add_option("--kind", loci_kind_name, "oscillator|coulomb")->required();
    loci_cmd->add_option("--n-max", n_max, "levels per coupling");
    loci_cmd->add_option("--couplings", couplings, "coupling grid")->required()->expected(-1);
    loci_cmd->add_option("--out", common.out_dir, "output directory");

    // ---- check virial | dsde | scaling
    auto* check_cmd = app.add_subcommand("check", "identity checks with pass/fail report");
    check_cmd->require_subcommand(1);
    auto* check_virial = check_cmd->add_subcommand("virial", "time-average of the potential");
    auto* check_dsde = check_cmd->add_subcommand("dsde", "action-period theorem");
    auto* check_scaling = check_cmd->add_subcommand("scaling", "scaling-law residuals");
    std::string scaling_kind_name = "coupling";
    for (auto* cmd : {check_virial, check_dsde, check_scaling}) {
        cmd->add_option("--system", common.system_file, "system JSON file")->required();
        cmd->add_option("--energy", energy, "orbit energy")->required();
        cmd->add_option("--dt", dt, "trace step");
        cmd->add_option("--radius", radius, "circular-orbit radius for planar systems");
        cmd->add_option("--out", common.out_dir, "output directory");
    }
    check_virial->add_option("--tol", common.tol, "tolerance");
    check_dsde->add_option("--delta", delta, "stencil half-width");
    check_dsde->add_option("--tol", common.tol, "tolerance");
    check_scaling->add_option("--alpha", alpha, "scaling parameter");
    check_scaling->add_option("--kind", scaling_kind_name, "coupling|homogeneous|mixed");
    check_scaling->add_option("--anchor", anchor, "anchor term (mixed)");
    check_scaling->add_option("--tol", common.tol, "tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    return guarded([&] {
        fs::path out = prepare_out(common.out_dir);
        Manifest manifest;
        Report report;

        if (orbit_find->parsed() || orbit_inv->parsed()) {
            HamiltonianSpec spec = load_system(common.system_file);
            PeriodicOrbit orbit = build_orbit(spec, energy, dt, radius);
            manifest.task = orbit_find->parsed() ? "orbit find" : "orbit invariants";
            manifest.config = {{"system", common.system_file}, {"energy", energy}};
            manifest.invariants = orbit_json(orbit);
            std::cout << manifest.invariants.dump(2) << '\n';
            emit_file(manifest, out, "orbit.json",
                      [&](std::ostream& o) { o << manifest.invariants.dump(2) << '\n'; });
            if (orbit_find->parsed())
                emit_file(manifest, out, "trace.csv",
                          [&](std::ostream& o) { orbit.trace.write_csv(o); });
            report.add("closure residual", 0.0, orbit.closure_residual, orbit.closure_residual,
                       1e-8);
            finish(manifest, report, out);
            return;
        }

        if (scale_coupling_cmd->parsed() || scale_homog_cmd->parsed() ||
            scale_mixed_cmd->parsed()) {
            HamiltonianSpec spec = load_system(common.system_file);
            PeriodicOrbit orbit = build_orbit(spec, energy, dt, radius);
            ScalingResult result;
            if (scale_coupling_cmd->parsed())
                result = scale_coupling(orbit, alpha);
            else if (scale_homog_cmd->parsed())
                result = scale_homogeneous(orbit, alpha);
            else
                result = scale_mixed(orbit, alpha, anchor);
            manifest.task = std::string("scale ") + to_string(result.kind);
            manifest.config = {{"system", common.system_file},
                               {"energy", energy},
                               {"alpha", alpha},
                               {"anchor", anchor}};
            manifest.invariants = {{"new_energy", result.new_energy},
                                   {"new_couplings", result.new_couplings},
                                   {"predicted_period", result.predicted_period},
                                   {"predicted_action", result.predicted_action},
                                   {"measured_period", result.measured_period},
                                   {"measured_action", result.measured_action},
                                   {"gamma", result.gamma}};
            emit_file(manifest, out, "scaling.csv",
                      [&](std::ostream& o) { result.write_csv(o); });
            report.add("period law T' = c T", result.predicted_period, result.measured_period,
                       result.period_law_residual(), common.tol);
            report.add("action law S' = c S", result.predicted_action, result.measured_action,
                       result.action_law_residual(), common.tol);
            report.add("scaled equations of motion", 0.0, result.eom_residual,
                       result.eom_residual, 1e-6);
            report.add("scaled energy surface", result.new_energy, result.new_energy,
                       result.energy_residual, 1e-6);
            finish(manifest, report, out);
            return;
        }

        if (spec_analytic->parsed() || spec_fd->parsed()) {
            SpectrumResult spectrum;
            if (spec_analytic->parsed()) {
                AnalyticKind kind;
                if (kind_name == "box")
                    kind = AnalyticKind::box;
                else if (kind_name == "oscillator")
                    kind = AnalyticKind::oscillator;
                else if (kind_name == "coulomb")
                    kind = AnalyticKind::coulomb;
                else
                    fail(ErrorKind::schema, "unknown spectrum kind \"" + kind_name + "\"");
                spectrum = analytic_spectrum(kind, aparams, count);
                manifest.task = "spectrum analytic";
                manifest.config = {{"kind", kind_name}, {"count", count}};
            } else {
                HamiltonianSpec spec = load_system(common.system_file);
                spectrum = fd_spectrum_1d(spec, x_lo, x_hi, grid_n, count);
                manifest.task = "spectrum fd";
                manifest.config = {{"system", common.system_file},
                                   {"interval", {x_lo, x_hi}},
                                   {"grid_n", grid_n},
                                   {"count", count}};
            }
            manifest.invariants = {{"count", spectrum.count()},
                                   {"lowest", spectrum.levels.front()},
                                   {"highest", spectrum.levels.back()}};
            emit_file(manifest, out, "spectrum.csv",
                      [&](std::ostream& o) { spectrum.write_csv(o); });
            finish(manifest, report, out);
            return;
        }

        if (osc_cmd->parsed()) {
            HamiltonianSpec spec = load_system(common.system_file);
            SpectrumResult spectrum = spectrum_from_system(spec, levels, x_lo, x_hi, fd_grid);

            ScaledVariableMap map = ScaledVariableMap::omega();
            if (map_name == "omega") {
                map = ScaledVariableMap::omega();
            } else if (map_name == "homogeneous") {
                double nu = map_nu;
                if (nu == 0.0)
                    require(spec.single_degree(&nu), ErrorKind::map,
                            "give --nu for systems without a single degree");
                map = ScaledVariableMap::homogeneous(nu, e0 != 0.0 ? e0 : spectrum.levels.front());
            } else if (map_name == "gamma") {
                map = ScaledVariableMap::gamma_field();
            } else if (map_name == "raw") {
                map = ScaledVariableMap::raw_energy();
            } else {
                fail(ErrorKind::schema, "unknown map \"" + map_name + "\"");
            }

            std::vector<double> s_check = {map_variable(spectrum.levels.front(), map),
                                           map_variable(spectrum.levels.back(), map)};
            double s_span = std::abs(s_check[1] - s_check[0]);
            if (sigma == 0.0) sigma = 6.0 * s_span / (osc_grid - 1);

            RecurrencePeaks dos = oscillatory_dos(spectrum, map, sigma, detrend_degree, osc_grid);
            RecurrenceOptions ropts;
            ropts.window = window_name == "rect" ? WindowKind::rect : WindowKind::hann;
            RecurrencePeaks peaks = recurrence_spectrum(dos, ropts);

            manifest.task = "oscillate";
            manifest.config = {{"system", common.system_file}, {"map", map_name},
                               {"levels", levels},            {"sigma", sigma},
                               {"grid_n", osc_grid},          {"detrend", detrend_degree}};
            manifest.invariants = {{"bin_width", peaks.bin_width},
                                   {"noise_floor", peaks.noise_floor},
                                   {"peak_count", peaks.peaks.size()}};
            emit_file(manifest, out, "dos.csv",
                      [&](std::ostream& o) { peaks.write_dos_csv(o); });

            FrequencyPredictions predictions;
            bool billiard = spec.terms.empty() && spec.domain.wall_count() > 0 &&
                            map.kind == ScaledVariableMap::Kind::omega;
            if (billiard) {
                OrbitCatalog catalog =
                    spec.domain.kind == Domain::Kind::interval
                        ? rectangle_orbit_lengths(spec.domain.hi[0] - spec.domain.lo[0],
                                                  std::nullopt, catalog_n, spec.mass, spec.hbar)
                        : rectangle_orbit_lengths(spec.domain.hi[0], spec.domain.hi[1], catalog_n,
                                                  spec.mass, spec.hbar);
                predictions = catalog_frequencies(catalog, map);
            }
            double tol = match_tol > 0.0 ? match_tol : 5.0 * peaks.bin_width;
            MatchReport match = match_orbits(peaks, predictions, tol);
            emit_file(manifest, out, "peaks.csv", [&](std::ostream& o) { match.write_csv(o); });
            if (!predictions.empty() && peaks.strongest()) {
                const Peak* top = peaks.strongest();
                double nearest = predictions.front().second;
                for (const auto& pred : predictions)
                    if (std::abs(pred.second - top->frequency) < std::abs(nearest - top->frequency))
                        nearest = pred.second;
                report.add("fundamental peak vs catalog", nearest, top->frequency,
                           std::abs(top->frequency - nearest), tol);
            }
            finish(manifest, report, out);
            return;
        }

        if (loci_cmd->parsed()) {
            LociKind kind;
            if (loci_kind_name == "oscillator")
                kind = LociKind::oscillator;
            else if (loci_kind_name == "coulomb")
                kind = LociKind::coulomb;
            else
                fail(ErrorKind::schema, "unknown loci kind \"" + loci_kind_name + "\"");
            auto rows = level_loci(kind, n_max, couplings);
            manifest.task = "loci";
            manifest.config = {{"kind", loci_kind_name}, {"n_max", n_max},
                               {"couplings", couplings}};
            manifest.invariants = {{"rows", rows.size()}};
            emit_file(manifest, out, "loci.csv",
                      [&](std::ostream& o) { write_loci_csv(o, rows); });
            // Constancy of the transmuted combination across the grid.
            double worst = 0.0;
            for (const auto& row : rows) {
                double expected = kind == LociKind::oscillator
                                      ? row.n + 0.5
                                      : -0.25 / (static_cast<double>(row.n) * row.n);
                worst = std::max(worst,
                                 std::abs(row.scaled_energy - expected) / std::abs(expected));
            }
            report.add("E_n x0^2 level loci", 0.0, worst, worst, 1e-12);
            finish(manifest, report, out);
            return;
        }

        if (check_virial->parsed() || check_dsde->parsed() || check_scaling->parsed()) {
            HamiltonianSpec spec = load_system(common.system_file);
            if (check_virial->parsed()) {
                PeriodicOrbit orbit = build_orbit(spec, energy, dt, radius);
                VirialReport vr = virial_report(orbit);
                manifest.task = "check virial";
                report.add("virial identity residual", 0.0, vr.residual, vr.residual, common.tol);
                report.add("S/2E Legendre identity", 0.0, vr.legendre_residual,
                           vr.legendre_residual, common.tol);
            } else if (check_dsde->parsed()) {
                if (common.tol == 1e-8) common.tol = 1e-6;
                DsDeReport dr = ds_de_check(spec, energy, delta);
                manifest.task = "check dsde";
                report.add("dS/dE vs T", dr.period, dr.ds_de, dr.residual, common.tol);
            } else {
                PeriodicOrbit orbit = build_orbit(spec, energy, dt, radius);
                ScalingResult result;
                if (scaling_kind_name == "coupling")
                    result = scale_coupling(orbit, alpha);
                else if (scaling_kind_name == "homogeneous")
                    result = scale_homogeneous(orbit, alpha);
                else if (scaling_kind_name == "mixed")
                    result = scale_mixed(orbit, alpha, anchor);
                else
                    fail(ErrorKind::schema, "unknown scaling kind \"" + scaling_kind_name + "\"");
                manifest.task = "check scaling";
                report.add("period law", result.predicted_period, result.measured_period,
                           result.period_law_residual(), common.tol);
                report.add("action law", result.predicted_action, result.measured_action,
                           result.action_law_residual(), common.tol);
                report.add("scaled equations of motion", 0.0, result.eom_residual,
                           result.eom_residual, std::max(common.tol, 1e-7));
            }
            manifest.config = {{"system", common.system_file}, {"energy", energy}};
            finish(manifest, report, out);
            if (!report.all_pass()) std::exit(1);
            return;
        }
    });
}
