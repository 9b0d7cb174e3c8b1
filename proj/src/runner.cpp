#include "sigals/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sigals/errors.hpp"
#include "sigals/stencils.hpp"

namespace sigals {

namespace {

std::string step_path(const std::string& dir, const char* stem, int step, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%06d.%s", stem, step, ext);
    return dir + "/" + buf;
}

// area/length in 2D, volume/surface-area in 3D.
std::pair<double, double> interface_measures(const State& state) {
    if (state.phi.grid().dim == 2) {
        const InterfaceCurve c = extract_interface_2d(state.phi, state.psi);
        return {enclosed_area(c), interface_length(c)};
    }
    const InterfaceMesh m = extract_interface_3d(state.phi, state.psi);
    return {enclosed_volume(m), surface_area(m)};
}

void write_step_contour(const State& state, const std::string& dir, int step) {
    if (state.phi.grid().dim == 2)
        write_contour(extract_interface_2d(state.phi, state.psi),
                      step_path(dir, "contour", step, "csv"));
    else
        write_contour(extract_interface_3d(state.phi, state.psi),
                      step_path(dir, "contour", step, "csv"));
}

void record_failure(const std::string& dir, int step, const std::string& message) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(dir + "/error.txt", std::ios::binary);
    out << "step = " << step << "\n";
    out << "message = " << message << "\n";
}

} // namespace

ReferenceSdf circle_collapse_reference(double r0, const Vec& center, double t) {
    const double r2 = r0 * r0 - 2.0 * t;
    if (r2 <= 0.0) throw NumericalError("circle_collapse reference: circle vanished before t");
    const double r = std::sqrt(r2);
    return [r, center](const Vec& x) -> std::pair<double, Vec> {
        const double dx = x[0] - center[0], dy = x[1] - center[1];
        const double rho = std::hypot(dx, dy);
        if (rho < 1e-14) return {-r, Vec{0.0, 0.0, 0.0}};
        return {rho - r, Vec{dx / rho, dy / rho, 0.0}};
    };
}

std::pair<ScalarField, VectorField> initial_fields(const ExperimentConfig& config,
                                                   const Grid& grid) {
    auto [phi, psi] = init_fields(config.shape, grid);
    if (config.shape2) {
        auto [phi2, psi2] = init_fields(*config.shape2, grid);
        for (std::size_t i = 0; i < phi.size(); ++i)
            if (phi2[i] < phi[i]) { // SDF union: keep the closer body
                phi[i] = phi2[i];
                psi.set(i, psi2.at(i));
            }
    }
    return {std::move(phi), std::move(psi)};
}

RunResult run(const ExperimentConfig& config) {
    config.validate();
    const Grid grid = make_grid(config.dim, config.n, config.origin, config.extent);
    const StepperConfig sc = config.stepper();
    const std::string& dir = config.directory;

    State state;
    std::tie(state.phi, state.psi) = initial_fields(config, grid);

    RunResult result;
    const int n_steps = config.t_end > 0.0
                            ? static_cast<int>(std::llround(config.t_end / config.dt))
                            : 0;

    auto emit = [&](int step_index, const StepStats& st) {
        const auto [area, length] = interface_measures(state);
        SeriesRow row;
        row.t = state.time;
        row.area = area;
        row.length = length;
        row.kappa_max = st.kappa_max;
        row.phi_coupling_error = coupling_error(state);
        row.solver_iters_phi = st.solver_iters_phi;
        row.solver_iters_psi_max = st.solver_iters_psi_max;
        result.series.push_back(row);

        write_step_contour(state, dir, step_index);
        if (config.write_fields)
            write_fields(state.phi, state.psi, state.time,
                         step_path(dir, "fields", step_index, "vtk"));
    };

    // Initial artifacts; kappa_max of the initial data for the t = 0 row.
    {
        StepStats st0;
        const BandMask band0 = build_band(state.phi, 0);
        const ScalarField k0 = curvature(state.psi, band0);
        for (std::size_t c : band0.adjacent_nodes())
            st0.kappa_max = std::max(st0.kappa_max, std::fabs(k0[c]));
        emit(0, st0);
    }

    for (int s = 1; s <= n_steps; ++s) {
        StepStats st;
        try {
            state = step(state, sc, config.mode, &st);
        } catch (const NumericalError& e) {
            record_failure(dir, s, e.what());
            throw NumericalError("step " + std::to_string(s) + ": " + e.what());
        }
        if (s % config.cadence == 0 || s == n_steps) emit(s, st);
    }

    write_series(result.series, dir + "/series.csv");

    if (config.reference) {
        const ReferenceSdf ref = circle_collapse_reference(config.reference->r0,
                                                           config.reference->center, state.time);
        const auto [ephi, epsi] = band_error(state.phi, state.psi, ref);
        result.errors = {ephi, epsi};
        write_errors({{"phi", ephi}, {"psi", epsi}}, dir + "/errors.csv");
    }

    result.final_state = std::move(state);
    return result;
}

StudyResult run_convergence_study(const ExperimentConfig& config) {
    config.validate();
    if (!config.study) throw ConfigError("study block required (study.n, study.dt)");
    if (!config.reference) throw ConfigError("convergence study needs a reference block");

    StudyResult out;
    for (int n : config.study->n_values) {
        ExperimentConfig sub = config;
        sub.study.reset();
        sub.n = n;
        sub.dt = config.study->dt_rule.dt(config.extent / n);
        sub.directory = config.directory + "/N" + std::to_string(n);
        // final-state artifacts only; intermediate contours add nothing here
        sub.cadence = std::max(1, static_cast<int>(std::llround(sub.t_end / sub.dt)));

        StudyRow phi_row, psi_row;
        phi_row.n = psi_row.n = n;
        phi_row.h = psi_row.h = config.extent / n;
        try {
            const RunResult r = run(sub);
            phi_row.l2 = r.errors->first.l2;
            phi_row.linf = r.errors->first.linf;
            psi_row.l2 = r.errors->second.l2;
            psi_row.linf = r.errors->second.linf;
        } catch (const NumericalError& e) {
            phi_row.failed = psi_row.failed = true;
            phi_row.failure = psi_row.failure = e.what();
        }
        out.phi_rows.push_back(phi_row);
        out.psi_rows.push_back(psi_row);
    }

    auto fill_orders = [](std::vector<StudyRow>& rows) {
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].failed || rows[i - 1].failed) continue;
            rows[i].l2_order = convergence_order(rows[i - 1].l2, rows[i].l2);
            rows[i].linf_order = convergence_order(rows[i - 1].linf, rows[i].linf);
        }
    };
    fill_orders(out.phi_rows);
    fill_orders(out.psi_rows);

    write_study(out.phi_rows, config.directory + "/study_phi.csv");
    write_study(out.psi_rows, config.directory + "/study_psi.csv");
    return out;
}

} // namespace sigals
