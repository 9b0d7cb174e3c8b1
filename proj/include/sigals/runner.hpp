#ifndef SIGALS_RUNNER_HPP
#define SIGALS_RUNNER_HPP

#include <utility>

#include "sigals/config.hpp"
#include "sigals/io.hpp"

namespace sigals {

struct RunResult {
    State final_state;
    std::vector<SeriesRow> series;
    std::optional<std::pair<ErrorReport, ErrorReport>> errors; // phi, psi
};

// Steps from t = 0 to t_end, writing contours, time series and (optionally)
// full fields at the output cadence; analytic-reference runs also write an
// error report. Numerical failures abort with a machine-readable error record
// including the step index.
RunResult run(const ExperimentConfig& config);

struct StudyResult {
    std::vector<StudyRow> phi_rows;
    std::vector<StudyRow> psi_rows;
};

// One row per resolution with h, L2, order, Linf, order for both phi and psi.
// Per-resolution failures are recorded; the table is still emitted for the
// rows that completed.
StudyResult run_convergence_study(const ExperimentConfig& config);

// Analytic reference for the collapsing circle: SDF of radius
// sqrt(r0^2 - 2t), gradient the radial unit vector.
ReferenceSdf circle_collapse_reference(double r0, const Vec& center, double t);

// Initial fields for the experiment (handles the optional shape2 min-union).
std::pair<ScalarField, VectorField> initial_fields(const ExperimentConfig& config,
                                                   const Grid& grid);

} // namespace sigals

#endif
