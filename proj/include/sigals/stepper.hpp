#ifndef SIGALS_STEPPER_HPP
#define SIGALS_STEPPER_HPP

#include "sigals/geometry.hpp"
#include "sigals/hermite.hpp"
#include "sigals/linsolve.hpp"

namespace sigals {

enum class Scheme { SIGALS, ExplicitGALS, StandardSemiImplicit };

struct StepperConfig {
    double beta = 0.5;
    double dt = 0.0;
    OperatorKind op = OperatorKind::IdentityMinusScaledLaplacian;
    Scheme scheme = Scheme::SIGALS;
    double solver_tol = 1e-8;
    int solver_max_iter = 5000;
    bool warm_start = false; // ships disabled; zero initial guess by default
    VelocityOptions velocity{};

    static OperatorKind operator_for(FlowMode mode) {
        return mode == FlowMode::MeanCurvature ? OperatorKind::IdentityMinusScaledLaplacian
                                               : OperatorKind::IdentityMinusScaledBiharmonic;
    }
};

struct State {
    ScalarField phi;
    VectorField psi;
    double time = 0.0;
};

struct StepStats {
    int solver_iters_phi = 0;
    int solver_iters_psi_max = 0;
    std::size_t patches_built = 0;
    double kappa_max = 0.0;
    std::size_t band_nodes = 0;
};

// x_d = x - dt*v(x); periodic reduction is deferred to locate_cell.
Vec departure_point(const Vec& x, const Vec& v, double dt);

// I - dt * J with J_ab = d v_a / d x_b, J from the isotropic stencils
// applied to the assembled velocity field at the given node.
Mat departure_gradient(const VectorField& v, std::size_t node, double dt);

struct Prediction {
    ScalarField phi_tilde;
    VectorField psi_tilde;
    std::size_t patches_built = 0;
};

// Tentative Lagrangian solutions: phi_tilde = P(x_d) and
// psi_tilde = (grad x_d) . G(x_d), with P, G evaluated on the Hermite patch
// of the cell owning the departure point. Nodes with exactly zero velocity
// are copied through untouched.
Prediction predict(const State& state, const VectorField& v, double dt);

struct CorrectionResult {
    State state;
    int iters_phi = 0;
    int iters_psi_max = 0;
};

// Semi-implicit correction: (I - dt beta L) phi_{n+1} = phi_tilde - dt beta L phi_n,
// and the same-shaped system for every psi component.
CorrectionResult correct(const ScalarField& phi_tilde, const VectorField& psi_tilde,
                         const State& state, const StepperConfig& config);

// One full time step: velocity assembly, prediction (scheme-dependent), then
// the implicit correction (skipped entirely for ExplicitGALS / beta = 0).
State step(const State& state, const StepperConfig& config, FlowMode mode,
           StepStats* stats = nullptr);

// Band-restricted L2 discrepancy between psi and the stencil gradient of phi;
// the coupling diagnostic reported in time series.
double coupling_error(const State& state);

} // namespace sigals

#endif
