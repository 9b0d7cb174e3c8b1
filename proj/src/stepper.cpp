#include "sigals/stepper.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "sigals/errors.hpp"
#include "sigals/stencils.hpp"

namespace sigals {

Vec departure_point(const Vec& x, const Vec& v, double dt) {
    return x - dt * v;
}

Mat departure_gradient(const VectorField& v, std::size_t node, double dt) {
    const Grid& g = v.grid();
    const int n = g.n;
    const int i = static_cast<int>(node % n);
    const int j = static_cast<int>((node / n) % n);
    const int k = static_cast<int>(node / (static_cast<std::size_t>(n) * n));

    Mat m = identity_mat();
    for (int a = 0; a < g.dim; ++a) {
        const ScalarField va(g, v.comp(a));
        for (int b = 0; b < g.dim; ++b) m[a][b] -= dt * diff1_at(va, b, i, j, k);
    }
    return m;
}

Prediction predict(const State& state, const VectorField& v, double dt) {
    const Grid& g = state.phi.grid();
    Prediction out{ScalarField(g), VectorField(g), 0};
    const CrossDerivatives cross = node_cross_derivatives(state.psi);

    // Gradients of the velocity components, for the departure Jacobian.
    std::array<std::array<ScalarField, 3>, 3> dv; // dv[a][b] = d v_a / d x_b
    for (int a = 0; a < g.dim; ++a) {
        const ScalarField va(g, v.comp(a));
        for (int b = 0; b < g.dim; ++b) dv[a][b] = diff1(va, b);
    }

    std::unordered_map<std::size_t, HermitePatch> patches;
    const int nk = g.dim == 3 ? g.n : 1;
    for (int k = 0; k < nk; ++k)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                const std::size_t c = g.index(i, j, k);
                const Vec vel = v.at(c);
                if (vel[0] == 0.0 && vel[1] == 0.0 && vel[2] == 0.0) {
                    // Far field: the departure point is the node itself and
                    // the patch reproduces nodal data, so copy through.
                    out.phi_tilde[c] = state.phi[c];
                    out.psi_tilde.set(c, state.psi.at(c));
                    continue;
                }
                if (!std::isfinite(vel[0]) || !std::isfinite(vel[1]) || !std::isfinite(vel[2]))
                    throw NumericalError("predict: non-finite velocity at a band node");

                const Vec xd = departure_point(g.position(i, j, k), vel, dt);
                const CellLocation loc = locate_cell(g, xd);
                const std::size_t key = g.index(loc.cell[0], loc.cell[1], loc.cell[2]);
                auto it = patches.find(key);
                if (it == patches.end()) {
                    it = patches.emplace(key, build_patch(g, state.phi, state.psi, cross,
                                                          loc.cell)).first;
                }
                const PatchSample s = eval_patch(it->second, loc.local);
                out.phi_tilde[c] = s.value;

                // psi_tilde_a = sum_b (I - dt J)_ba G_b  (chain rule of P(x_d))
                // The linearized flow-map gradient is only meaningful while
                // dt*|grad v| < 1; at velocity creases (medial skeletons of
                // the extended field) it would flip psi's orientation, so the
                // correction is scaled back into its validity region there.
                double fro2 = 0.0;
                for (int a = 0; a < g.dim; ++a)
                    for (int b = 0; b < g.dim; ++b) fro2 += dv[a][b][c] * dv[a][b][c];
                const double jnorm = dt * std::sqrt(fro2);
                const double damp = jnorm > 0.9 ? 0.9 / jnorm : 1.0;
                Mat m = identity_mat();
                for (int a = 0; a < g.dim; ++a)
                    for (int b = 0; b < g.dim; ++b) m[a][b] -= damp * dt * dv[a][b][c];
                Vec pt{};
                for (int a = 0; a < g.dim; ++a) {
                    double s_a = 0.0;
                    for (int b = 0; b < g.dim; ++b) s_a += m[b][a] * s.gradient[b];
                    pt[a] = s_a;
                }
                out.psi_tilde.set(c, pt);
            }
    out.patches_built = patches.size();
    return out;
}

CorrectionResult correct(const ScalarField& phi_tilde, const VectorField& psi_tilde,
                         const State& state, const StepperConfig& config) {
    const Grid& g = phi_tilde.grid();
    const LinearOperator op{config.op, config.dt * config.beta, g};

    auto solve_one = [&](const ScalarField& tilde, const ScalarField& prev, int& iters) {
        ScalarField rhs = op.apply_l(prev);
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = tilde[i] - op.scale * rhs[i];
        const ScalarField* guess = config.warm_start ? &prev : nullptr;
        SolveResult r = solve_bicgstab(op, rhs, config.solver_tol, config.solver_max_iter, guess);
        iters = r.iterations;
        return std::move(r.x);
    };

    CorrectionResult out;
    out.state.time = state.time;
    out.state.phi = solve_one(phi_tilde, state.phi, out.iters_phi);
    out.state.psi = VectorField(g);
    for (int a = 0; a < g.dim; ++a) {
        int iters = 0;
        out.state.psi.comp(a) = solve_one(ScalarField(g, psi_tilde.comp(a)),
                                          ScalarField(g, state.psi.comp(a)), iters).values();
        out.iters_psi_max = std::max(out.iters_psi_max, iters);
    }
    return out;
}

namespace {

// Explicit Eulerian advection used by the standard semi-implicit scheme:
// phi_tilde = phi - dt v.grad(phi), and the matching gradient-field form
// psi_tilde = psi - dt (v.grad(psi) + grad(v).psi). No Hermite patches.
Prediction eulerian_predict(const State& state, const VectorField& v, double dt) {
    const Grid& g = state.phi.grid();
    Prediction out{state.phi, state.psi, 0};

    std::array<ScalarField, 3> dphi;
    std::array<std::array<ScalarField, 3>, 3> dpsi; // dpsi[a][b] = d psi_a / d x_b
    std::array<std::array<ScalarField, 3>, 3> dv;
    for (int b = 0; b < g.dim; ++b) {
        dphi[b] = diff1(state.phi, b);
        for (int a = 0; a < g.dim; ++a) {
            dpsi[a][b] = diff1(ScalarField(g, state.psi.comp(a)), b);
            dv[a][b] = diff1(ScalarField(g, v.comp(a)), b);
        }
    }
    for (std::size_t c = 0; c < g.node_count(); ++c) {
        const Vec vel = v.at(c);
        if (vel[0] == 0.0 && vel[1] == 0.0 && vel[2] == 0.0) continue;
        double adv = 0.0;
        for (int b = 0; b < g.dim; ++b) adv += vel[b] * dphi[b][c];
        out.phi_tilde[c] = state.phi[c] - dt * adv;
        for (int a = 0; a < g.dim; ++a) {
            double t = 0.0;
            for (int b = 0; b < g.dim; ++b)
                t += vel[b] * dpsi[a][b][c] + dv[b][a][c] * state.psi.comp(b)[c];
            out.psi_tilde.comp(a)[c] = state.psi.comp(a)[c] - dt * t;
        }
    }
    return out;
}

} // namespace

State step(const State& state, const StepperConfig& config, FlowMode mode, StepStats* stats) {
    const VelocityField vel = compute_velocity(state.phi, state.psi, mode, config.velocity);

    Prediction pred;
    if (config.scheme == Scheme::StandardSemiImplicit)
        pred = eulerian_predict(state, vel.v, config.dt);
    else
        pred = predict(state, vel.v, config.dt);

    State next;
    StepStats st;
    st.patches_built = pred.patches_built;
    st.kappa_max = vel.kappa_max_adjacent;
    st.band_nodes = vel.band.band_nodes().size();

    if (config.scheme == Scheme::ExplicitGALS || config.beta == 0.0) {
        next.phi = std::move(pred.phi_tilde);
        next.psi = std::move(pred.psi_tilde);
        next.time = state.time;
    } else {
        CorrectionResult corr = correct(pred.phi_tilde, pred.psi_tilde, state, config);
        next = std::move(corr.state);
        st.solver_iters_phi = corr.iters_phi;
        st.solver_iters_psi_max = corr.iters_psi_max;
    }
    next.time = state.time + config.dt;
    if (stats) *stats = st;
    return next;
}

double coupling_error(const State& state) {
    const BandMask band = build_band(state.phi, 1);
    if (band.adjacent_nodes().empty()) return 0.0;
    const VectorField dphi = gradient(state.phi);
    double sum = 0.0;
    for (std::size_t c : band.adjacent_nodes()) {
        const Vec d = state.psi.at(c) - dphi.at(c);
        sum += dot(d, d);
    }
    return std::sqrt(sum / band.adjacent_nodes().size());
}

} // namespace sigals
