#include <doctest.h>

#include <cmath>
#include <random>

#include "sigals/contour.hpp"
#include "sigals/shapes.hpp"
#include "sigals/stepper.hpp"

using namespace sigals;

namespace {

State circle_state(const Grid& g, double r0) {
    ShapeSpec s;
    s.kind = ShapeKind::Circle;
    s.radius = r0;
    State st;
    std::tie(st.phi, st.psi) = init_fields(s, g);
    return st;
}

State plane_state(const Grid& g) {
    State st;
    st.phi = ScalarField(g);
    st.psi = VectorField(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            st.phi.at(i, j) = g.position(i, j)[0];
            st.psi.set(g.index(i, j), {1.0, 0.0, 0.0});
        }
    return st;
}

bool states_equal(const State& a, const State& b) {
    for (std::size_t i = 0; i < a.phi.size(); ++i)
        if (a.phi[i] != b.phi[i]) return false;
    for (int ax = 0; ax < a.psi.dim(); ++ax)
        for (std::size_t i = 0; i < a.psi.comp(ax).size(); ++i)
            if (a.psi.comp(ax)[i] != b.psi.comp(ax)[i]) return false;
    return true;
}

double mean_interface_radius(const State& st) {
    const InterfaceCurve c = extract_interface_2d(st.phi, st.psi);
    REQUIRE(c.loops.size() == 1);
    double sum = 0.0;
    for (const Vec& p : c.loops[0]) sum += std::hypot(p[0], p[1]);
    return sum / c.loops[0].size();
}

} // namespace

TEST_CASE("departure point") {
    const Vec same = departure_point({1.0, 2.0, 0.0}, {0.0, 0.0, 0.0}, 0.5);
    CHECK(same[0] == 1.0);
    CHECK(same[1] == 2.0);
    const Vec xd = departure_point({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 0.1);
    CHECK(xd[0] == doctest::Approx(-0.1).epsilon(1e-14));
    CHECK(xd[1] == 0.0);
}

TEST_CASE("departure gradient from stencil velocity derivatives") {
    const Grid g = make_grid(2, 16, {-2, -2, 0}, 4.0);
    const double dt = 0.1;

    // constant velocity: identity
    VectorField vconst(g);
    for (std::size_t c = 0; c < g.node_count(); ++c) vconst.set(c, {0.7, -0.3, 0.0});
    const Mat mi = departure_gradient(vconst, g.index(8, 8), dt);
    CHECK(mi[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(mi[0][1]) < 1e-12);
    CHECK(std::fabs(mi[1][0]) < 1e-12);
    CHECK(mi[1][1] == doctest::Approx(1.0).epsilon(1e-12));

    // v = (x, 0): I - dt*diag(1, 0)
    VectorField vx(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) vx.set(g.index(i, j), {g.position(i, j)[0], 0.0, 0.0});
    const Mat mx = departure_gradient(vx, g.index(8, 8), dt);
    CHECK(mx[0][0] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(mx[1][1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(mx[0][1]) < 1e-12);
    CHECK(std::fabs(mx[1][0]) < 1e-12);

    // rigid rotation v = (-y, x): I - dt*[[0,-1],[1,0]]
    VectorField vr(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const Vec p = g.position(i, j);
            vr.set(g.index(i, j), {-p[1], p[0], 0.0});
        }
    const Mat mr = departure_gradient(vr, g.index(8, 8), dt);
    CHECK(mr[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mr[0][1] == doctest::Approx(dt).epsilon(1e-10));  // -dt * d(v_x)/dy = +dt
    CHECK(mr[1][0] == doctest::Approx(-dt).epsilon(1e-10)); // -dt * d(v_y)/dx = -dt
    CHECK(mr[1][1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("predict with zero velocity copies the state bitwise") {
    const Grid g = make_grid(2, 32, {-2, -2, 0}, 4.0);
    const State st = circle_state(g, 1.0);
    const VectorField v(g); // all zero
    const Prediction p = predict(st, v, 0.01);
    CHECK(p.patches_built == 0);
    for (std::size_t i = 0; i < st.phi.size(); ++i) CHECK(p.phi_tilde[i] == st.phi[i]);
    for (int a = 0; a < 2; ++a)
        for (std::size_t i = 0; i < st.phi.size(); ++i)
            CHECK(p.psi_tilde.comp(a)[i] == st.psi.comp(a)[i]);
}

TEST_CASE("predict translates a linear field exactly") {
    const Grid g = make_grid(2, 32, {-2, -2, 0}, 4.0);
    const State st = plane_state(g);
    VectorField v(g);
    const double c = 0.8, dt = 0.05;
    for (std::size_t i = 0; i < g.node_count(); ++i) v.set(i, {c, 0.0, 0.0});
    const Prediction p = predict(st, v, dt);
    for (int j = 4; j < g.n - 4; ++j)
        for (int i = 4; i < g.n - 4; ++i) {
            const std::size_t node = g.index(i, j);
            CHECK(p.phi_tilde[node] ==
                  doctest::Approx(g.position(i, j)[0] - c * dt).epsilon(1e-13));
            CHECK(p.psi_tilde.comp(0)[node] == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(std::fabs(p.psi_tilde.comp(1)[node]) < 1e-13);
        }
}

TEST_CASE("predict rotates the gradient with the inverse flow map") {
    // linear field under rigid rotation: after one step the exact gradient is
    // (cos dt, sin dt) ~ (1, dt); pins the chain-rule contraction order
    const Grid g = make_grid(2, 32, {-2, -2, 0}, 4.0);
    const State st = plane_state(g);
    VectorField v(g);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        const int ii = static_cast<int>(i % g.n), jj = static_cast<int>(i / g.n);
        const Vec p = g.position(ii, jj);
        v.set(i, {-p[1], p[0], 0.0});
    }
    const double dt = 0.01;
    const Prediction p = predict(st, v, dt);
    // interior node away from both the seam and the rotation center
    const std::size_t node = g.index(20, 16);
    CHECK(p.psi_tilde.comp(0)[node] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(p.psi_tilde.comp(1)[node] == doctest::Approx(dt).epsilon(1e-3));
}

TEST_CASE("correct with beta = 0 returns the predicted fields") {
    const Grid g = make_grid(2, 16, {-2, -2, 0}, 4.0);
    const State st = circle_state(g, 1.0);
    StepperConfig cfg;
    cfg.beta = 0.0;
    cfg.dt = 0.01;
    const CorrectionResult r = correct(st.phi, st.psi, st, cfg);
    CHECK(r.iters_phi <= 1);
    for (std::size_t i = 0; i < st.phi.size(); ++i)
        CHECK(r.state.phi[i] == doctest::Approx(st.phi[i]).epsilon(1e-12));
}

TEST_CASE("correct is the identity when the prediction equals the state") {
    constexpr double kPi = 3.14159265358979323846;
    const Grid g = make_grid(2, 32, {-2, -2, 0}, 4.0);
    State st;
    st.phi = sample_field(g, [&](const Vec& p) { return std::sin(2.0 * kPi * p[0] / 4.0); });
    st.psi = VectorField(g);
    StepperConfig cfg;
    cfg.beta = 0.5;
    cfg.dt = 0.01;
    const CorrectionResult r = correct(st.phi, st.psi, st, cfg);
    for (std::size_t i = 0; i < st.phi.size(); ++i)
        CHECK(std::fabs(r.state.phi[i] - st.phi[i]) < 1e-7);
}

TEST_CASE("correct satisfies its linear system (residual oracle)") {
    const Grid g = make_grid(2, 16, {-2, -2, 0}, 4.0);
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    State st;
    st.phi = ScalarField(g);
    st.psi = VectorField(g);
    ScalarField tilde(g);
    for (std::size_t i = 0; i < st.phi.size(); ++i) {
        st.phi[i] = dist(rng);
        tilde[i] = dist(rng);
    }
    StepperConfig cfg;
    cfg.beta = 0.5;
    cfg.dt = 0.02;
    cfg.op = OperatorKind::IdentityMinusScaledLaplacian;
    const CorrectionResult r = correct(tilde, st.psi, st, cfg);

    const LinearOperator op{cfg.op, cfg.beta * cfg.dt, g};
    const ScalarField lhs = op.apply(r.state.phi);
    ScalarField rhs = op.apply_l(st.phi);
    double rhs_norm = 0.0, err = 0.0;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        rhs[i] = tilde[i] - op.scale * rhs[i];
        rhs_norm += rhs[i] * rhs[i];
        err += (lhs[i] - rhs[i]) * (lhs[i] - rhs[i]);
    }
    CHECK(std::sqrt(err) <= 2.0 * cfg.solver_tol * std::sqrt(rhs_norm));
}

TEST_CASE("one SIGALS step shrinks the circle at the analytic rate") {
    const Grid g = make_grid(2, 128, {-2, -2, 0}, 4.0); // h = 0.03125
    State st = circle_state(g, 1.0);
    StepperConfig cfg;
    cfg.dt = 8.0 * g.h * g.h;
    cfg.op = OperatorKind::IdentityMinusScaledLaplacian;
    st = step(st, cfg, FlowMode::MeanCurvature);
    const double r_exact = std::sqrt(1.0 - 2.0 * cfg.dt);
    CHECK(mean_interface_radius(st) == doctest::Approx(r_exact).epsilon(1e-3));
}

TEST_CASE("explicit scheme with zero velocity leaves the state untouched") {
    const Grid g = make_grid(2, 32, {-2, -2, 0}, 4.0);
    const State st = plane_state(g); // planar interface: kappa = 0, v = 0
    StepperConfig cfg;
    cfg.scheme = Scheme::ExplicitGALS;
    cfg.dt = 0.01;
    State out = step(st, cfg, FlowMode::MeanCurvature);
    CHECK(states_equal(st, out));
    CHECK(out.time == doctest::Approx(0.01));
}

TEST_CASE("SIGALS with beta = 0 is bitwise the explicit path") {
    const Grid g = make_grid(2, 48, {-2, -2, 0}, 4.0);
    const State st = circle_state(g, 1.0);
    StepperConfig a;
    a.scheme = Scheme::SIGALS;
    a.beta = 0.0;
    a.dt = 1e-4;
    StepperConfig b = a;
    b.scheme = Scheme::ExplicitGALS;
    b.beta = 0.5; // ignored by the explicit path
    const State sa = step(st, a, FlowMode::MeanCurvature);
    const State sb = step(st, b, FlowMode::MeanCurvature);
    CHECK(states_equal(sa, sb));
}

TEST_CASE("exact cancellation: zero velocity + equal fields = identity within tol") {
    const Grid g = make_grid(2, 64, {-2, -2, 0}, 4.0);
    const State st = plane_state(g);
    StepperConfig cfg;
    cfg.dt = 0.01;
    cfg.beta = 0.5;
    const State out = step(st, cfg, FlowMode::MeanCurvature);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < st.phi.size(); ++i)
        max_diff = std::max(max_diff, std::fabs(out.phi[i] - st.phi[i]));
    CHECK(max_diff < 1e-6);
}

TEST_CASE("standard semi-implicit mode never builds Hermite patches but still advects") {
    const Grid g = make_grid(2, 128, {-2, -2, 0}, 4.0);
    State st = circle_state(g, 1.0);
    StepperConfig cfg;
    cfg.scheme = Scheme::StandardSemiImplicit;
    cfg.dt = 8.0 * g.h * g.h;
    StepStats stats;
    st = step(st, cfg, FlowMode::MeanCurvature, &stats);
    CHECK(stats.patches_built == 0);
    const double r_exact = std::sqrt(1.0 - 2.0 * cfg.dt);
    CHECK(mean_interface_radius(st) == doctest::Approx(r_exact).epsilon(5e-3));
}

TEST_CASE("psi stays coupled to grad(phi) over a collapse run") {
    const Grid g = make_grid(2, 64, {-2, -2, 0}, 4.0);
    State st = circle_state(g, 1.0);
    StepperConfig cfg;
    cfg.dt = 8.0 * g.h * g.h;
    const double initial = coupling_error(st);
    double worst = initial;
    for (int s = 0; s < 12; ++s) { // t = 0.375
        st = step(st, cfg, FlowMode::MeanCurvature);
        worst = std::max(worst, coupling_error(st));
    }
    CHECK(worst <= 5.0 * initial);
}

TEST_CASE("results are insensitive to tightening the solver tolerance") {
    const Grid g = make_grid(2, 64, {-2, -2, 0}, 4.0);
    const State st = circle_state(g, 1.0);
    StepperConfig loose, tight;
    loose.dt = tight.dt = 8.0 * g.h * g.h;
    loose.solver_tol = 1e-8;
    tight.solver_tol = 1e-10;
    const State a = step(st, loose, FlowMode::MeanCurvature);
    const State b = step(st, tight, FlowMode::MeanCurvature);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < a.phi.size(); ++i)
        max_diff = std::max(max_diff, std::fabs(a.phi[i] - b.phi[i]));
    CHECK(max_diff < 1e-6);
}

TEST_CASE("gradient-augmented advection returns a translated circle to itself") {
    // pure transport accuracy of the predictor: constant velocity, explicit
    // steps, one full period across the torus; subcell evaluation exercised
    // by the 2/3-of-a-spacing per-step displacement
    const Grid g = make_grid(2, 64, {-2, -2, 0}, 4.0);
    State st = circle_state(g, 1.0);
    const State initial = st;
    VectorField v(g);
    for (std::size_t i = 0; i < g.node_count(); ++i) v.set(i, {1.0, 0.0, 0.0});
    const int steps = 96;
    const double dt = g.extent() / steps; // c*dt = (2/3)h
    for (int s = 0; s < steps; ++s) {
        Prediction p = predict(st, v, dt);
        st.phi = std::move(p.phi_tilde);
        st.psi = std::move(p.psi_tilde);
    }
    const BandMask band = build_band(initial.phi, 0);
    double linf = 0.0;
    for (std::size_t c : band.adjacent_nodes())
        linf = std::max(linf, std::fabs(st.phi[c] - initial.phi[c]));
    CHECK(linf < 5e-4); // frozen from the h = 0.0625 run; ~h^3 scale
}
