#include <doctest.h>

#include <cmath>

#include "sigals/band.hpp"
#include "sigals/contour.hpp"
#include "sigals/errors.hpp"
#include "sigals/shapes.hpp"
#include "sigals/stencils.hpp"

using namespace sigals;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("circle SDF values and gradients") {
    ShapeSpec s;
    s.kind = ShapeKind::Circle;
    s.radius = 1.0;

    const auto [v1, g1] = s.sdf({2.0, 0.0, 0.0});
    CHECK(v1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g1[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g1[1] == 0.0);

    const auto [v0, g0] = s.sdf({0.0, 0.0, 0.0});
    CHECK(v0 == doctest::Approx(-1.0).epsilon(1e-14));
    (void)g0;
}

TEST_CASE("all closed shapes are negative at their center") {
    const std::vector<std::string> names = shape_preset_names();
    for (const std::string& name : names) {
        const ShapeSpec s = shape_preset(name);
        CHECK(s.sdf(s.center).first < 0.0);
    }
}

TEST_CASE("invalid parameters are rejected") {
    ShapeSpec s;
    s.kind = ShapeKind::Circle;
    s.radius = -1.0;
    CHECK_THROWS_AS(s.validate(), ConfigError);

    ShapeSpec star;
    star.kind = ShapeKind::NLobeStar;
    star.base_radius = 1.0;
    star.amplitude = 1.2; // curve would self-intersect
    CHECK_THROWS_AS(star.validate(), ConfigError);

    ShapeSpec cas;
    cas.kind = ShapeKind::CassiniOval2D;
    cas.a = 1.0;
    cas.b = 0.9; // two loops, not supported
    CHECK_THROWS_AS(cas.validate(), ConfigError);
}

TEST_CASE("star interface matches its parametric curve") {
    const Grid g = make_grid(2, 128, {-2, -2, 0}, 4.0);
    ShapeSpec s;
    s.kind = ShapeKind::NLobeStar;
    s.base_radius = 1.0;
    s.amplitude = 0.25;
    s.lobes = 5;
    const auto [phi, psi] = init_fields(s, g);
    const InterfaceCurve curve = extract_interface_2d(phi, psi);
    REQUIRE(curve.loops.size() == 1);

    for (int t = 0; t < 100; ++t) {
        const double th = 2.0 * kPi * t / 100.0;
        const double r = 1.0 + 0.25 * std::cos(5.0 * th);
        const Vec p = {r * std::cos(th), r * std::sin(th), 0.0};
        double best = 1e300;
        for (const Vec& q : curve.loops[0]) best = std::min(best, norm(q - p));
        CHECK(best < 2.0 * g.h);
    }
}

TEST_CASE("eikonal property of the initial gradient") {
    const Grid g = make_grid(2, 128, {-2, -2, 0}, 4.0);

    // analytic circle: |psi| = 1 to near round-off on the band
    {
        const auto [phi, psi] = init_fields(shape_preset("unit_circle"), g);
        const BandMask band = build_band(phi, 0);
        std::vector<double> norms;
        for (std::size_t c : band.adjacent_nodes()) norms.push_back(norm(psi.at(c)));
        std::sort(norms.begin(), norms.end());
        const double median = norms[norms.size() / 2];
        CHECK(std::fabs(median - 1.0) < 1e-3);
    }
    // sampled curves: within 5h
    for (const char* name : {"fig5_star", "fig6_ellipse", "fig3_cassini"}) {
        const auto [phi, psi] = init_fields(shape_preset(name), g);
        const BandMask band = build_band(phi, 0);
        std::vector<double> norms;
        for (std::size_t c : band.adjacent_nodes()) norms.push_back(norm(psi.at(c)));
        std::sort(norms.begin(), norms.end());
        const double median = norms[norms.size() / 2];
        CHECK(std::fabs(median - 1.0) < 5.0 * g.h);
    }
}

TEST_CASE("psi agrees with the stencil gradient of phi on the band") {
    const Grid g = make_grid(2, 128, {-2, -2, 0}, 4.0);
    const auto [phi, psi] = init_fields(shape_preset("unit_circle"), g);
    const VectorField dphi = gradient(phi);
    const BandMask band = build_band(phi, 0);
    double max_err = 0.0;
    for (std::size_t c : band.adjacent_nodes())
        max_err = std::max(max_err, norm(psi.at(c) - dphi.at(c)));
    CHECK(max_err < 10.0 * g.h * g.h);
}

TEST_CASE("revolved and composite 3D bodies have the right cross-sections") {
    ShapeSpec d = shape_preset("dumbbell");
    // on-axis points inside the bulbs, outside beyond them
    CHECK(d.sdf({1.25, 0.0, 0.0}).first == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(d.sdf({1.9, 0.0, 0.0}).first > 0.0);
    // neck: inside just off axis, outside at twice the neck radius
    CHECK(d.sdf({0.0, 0.5 * d.amplitude, 0.0}).first < 0.0);
    CHECK(d.sdf({0.0, 0.0, 2.0 * d.amplitude}).first > 0.0);
    // axisymmetry
    const double v1 = d.sdf({0.3, 0.4, 0.0}).first;
    const double v2 = d.sdf({0.3, 0.0, 0.4}).first;
    const double v3 = d.sdf({0.3, 0.4 / std::sqrt(2.0), 0.4 / std::sqrt(2.0)}).first;
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-9));
    CHECK(v1 == doctest::Approx(v3).epsilon(1e-6));

    ShapeSpec cas = shape_preset("cassini3d");
    const double w1 = cas.sdf({0.3, 0.4, 0.0}).first;
    const double w2 = cas.sdf({0.3, 0.0, 0.4}).first;
    CHECK(w1 == doctest::Approx(w2).epsilon(1e-9));
}

TEST_CASE("rounded box SDF") {
    ShapeSpec b = shape_preset("rounded_box");
    // center is inside by half-width + corner radius
    CHECK(b.sdf({0, 0, 0}).first == doctest::Approx(-(0.7 + 0.3)).epsilon(1e-12));
    // outside along an axis: distance to the rounded face
    const auto [v, g] = b.sdf({2.0, 0.0, 0.0});
    CHECK(v == doctest::Approx(2.0 - 0.7 - 0.3).epsilon(1e-12));
    CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-12));
    // gradient has unit length away from the medial axis
    const auto [vc, gc] = b.sdf({1.3, 1.1, 0.9});
    (void)vc;
    CHECK(norm(gc) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fig8 star encloses area pi") {
    const Grid g = make_grid(2, 256, {-2, -2, 0}, 4.0);
    const auto [phi, psi] = init_fields(shape_preset("fig8_star"), g);
    const InterfaceCurve c = extract_interface_2d(phi, psi);
    CHECK(enclosed_area(c) == doctest::Approx(kPi).epsilon(2e-3));
}

TEST_CASE("unknown preset is a config error") {
    CHECK_THROWS_AS((void)shape_preset("no_such_shape"), ConfigError);
}
