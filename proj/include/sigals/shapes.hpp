#ifndef SIGALS_SHAPES_HPP
#define SIGALS_SHAPES_HPP

#include <string>
#include <utility>
#include <vector>

#include "sigals/field.hpp"

namespace sigals {

enum class ShapeKind {
    Circle,
    Ellipse,
    CassiniOval2D,
    NLobeStar,
    Sphere,
    CassiniOval3D,
    Dumbbell,
    RoundedBox,
};

// Signed-distance initializer description. Interior is phi < 0 for every
// closed shape. Non-analytic 2D curves (ellipse, Cassini, star) and the
// revolved 3D bodies are sampled densely and measured by exact point-to-
// polyline distance; analytic shapes (circle, sphere, rounded box) use their
// closed-form SDF.
struct ShapeSpec {
    ShapeKind kind = ShapeKind::Circle;
    Vec center{};
    double radius = 1.0;       // circle, sphere
    double a = 1.0;            // ellipse semi-axis x / cassini focus
    double b = 1.0;            // ellipse semi-axis y / cassini size (b > a)
    double angle = 0.0;        // ellipse inclination, radians
    double base_radius = 1.0;  // star / dumbbell profile r0
    double amplitude = 0.0;    // star / dumbbell profile lobe amplitude
    int lobes = 5;             // star lobe count k
    Vec half_widths = {0.5, 0.5, 0.5}; // rounded box
    double corner_radius = 0.1;        // rounded box
    int samples = 4096;        // parametric curve sampling density

    void validate() const; // throws ConfigError on out-of-range parameters

    // Signed distance and (unit) gradient at an arbitrary point.
    std::pair<double, Vec> sdf(const Vec& x) const;
};

// phi = signed distance, psi = its gradient, sampled at every node.
std::pair<ScalarField, VectorField> init_fields(const ShapeSpec& spec, const Grid& grid);

// Named parameter bundles addressable from config files.
ShapeSpec shape_preset(const std::string& name);
std::vector<std::string> shape_preset_names();

} // namespace sigals

#endif
