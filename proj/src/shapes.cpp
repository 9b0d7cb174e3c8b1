#include "sigals/shapes.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "sigals/errors.hpp"

namespace sigals {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Closed star-shaped curve r(theta) about the origin of its body frame,
// sampled densely; signed distance by exact point-to-polyline measurement.
// Robust and oracle-grade; runs once per initialization, off the hot path.
class PolarCurve {
public:
    PolarCurve(std::function<double(double)> radius, int samples) {
        pts_.resize(samples);
        for (int i = 0; i < samples; ++i) {
            const double th = 2.0 * kPi * i / samples;
            const double r = radius(th);
            pts_[i] = {r * std::cos(th), r * std::sin(th)};
        }
        radius_ = std::move(radius);
    }

    // (signed distance, gradient) in the body frame; z ignored.
    std::pair<double, Vec> sdf(double x, double y) const {
        const int m = static_cast<int>(pts_.size());

        // Coarse scan, then exact segment distances in a window around the
        // coarse minimum. The window is generous relative to curve features.
        const int stride = std::max(1, m / 256);
        int best = 0;
        double best_d2 = 1e300;
        for (int i = 0; i < m; i += stride) {
            const double dx = x - pts_[i][0], dy = y - pts_[i][1];
            const double d2 = dx * dx + dy * dy;
            if (d2 < best_d2) {
                best_d2 = d2;
                best = i;
            }
        }
        const int window = 4 * stride + 2;
        int seg = best;
        double d2 = 1e300;
        for (int s = best - window; s <= best + window; ++s) {
            const int i0 = ((s % m) + m) % m;
            const int i1 = (i0 + 1) % m;
            const double ax = pts_[i0][0], ay = pts_[i0][1];
            const double bx = pts_[i1][0], by = pts_[i1][1];
            const double ex = bx - ax, ey = by - ay;
            const double len2 = ex * ex + ey * ey;
            double t = len2 > 0.0 ? ((x - ax) * ex + (y - ay) * ey) / len2 : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            const double px = ax + t * ex, py = ay + t * ey;
            const double dd2 = (x - px) * (x - px) + (y - py) * (y - py);
            if (dd2 < d2) {
                d2 = dd2;
                seg = i0;
            }
        }

        // Polish the foot point onto the exact curve: the polyline's chord
        // normals carry O(facet * curvature) direction noise, which the
        // curvature and surface-Laplacian stencils would amplify by 1/h^3.
        // Ternary search on the squared distance over the bracketing arc.
        const double step = 2.0 * kPi / m;
        double lo = (seg - 1) * step, hi = (seg + 2) * step;
        auto dist2 = [&](double th) {
            const double r = radius_(th);
            const double cx = r * std::cos(th), cy = r * std::sin(th);
            return (x - cx) * (x - cx) + (y - cy) * (y - cy);
        };
        for (int it = 0; it < 80; ++it) {
            const double t1 = lo + (hi - lo) / 3.0;
            const double t2 = hi - (hi - lo) / 3.0;
            if (dist2(t1) < dist2(t2))
                hi = t2;
            else
                lo = t1;
        }
        const double th = 0.5 * (lo + hi);
        const double r = radius_(th);
        const double qx = r * std::cos(th), qy = r * std::sin(th);
        const double d = std::hypot(x - qx, y - qy);

        const double rho = std::hypot(x, y);
        const double theta = std::atan2(y, x);
        const double sign = rho < radius_(theta) ? -1.0 : 1.0;
        Vec grad;
        if (d > 1e-10) {
            grad = {sign * (x - qx) / d, sign * (y - qy) / d, 0.0};
        } else {
            // On the curve: outward normal of the CCW parametrization.
            const double eps = 1e-6;
            const double rp = radius_(th + eps), rm = radius_(th - eps);
            const double tx = (rp * std::cos(th + eps) - rm * std::cos(th - eps));
            const double ty = (rp * std::sin(th + eps) - rm * std::sin(th - eps));
            const double tl = std::hypot(tx, ty);
            grad = {ty / tl, -tx / tl, 0.0};
        }
        return {sign * d, grad};
    }

private:
    std::vector<std::array<double, 2>> pts_;
    std::function<double(double)> radius_;
};

std::function<double(double)> radius_function(const ShapeSpec& s) {
    switch (s.kind) {
        case ShapeKind::Ellipse:
            return [a = s.a, b = s.b](double th) {
                return a * b / std::hypot(b * std::cos(th), a * std::sin(th));
            };
        case ShapeKind::CassiniOval2D:
        case ShapeKind::CassiniOval3D:
            return [a = s.a, b = s.b](double th) {
                const double c2 = std::cos(2.0 * th);
                const double a2 = a * a;
                return std::sqrt(a2 * c2 + std::sqrt(a2 * a2 * c2 * c2 + b * b * b * b - a2 * a2));
            };
        case ShapeKind::NLobeStar:
            return [r0 = s.base_radius, amp = s.amplitude, k = s.lobes](double th) {
                return r0 + amp * std::cos(k * th);
            };
        default:
            throw ConfigError("shape kind has no polar curve");
    }
}

bool revolved(ShapeKind k) { return k == ShapeKind::CassiniOval3D; }

// Union of two bulbs and a thin connecting capsule along the x axis through
// the center. Exact SDF away from the union seams; a neck longer than
// 2*pi*neck_radius is Rayleigh-unstable under surface diffusion and pinches.
std::pair<double, Vec> dumbbell_sdf(const ShapeSpec& s, const Vec& x) {
    const Vec q = x - s.center;
    auto sphere = [&](double cx) {
        const Vec d = {q[0] - cx, q[1], q[2]};
        const double r = norm(d);
        if (r < 1e-14) return std::pair<double, Vec>{-s.base_radius, {1.0, 0.0, 0.0}};
        return std::pair<double, Vec>{r - s.base_radius, (1.0 / r) * d};
    };
    auto capsule = [&]() {
        const double ax = std::clamp(q[0], -s.b, s.b);
        const Vec d = {q[0] - ax, q[1], q[2]};
        const double r = norm(d);
        if (r < 1e-14) return std::pair<double, Vec>{-s.amplitude, {0.0, 0.0, 0.0}};
        return std::pair<double, Vec>{r - s.amplitude, (1.0 / r) * d};
    };
    auto best = sphere(-s.a);
    const auto right = sphere(s.a);
    if (right.first < best.first) best = right;
    const auto neck = capsule();
    if (neck.first < best.first) best = neck;
    return best;
}

// Per-spec curve cache: sampling 4096 points once instead of per node.
const PolarCurve& curve_for(const ShapeSpec& s) {
    static std::mutex mu;
    static std::unordered_map<std::string, std::unique_ptr<PolarCurve>> cache;
    char key[160];
    std::snprintf(key, sizeof(key), "%d|%.17g|%.17g|%.17g|%.17g|%.17g|%d|%d",
                  static_cast<int>(s.kind), s.a, s.b, s.base_radius, s.amplitude, s.angle,
                  s.lobes, s.samples);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, std::make_unique<PolarCurve>(radius_function(s), s.samples))
                 .first;
    }
    return *it->second;
}

std::pair<double, Vec> rounded_box_sdf(const ShapeSpec& s, const Vec& x) {
    double q[3], sgn[3];
    for (int a = 0; a < 3; ++a) {
        const double d = x[a] - s.center[a];
        sgn[a] = d < 0.0 ? -1.0 : 1.0;
        q[a] = std::fabs(d) - s.half_widths[a];
    }
    const double mx = std::max(q[0], std::max(q[1], q[2]));
    if (mx > 0.0) {
        const double v0 = std::max(q[0], 0.0), v1 = std::max(q[1], 0.0),
                     v2 = std::max(q[2], 0.0);
        const double d = std::sqrt(v0 * v0 + v1 * v1 + v2 * v2);
        return {d - s.corner_radius, {sgn[0] * v0 / d, sgn[1] * v1 / d, sgn[2] * v2 / d}};
    }
    int axis = 0;
    if (q[1] > q[axis]) axis = 1;
    if (q[2] > q[axis]) axis = 2;
    Vec g{};
    g[axis] = sgn[axis];
    return {mx - s.corner_radius, g};
}

} // namespace

void ShapeSpec::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw ConfigError(std::string("invalid shape parameters: ") + what);
    };
    require(samples >= 64, "sampling density must be at least 64");
    switch (kind) {
        case ShapeKind::Circle:
        case ShapeKind::Sphere:
            require(radius > 0.0, "radius must be positive");
            break;
        case ShapeKind::Ellipse:
            require(a > 0.0 && b > 0.0, "ellipse semi-axes must be positive");
            break;
        case ShapeKind::CassiniOval2D:
        case ShapeKind::CassiniOval3D:
            require(a > 0.0 && b > a, "cassini oval needs b > a > 0 (single loop)");
            break;
        case ShapeKind::NLobeStar:
            require(base_radius > 0.0, "star base radius must be positive");
            require(amplitude >= 0.0 && amplitude < base_radius,
                    "star amplitude must stay below the base radius");
            require(lobes >= 1, "star needs at least one lobe");
            break;
        case ShapeKind::Dumbbell:
            require(base_radius > 0.0, "dumbbell bulb radius must be positive");
            require(amplitude > 0.0 && amplitude < base_radius,
                    "dumbbell neck radius must be in (0, bulb radius)");
            require(a > 0.0 && b > 0.0 && b <= a, "dumbbell needs 0 < neck half-length <= "
                    "bulb offset");
            break;
        case ShapeKind::RoundedBox:
            require(half_widths[0] > 0.0 && half_widths[1] > 0.0 && half_widths[2] > 0.0,
                    "box half widths must be positive");
            require(corner_radius > 0.0, "corner radius must be positive");
            break;
    }
}

std::pair<double, Vec> ShapeSpec::sdf(const Vec& x) const {
    switch (kind) {
        case ShapeKind::Circle: {
            const double dx = x[0] - center[0], dy = x[1] - center[1];
            const double r = std::hypot(dx, dy);
            if (r < 1e-14) return {-radius, {0.0, 0.0, 0.0}};
            return {r - radius, {dx / r, dy / r, 0.0}};
        }
        case ShapeKind::Sphere: {
            const Vec d = x - center;
            const double r = norm(d);
            if (r < 1e-14) return {-radius, {0.0, 0.0, 0.0}};
            return {r - radius, (1.0 / r) * d};
        }
        case ShapeKind::RoundedBox:
            return rounded_box_sdf(*this, x);
        case ShapeKind::Dumbbell:
            return dumbbell_sdf(*this, x);
        default:
            break;
    }

    const PolarCurve& curve = curve_for(*this);
    if (!revolved(kind)) {
        // Body frame: translate, then undo the inclination.
        const double dx = x[0] - center[0], dy = x[1] - center[1];
        const double ca = std::cos(angle), sa = std::sin(angle);
        const double bx = ca * dx + sa * dy;
        const double by = -sa * dx + ca * dy;
        auto [d, g] = curve.sdf(bx, by);
        return {d, {ca * g[0] - sa * g[1], sa * g[0] + ca * g[1], 0.0}};
    }

    // Surface of revolution about the x axis through the center: measure in
    // the (axial, radial) half-plane.
    const double s = x[0] - center[0];
    const double ry = x[1] - center[1], rz = x[2] - center[2];
    const double rho = std::hypot(ry, rz);
    auto [d, g] = curve.sdf(s, rho);
    if (rho < 1e-12) return {d, {g[0], 0.0, 0.0}}; // on the revolution axis
    return {d, {g[0], g[1] * ry / rho, g[1] * rz / rho}};
}

std::pair<ScalarField, VectorField> init_fields(const ShapeSpec& spec, const Grid& grid) {
    spec.validate();
    ScalarField phi(grid);
    VectorField psi(grid);
    const int nk = grid.dim == 3 ? grid.n : 1;
    for (int k = 0; k < nk; ++k)
        for (int j = 0; j < grid.n; ++j)
            for (int i = 0; i < grid.n; ++i) {
                const auto [d, g] = spec.sdf(grid.position(i, j, k));
                const std::size_t c = grid.index(i, j, k);
                phi[c] = d;
                psi.set(c, g);
            }
    if (!phi.is_finite() || !psi.is_finite())
        throw NumericalError("shape initialization produced non-finite fields");
    return {std::move(phi), std::move(psi)};
}

ShapeSpec shape_preset(const std::string& name) {
    ShapeSpec s;
    if (name == "unit_circle") {
        s.kind = ShapeKind::Circle;
        s.radius = 1.0;
    } else if (name == "unit_sphere") {
        s.kind = ShapeKind::Sphere;
        s.radius = 1.0;
    } else if (name == "fig3_cassini") {
        s.kind = ShapeKind::CassiniOval2D;
        s.a = 0.9;
        s.b = 1.0;
    } else if (name == "fig5_star") {
        // Sized so a mean-curvature run keeps a resolved interface to t = 1.
        s.kind = ShapeKind::NLobeStar;
        s.base_radius = 1.45;
        s.amplitude = 0.25;
        s.lobes = 5;
    } else if (name == "fig6_ellipse") {
        s.kind = ShapeKind::Ellipse;
        s.a = 1.5;
        s.b = 0.75;
        s.angle = kPi / 6.0;
    } else if (name == "fig8_star") {
        // Enclosed area is exactly pi: r0^2 + amplitude^2/2 = 1. The
        // amplitude keeps every feature's curvature radius above ~8 spacings
        // of the h = 0.0625 grid it is run on.
        s.kind = ShapeKind::NLobeStar;
        s.base_radius = std::sqrt(1.0 - 0.10 * 0.10 / 2.0);
        s.amplitude = 0.10;
        s.lobes = 5;
    } else if (name == "fig9_circle") {
        s.kind = ShapeKind::Circle;
        s.radius = 0.35;
        s.center = {0.45, 0.0, 0.0};
    } else if (name == "fig9_ellipse") {
        s.kind = ShapeKind::Ellipse;
        s.a = 0.5;
        s.b = 1.2;
        s.center = {-0.6, 0.0, 0.0};
    } else if (name == "cassini3d") {
        s.kind = ShapeKind::CassiniOval3D;
        s.a = 0.95;
        s.b = 1.0;
    } else if (name == "dumbbell") {
        // bulbs of radius 0.5 at +-1.25, neck radius 0.16 over |x| <= 0.9:
        // the neck is ~1.8 long, beyond the 2*pi*0.16 Rayleigh length
        s.kind = ShapeKind::Dumbbell;
        s.base_radius = 0.5;
        s.amplitude = 0.16;
        s.a = 1.25;
        s.b = 0.9;
    } else if (name == "rounded_box") {
        s.kind = ShapeKind::RoundedBox;
        s.half_widths = {0.7, 0.7, 0.7};
        s.corner_radius = 0.3;
    } else {
        throw ConfigError("unknown shape preset: " + name);
    }
    return s;
}

std::vector<std::string> shape_preset_names() {
    return {"unit_circle", "unit_sphere", "fig3_cassini", "fig5_star", "fig6_ellipse",
            "fig8_star", "fig9_circle", "fig9_ellipse", "cassini3d", "dumbbell", "rounded_box"};
}

} // namespace sigals
