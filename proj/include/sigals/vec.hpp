#ifndef SIGALS_VEC_HPP
#define SIGALS_VEC_HPP

#include <array>
#include <cmath>

namespace sigals {

// Small fixed-size vector used for points, velocities and gradients.
// The z component is simply 0 in two-dimensional runs.
using Vec = std::array<double, 3>;

inline Vec vec2(double x, double y) { return {x, y, 0.0}; }
inline Vec vec3(double x, double y, double z) { return {x, y, z}; }

inline Vec operator+(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec operator-(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec operator*(double s, const Vec& a) { return {s * a[0], s * a[1], s * a[2]}; }

inline double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

// 3x3 matrix, row-major; used for departure gradients.
using Mat = std::array<std::array<double, 3>, 3>;

inline Mat identity_mat() {
    return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
}

} // namespace sigals

#endif
