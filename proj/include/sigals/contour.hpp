#ifndef SIGALS_CONTOUR_HPP
#define SIGALS_CONTOUR_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sigals/field.hpp"

namespace sigals {

// Ordered closed polylines on the zero contour (2D). Loops are stored without
// the repeated closing vertex and oriented with the interior (phi < 0) on the
// left, so the shoelace area of a loop around a negative region is positive.
struct InterfaceCurve {
    std::vector<std::vector<Vec>> loops;

    bool empty() const { return loops.empty(); }
};

// Triangle soup on the zero isosurface (3D), with vertices deduplicated per
// lattice edge.
struct InterfaceMesh {
    std::vector<Vec> vertices;
    std::vector<std::array<int, 3>> triangles;

    bool empty() const { return triangles.empty(); }
};

// Marching squares with cell classification by corner signs; edge crossings
// located by root-finding on the Hermite patch restricted to the edge.
// Ambiguous saddle cells are resolved by the patch value at the cell center.
InterfaceCurve extract_interface_2d(const ScalarField& phi, const VectorField& psi);

// Marching cubes topology with the same Hermite edge roots.
InterfaceMesh extract_interface_3d(const ScalarField& phi, const VectorField& psi);

double enclosed_area(const InterfaceCurve& curve);
double interface_length(const InterfaceCurve& curve);

int count_components(const InterfaceCurve& curve);
int count_components(const InterfaceMesh& mesh);

// Divergence-theorem volume and total triangle area; qualitative diagnostics.
double enclosed_volume(const InterfaceMesh& mesh);
double surface_area(const InterfaceMesh& mesh);

struct ErrorReport {
    double l2 = 0.0;        // RMS over band nodes
    double linf = 0.0;
    std::size_t node_count = 0;
    std::string band_tag = "sign-change-adjacent";
};

// Reference signed distance function with gradient.
using ReferenceSdf = std::function<std::pair<double, Vec>(const Vec&)>;

// Errors of phi and psi over sign-change-adjacent nodes (vector 2-norm per
// node for the gradient). An empty band reports node_count 0.
std::pair<ErrorReport, ErrorReport> band_error(const ScalarField& phi, const VectorField& psi,
                                               const ReferenceSdf& reference);

// log2(e_h / e_{h/2}); nullopt when either error is zero (order undefined).
std::optional<double> convergence_order(double err_h, double err_h2);

} // namespace sigals

#endif
