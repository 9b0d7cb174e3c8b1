#ifndef SIGALS_HERMITE_HPP
#define SIGALS_HERMITE_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "sigals/field.hpp"

namespace sigals {

// Per-node mixed derivatives of the level set, estimated from psi by the
// symmetric averaging rule: cross_ab = (d_a psi^b + d_b psi^a) / 2 with the
// isotropic centered differences. The triple derivative (3D only) averages
// the finite-difference estimates of all component permutations.
struct CrossDerivatives {
    ScalarField xy;
    ScalarField xz;   // 3D only
    ScalarField yz;   // 3D only
    ScalarField xyz;  // 3D only
};

CrossDerivatives node_cross_derivatives(const VectorField& psi);

// Cell-local Hermite interpolant P over the unit reference cell, stored as
// monomial coefficients c[p][q][r] of u^p v^q w^r (2D uses r = 0 only).
// Interpolation conditions hold at each corner to round-off: P matches phi,
// dP matches psi, and the mixed corner derivatives match the supplied cross
// data. Gradients are the analytic derivative of the same coefficients,
// rescaled by 1/h so conditioning is h-independent.
struct HermitePatch {
    int dim = 2;
    std::array<int, 3> cell{};      // owning cell, wrapped
    double h = 0.0;
    std::array<double, 64> coeff{}; // c[(r*4 + q)*4 + p]

    double value(const Vec& local) const;
    // Physical-space gradient (already divided by h).
    Vec grad(const Vec& local) const;
};

HermitePatch build_patch(const Grid& grid, const ScalarField& phi, const VectorField& psi,
                         const CrossDerivatives& cross, const std::array<int, 3>& cell);

// Evaluates (P(x), grad P(x)) at a point inside the patch's cell. `local` are
// coordinates in the unit reference cell; evaluating outside it is a contract
// violation of the caller.
struct PatchSample {
    double value;
    Vec gradient;
};
PatchSample eval_patch(const HermitePatch& patch, const Vec& local);

// Maps a physical point to its owning cell and local coordinates in [0,1)^d,
// with periodic reduction. Reconstruction position = origin + h*(cell+local)
// is exact to round-off.
struct CellLocation {
    std::array<int, 3> cell{};
    Vec local{};
};
CellLocation locate_cell(const Grid& grid, const Vec& x);

// 1D cubic Hermite along a cell edge: endpoint values f0, f1 and endpoint
// derivatives d0, d1 in edge-local coordinates (already scaled by h).
// The restriction of a tensor-product patch to an edge is exactly this cubic.
struct EdgeCubic {
    double c0, c1, c2, c3; // c0 + c1 t + c2 t^2 + c3 t^3

    static EdgeCubic from_hermite(double f0, double f1, double d0, double d1);
    double value(double t) const { return c0 + t * (c1 + t * (c2 + t * c3)); }
    double deriv(double t) const { return c1 + t * (2.0 * c2 + t * 3.0 * c3); }
};

// All roots of the edge cubic inside [0,1], polished to |P| ~ 1e-14 scale.
// Finds subgrid interface crossings that corner signs alone would miss.
std::vector<double> edge_roots(const EdgeCubic& cubic);

// The unique root bracketed by a sign change of the endpoint values.
double bracketed_edge_root(const EdgeCubic& cubic);

} // namespace sigals

#endif
