#ifndef SIGALS_STENCILS_HPP
#define SIGALS_STENCILS_HPP

#include "sigals/field.hpp"

namespace sigals {

// Second-order isotropic finite differences on periodic grids. The Laplacian
// uses the compact isotropic variant (2D: 9-point, 3D: 27-point) whose leading
// truncation error is rotationally invariant, not the naive cross stencil.
//
// Weight tables (all divided by the indicated power of h):
//   2D Laplacian   : edges 4/6, corners 1/6, center -20/6          / h^2
//   3D Laplacian   : faces 7/15, edges 1/10, corners 1/30,
//                    center -64/15                                 / h^2
//   2D d/dx        : E-W pair 4/12, diagonal pairs 1/12            / h
//   3D d/dx        : face pair 2/9, edge pairs 1/18,
//                    corner pairs 1/72                             / h
// Each family member is fixed by second-order consistency plus isotropy of
// the next error term.

// Isotropic centered first derivative along `axis`; exact on quadratics.
ScalarField diff1(const ScalarField& field, int axis);

// Plain centered second derivative along one axis, (f+ - 2f + f-)/h^2.
ScalarField diff2(const ScalarField& field, int axis);

// 4-point centered product stencil for d^2/(dxa dxb), a != b.
ScalarField cross_diff(const ScalarField& field, int axis_a, int axis_b);

// Isotropic Laplacian.
ScalarField laplacian(const ScalarField& field);

// Discrete biharmonic, defined as laplacian(laplacian(field)). The same
// composition is used for operator application and right-hand sides.
ScalarField biharmonic(const ScalarField& field);

// Gradient assembled from diff1 on each axis.
VectorField gradient(const ScalarField& field);

// Single-node evaluations (periodic wrap), for band-limited passes.
double diff1_at(const ScalarField& field, int axis, int i, int j, int k = 0);
double diff2_at(const ScalarField& field, int axis, int i, int j, int k = 0);
double cross_diff_at(const ScalarField& field, int axis_a, int axis_b, int i, int j, int k = 0);

} // namespace sigals

#endif
