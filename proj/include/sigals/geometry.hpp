#ifndef SIGALS_GEOMETRY_HPP
#define SIGALS_GEOMETRY_HPP

#include "sigals/band.hpp"
#include "sigals/field.hpp"

namespace sigals {

enum class FlowMode { MeanCurvature, SurfaceDiffusion };

// Denominator regularization; no division by zero anywhere in the band.
inline constexpr double kGeometryEps = 1e-8;

// n = psi / sqrt(|psi|^2 + eps); |n| <= 1, and ~1 wherever |psi| >> sqrt(eps).
VectorField unit_normal(const VectorField& psi);

// Curvature in the interface vicinity (layers <= kKappaVicinity), zero
// elsewhere. First derivatives come straight from psi, second derivatives are
// first differences of psi, cross terms are symmetric averages. The vicinity
// is wider than the adjacent set so that every node the surface-Laplacian
// stencils can reach (two face-steps from a layer-1 node) holds a smooth
// directly-evaluated value rather than a transported one; second derivatives
// amplify any seam between the two into O(1/h) noise.
inline constexpr int kKappaVicinity = 3;
inline constexpr int kSurfVicinity = 1;
ScalarField curvature(const VectorField& psi, const BandMask& band);

struct ExtensionOptions {
    double residual_tol = 1e-6;     // relative to max|q|
    int max_iters = 2000;           // full sweeps over the band
    int frozen_layers = 0;          // layers <= this hold source data
};

// Propagates q outward along +-n until steady in the band; source values
// (layers <= frozen_layers) stay fixed. Solves the first-order upwind
// discretization of sign(phi) n.grad(q) = 0 (smoothed sign
// phi/sqrt(phi^2 + h^2)) by Gauss-Seidel sweeps in band-layer order, so
// information crosses an arbitrarily wide band in a handful of sweeps;
// converged when the sweep residual drops below tolerance. Throws
// NumericalError with the residual if max_iters runs out.
ScalarField extend(const ScalarField& q, const ScalarField& phi, const VectorField& n,
                   const BandMask& band, const ExtensionOptions& opts = {});

// Surface Laplacian of the vicinity curvature, at nodes with
// layer <= kSurfVicinity. Includes both the tangential second-derivative term
// and the -kappa*(grad kappa . grad phi)/|grad phi| term; on shapes like the
// circle the two cancel, which is what keeps constant-curvature interfaces
// stationary.
ScalarField surface_laplacian_kappa(const ScalarField& kappa, const VectorField& psi,
                                    const BandMask& band);

struct VelocityField {
    VectorField v;
    FlowMode mode;
    ScalarField kappa;    // extended curvature (diagnostics)
    BandMask band;
    double kappa_max_adjacent = 0.0; // max |kappa| over layer-0 nodes
};

struct VelocityOptions {
    // Extension width in layers; kWholeDomain extends to the rest of the
    // domain. A hard velocity cutoff is O(1/h) shear that the gradient
    // transport faithfully records, so a truncated band slowly poisons psi
    // wherever the moving band edge sweeps; whole-domain is the default.
    int band_layers = BandMask::kWholeDomain;
    ExtensionOptions extension{};
};

// Algorithm "compute the velocity field": kappa in the interface vicinity,
// extend; for surface diffusion also S in its vicinity, extend; then
// v = -kappa*n or v = S*n inside the band and exactly zero outside it.
VelocityField compute_velocity(const ScalarField& phi, const VectorField& psi,
                               FlowMode mode, const VelocityOptions& opts = {});

} // namespace sigals

#endif
