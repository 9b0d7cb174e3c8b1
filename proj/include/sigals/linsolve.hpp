#ifndef SIGALS_LINSOLVE_HPP
#define SIGALS_LINSOLVE_HPP

#include <vector>

#include "sigals/field.hpp"

namespace sigals {

enum class OperatorKind { IdentityMinusScaledLaplacian, IdentityMinusScaledBiharmonic };

// Matrix-free (I - scale*L). L is the isotropic Laplacian for second-order
// flow and minus its square for fourth-order flow, so the operator is
// symmetric on periodic grids and positive definite for scale >= 0: the
// eigenvalues are 1 + scale*lambda_k, lambda_k >= 0 for -del^2 and +del^4.
struct LinearOperator {
    OperatorKind kind = OperatorKind::IdentityMinusScaledLaplacian;
    double scale = 0.0; // dt * beta
    Grid grid;

    // x - scale * L x.
    ScalarField apply(const ScalarField& x) const;
    // L x alone; shared by operator application and right-hand sides.
    ScalarField apply_l(const ScalarField& x) const;
};

struct SolveResult {
    ScalarField x;
    int iterations = 0;
    double relative_residual = 0.0;      // true residual |b - Ax| / |b|
    std::vector<double> residual_history; // preliminary residuals per iteration
};

// Bi-CGSTAB with zero initial guess (optionally warm-started). Returns once
// the true relative residual |op(x) - rhs| / |rhs| is <= tol; throws
// NumericalError carrying the residual history on breakdown or when max_iter
// is exhausted. Deterministic: fixed iteration order, no randomized restarts.
SolveResult solve_bicgstab(const LinearOperator& op, const ScalarField& rhs,
                           double tol, int max_iter,
                           const ScalarField* initial_guess = nullptr);

} // namespace sigals

#endif
