#include "sigals/hermite.hpp"

#include <cassert>
#include <cmath>

#include "sigals/stencils.hpp"

namespace sigals {

namespace {

// Map from Hermite data (value@0, value@1, deriv@0, deriv@1) on the unit
// interval to monomial coefficients (a0..a3).
constexpr double kHermiteToMonomial[4][4] = {
    {1.0, 0.0, 0.0, 0.0},
    {0.0, 0.0, 1.0, 0.0},
    {-3.0, 3.0, -2.0, -1.0},
    {2.0, -2.0, 1.0, 1.0},
};

} // namespace

CrossDerivatives node_cross_derivatives(const VectorField& psi) {
    const Grid& g = psi.grid();
    CrossDerivatives out;
    const ScalarField px(g, psi.comp(0));
    const ScalarField py(g, psi.comp(1));

    auto average = [](ScalarField a, const ScalarField& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = 0.5 * (a[i] + b[i]);
        return a;
    };
    out.xy = average(diff1(py, 0), diff1(px, 1));

    if (g.dim == 3) {
        const ScalarField pz(g, psi.comp(2));
        out.xz = average(diff1(pz, 0), diff1(px, 2));
        out.yz = average(diff1(pz, 1), diff1(py, 2));
        // Triple derivative: mean of the three permutation estimates
        // d_y d_z psi^x, d_x d_z psi^y, d_x d_y psi^z.
        ScalarField e1 = diff1(diff1(px, 1), 2);
        const ScalarField e2 = diff1(diff1(py, 0), 2);
        const ScalarField e3 = diff1(diff1(pz, 0), 1);
        for (std::size_t i = 0; i < e1.size(); ++i)
            e1[i] = (e1[i] + e2[i] + e3[i]) / 3.0;
        out.xyz = std::move(e1);
    }
    return out;
}

HermitePatch build_patch(const Grid& grid, const ScalarField& phi, const VectorField& psi,
                         const CrossDerivatives& cross, const std::array<int, 3>& cell) {
    HermitePatch patch;
    patch.dim = grid.dim;
    patch.h = grid.h;
    for (int a = 0; a < 3; ++a)
        patch.cell[a] = (grid.dim == 2 && a == 2) ? 0 : grid.wrap(cell[a]);

    const double h = grid.h, h2 = h * h, h3 = h2 * h;
    const auto& A = kHermiteToMonomial;

    if (grid.dim == 2) {
        // Data tensor D[a][b]: slot 0/1 = value at u(or v)=0/1, slot 2/3 = the
        // matching derivative; entries are mixed data at the four corners.
        double D[4][4] = {};
        for (int cv = 0; cv <= 1; ++cv)
            for (int cu = 0; cu <= 1; ++cu) {
                const std::size_t node = grid.windex(cell[0] + cu, cell[1] + cv);
                D[cu][cv] = phi[node];
                D[2 + cu][cv] = h * psi.comp(0)[node];
                D[cu][2 + cv] = h * psi.comp(1)[node];
                D[2 + cu][2 + cv] = h2 * cross.xy[node];
            }
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) {
                double c = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) c += A[p][a] * A[q][b] * D[a][b];
                patch.coeff[q * 4 + p] = c;
            }
        return patch;
    }

    double D[4][4][4] = {};
    for (int cw = 0; cw <= 1; ++cw)
        for (int cv = 0; cv <= 1; ++cv)
            for (int cu = 0; cu <= 1; ++cu) {
                const std::size_t node =
                    grid.windex(cell[0] + cu, cell[1] + cv, cell[2] + cw);
                D[cu][cv][cw] = phi[node];
                D[2 + cu][cv][cw] = h * psi.comp(0)[node];
                D[cu][2 + cv][cw] = h * psi.comp(1)[node];
                D[cu][cv][2 + cw] = h * psi.comp(2)[node];
                D[2 + cu][2 + cv][cw] = h2 * cross.xy[node];
                D[2 + cu][cv][2 + cw] = h2 * cross.xz[node];
                D[cu][2 + cv][2 + cw] = h2 * cross.yz[node];
                D[2 + cu][2 + cv][2 + cw] = h3 * cross.xyz[node];
            }

    // Three successive contractions keep this at O(4^4) instead of O(4^6).
    double T1[4][4][4], T2[4][4][4];
    for (int p = 0; p < 4; ++p)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                double s = 0.0;
                for (int a = 0; a < 4; ++a) s += A[p][a] * D[a][b][c];
                T1[p][b][c] = s;
            }
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            for (int c = 0; c < 4; ++c) {
                double s = 0.0;
                for (int b = 0; b < 4; ++b) s += A[q][b] * T1[p][b][c];
                T2[p][q][c] = s;
            }
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            for (int r = 0; r < 4; ++r) {
                double s = 0.0;
                for (int c = 0; c < 4; ++c) s += A[r][c] * T2[p][q][c];
                patch.coeff[(r * 4 + q) * 4 + p] = s;
            }
    return patch;
}

double HermitePatch::value(const Vec& local) const {
    return eval_patch(*this, local).value;
}

Vec HermitePatch::grad(const Vec& local) const {
    return eval_patch(*this, local).gradient;
}

PatchSample eval_patch(const HermitePatch& patch, const Vec& local) {
    const double u = local[0], v = local[1], w = patch.dim == 3 ? local[2] : 0.0;
    assert(u >= -1e-9 && u <= 1.0 + 1e-9 && v >= -1e-9 && v <= 1.0 + 1e-9);

    double pu[4] = {1.0, u, u * u, u * u * u};
    double pv[4] = {1.0, v, v * v, v * v * v};
    double pw[4] = {1.0, w, w * w, w * w * w};
    double du[4] = {0.0, 1.0, 2.0 * u, 3.0 * u * u};
    double dv[4] = {0.0, 1.0, 2.0 * v, 3.0 * v * v};
    double dw[4] = {0.0, 1.0, 2.0 * w, 3.0 * w * w};

    const int rmax = patch.dim == 3 ? 4 : 1;
    double val = 0.0, gx = 0.0, gy = 0.0, gz = 0.0;
    for (int r = 0; r < rmax; ++r)
        for (int q = 0; q < 4; ++q) {
            const double* c = &patch.coeff[(r * 4 + q) * 4];
            const double row = c[0] + c[1] * u + c[2] * pu[2] + c[3] * pu[3];
            const double drow = c[1] + c[2] * du[2] + c[3] * du[3];
            val += row * pv[q] * pw[r];
            gx += drow * pv[q] * pw[r];
            gy += row * dv[q] * pw[r];
            gz += row * pv[q] * dw[r];
        }

    PatchSample s;
    s.value = val;
    const double inv_h = 1.0 / patch.h;
    s.gradient = {gx * inv_h, gy * inv_h, patch.dim == 3 ? gz * inv_h : 0.0};
    return s;
}

CellLocation locate_cell(const Grid& grid, const Vec& x) {
    CellLocation loc;
    for (int a = 0; a < grid.dim; ++a) {
        const double rel = (x[a] - grid.origin[a]) / grid.h;
        const double fl = std::floor(rel);
        double u = rel - fl;
        long long c = static_cast<long long>(fl);
        if (u >= 1.0) { // floor rounding at exact-node inputs
            u -= 1.0;
            c += 1;
        }
        const long long nn = grid.n;
        loc.cell[a] = static_cast<int>(((c % nn) + nn) % nn);
        loc.local[a] = u;
    }
    return loc;
}

EdgeCubic EdgeCubic::from_hermite(double f0, double f1, double d0, double d1) {
    EdgeCubic c;
    c.c0 = f0;
    c.c1 = d0;
    c.c2 = -3.0 * f0 + 3.0 * f1 - 2.0 * d0 - d1;
    c.c3 = 2.0 * f0 - 2.0 * f1 + d0 + d1;
    return c;
}

namespace {

double polish_root(const EdgeCubic& c, double lo, double hi) {
    // Exact zeros at endpoints are roots; the sign convention below must
    // match the corner classification (negative strictly inside).
    double flo = c.value(lo);
    if (flo == 0.0) return lo;
    if (c.value(hi) == 0.0) return hi;
    for (int it = 0; it < 30; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = c.value(mid);
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        const double d = c.deriv(t);
        if (d == 0.0) break;
        const double tn = t - c.value(t) / d;
        if (tn < lo || tn > hi) break;
        t = tn;
    }
    return t;
}

} // namespace

std::vector<double> edge_roots(const EdgeCubic& cubic) {
    std::vector<double> roots;
    constexpr int kScan = 64;
    double prev_t = 0.0;
    double prev_v = cubic.value(0.0);
    if (prev_v == 0.0) roots.push_back(0.0);
    for (int s = 1; s <= kScan; ++s) {
        const double t = static_cast<double>(s) / kScan;
        const double v = cubic.value(t);
        if (v == 0.0) {
            roots.push_back(t);
        } else if ((prev_v < 0.0) != (v < 0.0) && prev_v != 0.0) {
            roots.push_back(polish_root(cubic, prev_t, t));
        }
        prev_t = t;
        prev_v = v;
    }
    return roots;
}

double bracketed_edge_root(const EdgeCubic& cubic) {
    return polish_root(cubic, 0.0, 1.0);
}

} // namespace sigals
