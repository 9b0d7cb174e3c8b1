#include "sigals/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sigals/errors.hpp"
#include "sigals/stencils.hpp"

namespace sigals {

namespace {

void decode(const Grid& g, std::size_t c, int& i, int& j, int& k) {
    const int n = g.n;
    i = static_cast<int>(c % n);
    j = static_cast<int>((c / n) % n);
    k = static_cast<int>(c / (static_cast<std::size_t>(n) * n));
}

} // namespace

VectorField unit_normal(const VectorField& psi) {
    const Grid& g = psi.grid();
    VectorField n(g);
    for (std::size_t c = 0; c < g.node_count(); ++c) {
        const Vec p = psi.at(c);
        const double inv = 1.0 / std::sqrt(dot(p, p) + kGeometryEps);
        n.set(c, inv * p);
    }
    return n;
}

ScalarField curvature(const VectorField& psi, const BandMask& band) {
    const Grid& g = psi.grid();
    ScalarField kappa(g, 0.0); // zero in the entire domain before extension
    const ScalarField px(g, psi.comp(0));
    const ScalarField py(g, psi.comp(1));

    if (g.dim == 2) {
        for (std::size_t c : band.band_nodes()) {
            if (band.layer(c) > kKappaVicinity) continue;
            int i, j, k;
            decode(g, c, i, j, k);
            const double fx = px[c], fy = py[c];
            const double fxx = diff1_at(px, 0, i, j);
            const double fyy = diff1_at(py, 1, i, j);
            const double fxy = 0.5 * (diff1_at(py, 0, i, j) + diff1_at(px, 1, i, j));
            const double g2 = fx * fx + fy * fy + kGeometryEps;
            kappa[c] = (fxx * fy * fy + fyy * fx * fx - 2.0 * fxy * fx * fy) /
                       (g2 * std::sqrt(g2));
        }
        return kappa;
    }

    const ScalarField pz(g, psi.comp(2));
    for (std::size_t c : band.band_nodes()) {
        if (band.layer(c) > kKappaVicinity) continue;
        int i, j, k;
        decode(g, c, i, j, k);
        const double fx = px[c], fy = py[c], fz = pz[c];
        const double fxx = diff1_at(px, 0, i, j, k);
        const double fyy = diff1_at(py, 1, i, j, k);
        const double fzz = diff1_at(pz, 2, i, j, k);
        const double fxy = 0.5 * (diff1_at(py, 0, i, j, k) + diff1_at(px, 1, i, j, k));
        const double fxz = 0.5 * (diff1_at(pz, 0, i, j, k) + diff1_at(px, 2, i, j, k));
        const double fyz = 0.5 * (diff1_at(pz, 1, i, j, k) + diff1_at(py, 2, i, j, k));
        const double g2 = fx * fx + fy * fy + fz * fz + kGeometryEps;
        kappa[c] = (fxx * (fy * fy + fz * fz) + fyy * (fx * fx + fz * fz) +
                    fzz * (fx * fx + fy * fy) - 2.0 * fxy * fx * fy - 2.0 * fxz * fx * fz -
                    2.0 * fyz * fy * fz) /
                   (g2 * std::sqrt(g2));
    }
    return kappa;
}

ScalarField extend(const ScalarField& q, const ScalarField& phi, const VectorField& n,
                   const BandMask& band, const ExtensionOptions& opts) {
    const Grid& g = q.grid();
    const double h = g.h;

    // Transport velocity w = sign(phi)*n with the smoothed sign, frozen over
    // the iteration. Steady state of the upwind discretization:
    // q_c = sum_a |w_a| q_upwind(a) / sum_a |w_a| (w > 0 reads backward).
    struct UpdateNode {
        std::size_t c;
        std::size_t nb[3];
        double aw[3]; // |w_a|
        double wsum;
    };
    std::vector<UpdateNode> nodes;
    nodes.reserve(band.band_nodes().size());
    for (std::size_t c : band.band_nodes()) {
        if (band.layer(c) <= opts.frozen_layers) continue; // source values stay fixed
        int i, j, k;
        decode(g, c, i, j, k);
        const double s = phi[c] / std::sqrt(phi[c] * phi[c] + h * h);
        UpdateNode un;
        un.c = c;
        un.wsum = 0.0;
        const Vec nv = n.at(c);
        for (int a = 0; a < g.dim; ++a) {
            const double w = s * nv[a];
            un.aw[a] = std::fabs(w);
            un.wsum += un.aw[a];
            const int d = w > 0.0 ? -1 : 1;
            un.nb[a] = g.windex(i + (a == 0 ? d : 0), j + (a == 1 ? d : 0),
                                k + (a == 2 ? d : 0));
        }
        for (int a = g.dim; a < 3; ++a) {
            un.aw[a] = 0.0;
            un.nb[a] = c;
        }
        nodes.push_back(un);
    }
    if (nodes.empty()) return q;

    // Gauss-Seidel in layer order: characteristics point away from the
    // interface, so one inner-to-outer sweep carries information across the
    // whole band; later sweeps settle tangential coupling.
    std::stable_sort(nodes.begin(), nodes.end(), [&](const UpdateNode& a, const UpdateNode& b) {
        return band.layer(a.c) < band.layer(b.c);
    });

    ScalarField cur = q;
    double residual = 0.0;
    double past_residual = 1e300; // 100 sweeps ago
    std::vector<double> history;
    for (int it = 0; it < opts.max_iters; ++it) {
        double scale = 1e-300;
        for (std::size_t c : band.band_nodes()) scale = std::max(scale, std::fabs(cur[c]));

        residual = 0.0;
        for (const UpdateNode& un : nodes) {
            if (un.wsum < 1e-14) continue; // degenerate normal, nothing to transport
            double acc = 0.0;
            for (int a = 0; a < g.dim; ++a) acc += un.aw[a] * cur[un.nb[a]];
            const double nv = acc / un.wsum;
            residual = std::max(residual, std::fabs(nv - cur[un.c]));
            cur[un.c] = nv;
        }
        residual /= scale;
        if (it >= 1 && residual < opts.residual_tol) return cur;

        // Medial-axis regions (opposing normals) relax tangentially and can
        // plateau; accept a small stagnant residual rather than spin.
        history.push_back(residual);
        if (history.size() >= 100) past_residual = history[history.size() - 100];
        if (residual < 1e-3 && residual > 0.5 * past_residual) return cur;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "extension did not reach steady state: residual %.3e after %d sweeps",
                  residual, opts.max_iters);
    throw NumericalError(buf);
}

ScalarField surface_laplacian_kappa(const ScalarField& kappa, const VectorField& psi,
                                    const BandMask& band) {
    const Grid& g = psi.grid();
    ScalarField s_field(g, 0.0);
    const ScalarField px(g, psi.comp(0));
    const ScalarField py(g, psi.comp(1));

    if (g.dim == 2) {
        for (std::size_t c : band.band_nodes()) {
            if (band.layer(c) > kSurfVicinity) continue;
            int i, j, k;
            decode(g, c, i, j, k);
            const double fx = px[c], fy = py[c];
            const double kx = diff1_at(kappa, 0, i, j);
            const double ky = diff1_at(kappa, 1, i, j);
            const double kxx = diff2_at(kappa, 0, i, j);
            const double kyy = diff2_at(kappa, 1, i, j);
            const double kxy = cross_diff_at(kappa, 0, 1, i, j);
            const double g2 = fx * fx + fy * fy + kGeometryEps;
            s_field[c] = (kxx * fy * fy + kyy * fx * fx - 2.0 * kxy * fx * fy) / g2 -
                         kappa[c] * (kx * fx + ky * fy) / std::sqrt(g2);
        }
        return s_field;
    }

    const ScalarField pz(g, psi.comp(2));
    for (std::size_t c : band.band_nodes()) {
        if (band.layer(c) > kSurfVicinity) continue;
        int i, j, k;
        decode(g, c, i, j, k);
        const double fx = px[c], fy = py[c], fz = pz[c];
        const double kx = diff1_at(kappa, 0, i, j, k);
        const double ky = diff1_at(kappa, 1, i, j, k);
        const double kz = diff1_at(kappa, 2, i, j, k);
        const double kxx = diff2_at(kappa, 0, i, j, k);
        const double kyy = diff2_at(kappa, 1, i, j, k);
        const double kzz = diff2_at(kappa, 2, i, j, k);
        const double kxy = cross_diff_at(kappa, 0, 1, i, j, k);
        const double kxz = cross_diff_at(kappa, 0, 2, i, j, k);
        const double kyz = cross_diff_at(kappa, 1, 2, i, j, k);
        const double g2 = fx * fx + fy * fy + fz * fz + kGeometryEps;
        s_field[c] = (kxx * (fy * fy + fz * fz) + kyy * (fx * fx + fz * fz) +
                      kzz * (fx * fx + fy * fy) - 2.0 * kxy * fx * fy - 2.0 * kxz * fx * fz -
                      2.0 * kyz * fy * fz) / g2 -
                     kappa[c] * (kx * fx + ky * fy + kz * fz) / std::sqrt(g2);
    }
    return s_field;
}

VelocityField compute_velocity(const ScalarField& phi, const VectorField& psi,
                               FlowMode mode, const VelocityOptions& opts) {
    const Grid& g = phi.grid();
    VelocityField out{VectorField(g), mode, ScalarField(g, 0.0),
                      build_band(phi, opts.band_layers)};
    const VectorField n = unit_normal(psi);

    ScalarField kappa = curvature(psi, out.band);
    for (std::size_t c : out.band.adjacent_nodes())
        out.kappa_max_adjacent = std::max(out.kappa_max_adjacent, std::fabs(kappa[c]));

    ScalarField speed; // normal speed: -kappa or S
    if (mode == FlowMode::SurfaceDiffusion) {
        // The surface Laplacian wants the raw vicinity curvature: its second
        // term cancels exactly the normal variation the raw field carries.
        ExtensionOptions kappa_ext = opts.extension;
        kappa_ext.frozen_layers = kKappaVicinity;
        kappa = extend(kappa, phi, n, out.band, kappa_ext);
        ScalarField s = surface_laplacian_kappa(kappa, psi, out.band);
        ExtensionOptions s_ext = opts.extension;
        s_ext.frozen_layers = kSurfVicinity;
        speed = extend(s, phi, n, out.band, s_ext);
    } else {
        // Here kappa itself is the speed. Shift the nodal value to the
        // interface value along the normal ray: a level set at signed
        // distance phi has kappa = kappa0/(1 + phi*kappa0), so
        // kappa0 = kappa/(1 - phi*kappa) (per-principal-curvature in 3D,
        // hence the half). The extended velocity is then flat along normals
        // at the interface speed, which is what keeps phi a distance
        // function with no reinitialization. The shift argument saturates at
        // 1/2: past that the vicinity node lies beyond the feature's own
        // curvature radius, where the ray transform diverges.
        for (std::size_t c : out.band.band_nodes()) {
            if (out.band.layer(c) > kKappaVicinity) continue;
            const double shift = g.dim == 2 ? 1.0 : 0.5;
            const double fk = std::clamp(phi[c] * kappa[c] * shift, -0.5, 0.5);
            kappa[c] /= 1.0 - fk;
        }
        ExtensionOptions kappa_ext = opts.extension;
        kappa_ext.frozen_layers = kKappaVicinity;
        kappa = extend(kappa, phi, n, out.band, kappa_ext);
        speed = kappa;
        for (std::size_t c : out.band.band_nodes()) speed[c] = -speed[c];
    }
    out.kappa = kappa;

    for (std::size_t c : out.band.band_nodes()) out.v.set(c, speed[c] * n.at(c));
    return out;
}

} // namespace sigals
