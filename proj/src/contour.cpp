#include "sigals/contour.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include "sigals/errors.hpp"
#include "sigals/band.hpp"
#include "sigals/hermite.hpp"

namespace sigals {

namespace {

#include "mc_table.inc"

// Marching cubes corner offsets (standard ordering) and, per edge, the corner
// at the low end of its axis plus that axis.
constexpr int kCubeCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                   {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
constexpr int kCubeEdgeBase[12] = {0, 1, 3, 0, 4, 5, 7, 4, 0, 1, 2, 3};
constexpr int kCubeEdgeAxis[12] = {0, 1, 0, 1, 0, 1, 0, 1, 2, 2, 2, 2};

// Hermite cubic of phi restricted to the grid edge starting at node (i,j,k)
// along `axis`; derivative data is the tangential psi component scaled by h.
EdgeCubic edge_cubic(const ScalarField& phi, const VectorField& psi, int axis, int i, int j,
                     int k) {
    const Grid& g = phi.grid();
    const int i1 = axis == 0 ? i + 1 : i;
    const int j1 = axis == 1 ? j + 1 : j;
    const int k1 = axis == 2 ? k + 1 : k;
    const std::size_t a = g.windex(i, j, k), b = g.windex(i1, j1, k1);
    return EdgeCubic::from_hermite(phi[a], phi[b], g.h * psi.comp(axis)[a],
                                   g.h * psi.comp(axis)[b]);
}

struct EdgeKey {
    int axis, i, j, k;
    bool operator<(const EdgeKey& o) const {
        if (axis != o.axis) return axis < o.axis;
        if (k != o.k) return k < o.k;
        if (j != o.j) return j < o.j;
        return i < o.i;
    }
};

} // namespace

InterfaceCurve extract_interface_2d(const ScalarField& phi, const VectorField& psi) {
    const Grid& g = phi.grid();
    const int n = g.n;
    InterfaceCurve out;

    // Crossing vertex per cut lattice edge, shared between the two cells.
    std::map<EdgeKey, int> edge_vertex;
    std::vector<Vec> vertices;
    auto vertex_on_edge = [&](int axis, int i, int j) {
        const EdgeKey key{axis, g.wrap(i), g.wrap(j), 0};
        auto it = edge_vertex.find(key);
        if (it != edge_vertex.end()) return it->second;
        const EdgeCubic c = edge_cubic(phi, psi, axis, key.i, key.j, 0);
        const double t = bracketed_edge_root(c);
        Vec p = g.position(key.i, key.j);
        p[axis] += t * g.h;
        vertices.push_back(p);
        const int id = static_cast<int>(vertices.size()) - 1;
        edge_vertex.emplace(key, id);
        return id;
    };

    // Per-cell segments as vertex-id pairs. Cell edges: 0 bottom, 1 right,
    // 2 top, 3 left.
    CrossDerivatives cross; // built lazily, only saddle cells need a patch
    bool have_cross = false;
    std::vector<std::pair<int, int>> segments;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double f0 = phi.at(i, j), f1 = phi.wat(i + 1, j);
            const double f2 = phi.wat(i + 1, j + 1), f3 = phi.wat(i, j + 1);
            int mask = 0;
            if (f0 < 0.0) mask |= 1;
            if (f1 < 0.0) mask |= 2;
            if (f2 < 0.0) mask |= 4;
            if (f3 < 0.0) mask |= 8;
            if (mask == 0 || mask == 15) continue;

            auto ev = [&](int edge) {
                switch (edge) {
                    case 0: return vertex_on_edge(0, i, j);
                    case 1: return vertex_on_edge(1, i + 1, j);
                    case 2: return vertex_on_edge(0, i, j + 1);
                    default: return vertex_on_edge(1, i, j);
                }
            };
            auto emit = [&](int ea, int eb) { segments.emplace_back(ev(ea), ev(eb)); };

            switch (mask) {
                case 1: case 14: emit(3, 0); break;
                case 2: case 13: emit(0, 1); break;
                case 4: case 11: emit(1, 2); break;
                case 8: case 7:  emit(2, 3); break;
                case 3: case 12: emit(3, 1); break;
                case 6: case 9:  emit(0, 2); break;
                case 5:
                case 10: {
                    if (!have_cross) {
                        cross = node_cross_derivatives(psi);
                        have_cross = true;
                    }
                    const HermitePatch patch = build_patch(g, phi, psi, cross, {i, j, 0});
                    const bool center_in = patch.value({0.5, 0.5, 0.0}) < 0.0;
                    const bool pair_a = (mask == 5) == center_in;
                    if (pair_a) {
                        emit(0, 1);
                        emit(2, 3);
                    } else {
                        emit(3, 0);
                        emit(1, 2);
                    }
                    break;
                }
                default: break;
            }
        }
    if (segments.empty()) return out;

    // Stitch: on a periodic grid every crossing vertex joins exactly two
    // segments, so walking the incidence map yields closed loops.
    std::vector<std::array<int, 2>> incident(vertices.size(), {-1, -1});
    for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
        for (int v : {segments[s].first, segments[s].second}) {
            if (incident[v][0] < 0)
                incident[v][0] = s;
            else if (incident[v][1] < 0)
                incident[v][1] = s;
            else
                throw NumericalError("contour stitching: vertex with degree > 2");
        }
    }
    std::vector<bool> used(segments.size(), false);
    for (int s0 = 0; s0 < static_cast<int>(segments.size()); ++s0) {
        if (used[s0]) continue;
        std::vector<Vec> loop;
        std::vector<int> loop_vertex_ids;
        int seg = s0;
        int v = segments[s0].first;
        while (!used[seg]) {
            used[seg] = true;
            loop.push_back(vertices[v]);
            loop_vertex_ids.push_back(v);
            v = segments[seg].first == v ? segments[seg].second : segments[seg].first;
            seg = incident[v][0] == seg ? incident[v][1] : incident[v][0];
            if (seg < 0) throw NumericalError("contour stitching: open polyline");
        }

        // Orient with the interior (phi < 0) on the left: at each vertex the
        // outward normal is along psi, so require cross(tangent, psi) < 0.
        double score = 0.0;
        const std::size_t m = loop.size();
        for (std::size_t a = 0; a < m; ++a) {
            const Vec& p = loop[a];
            const Vec& q = loop[(a + 1) % m];
            const Vec t = q - p;
            const CellLocation loc = locate_cell(g, p);
            const std::size_t node = g.windex(loc.cell[0] + (loc.local[0] > 0.5 ? 1 : 0),
                                              loc.cell[1] + (loc.local[1] > 0.5 ? 1 : 0));
            const Vec grad = psi.at(node);
            score += t[0] * grad[1] - t[1] * grad[0];
        }
        if (score > 0.0) std::reverse(loop.begin(), loop.end());
        out.loops.push_back(std::move(loop));
    }
    return out;
}

InterfaceMesh extract_interface_3d(const ScalarField& phi, const VectorField& psi) {
    const Grid& g = phi.grid();
    const int n = g.n;
    InterfaceMesh out;
    std::map<EdgeKey, int> edge_vertex;

    auto vertex_on_edge = [&](int axis, int i, int j, int k) {
        const EdgeKey key{axis, g.wrap(i), g.wrap(j), g.wrap(k)};
        auto it = edge_vertex.find(key);
        if (it != edge_vertex.end()) return it->second;
        const EdgeCubic c = edge_cubic(phi, psi, axis, key.i, key.j, key.k);
        const double t = bracketed_edge_root(c);
        Vec p = g.position(key.i, key.j, key.k);
        p[axis] += t * g.h;
        out.vertices.push_back(p);
        const int id = static_cast<int>(out.vertices.size()) - 1;
        edge_vertex.emplace(key, id);
        return id;
    };

    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double f[8];
                int mask = 0;
                for (int c = 0; c < 8; ++c) {
                    f[c] = phi.wat(i + kCubeCorner[c][0], j + kCubeCorner[c][1],
                                   k + kCubeCorner[c][2]);
                    if (f[c] < 0.0) mask |= 1 << c;
                }
                if (mask == 0 || mask == 255) continue;

                int ev[12];
                for (int e = 0; e < 12; ++e) ev[e] = -1;
                const int* tri = kTriTable[mask];
                for (int t = 0; tri[t] != -1; t += 3) {
                    int ids[3];
                    for (int v = 0; v < 3; ++v) {
                        const int e = tri[t + v];
                        if (ev[e] < 0) {
                            const int* base = kCubeCorner[kCubeEdgeBase[e]];
                            ev[e] = vertex_on_edge(kCubeEdgeAxis[e], i + base[0], j + base[1],
                                                   k + base[2]);
                        }
                        ids[v] = ev[e];
                    }
                    out.triangles.push_back({ids[0], ids[1], ids[2]});
                }
            }
    return out;
}

double enclosed_area(const InterfaceCurve& curve) {
    double area = 0.0;
    for (const auto& loop : curve.loops) {
        if (loop.size() < 3) throw NumericalError("enclosed_area: degenerate loop");
        double a = 0.0;
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const Vec& p = loop[i];
            const Vec& q = loop[(i + 1) % loop.size()];
            a += p[0] * q[1] - q[0] * p[1];
        }
        area += 0.5 * a;
    }
    return area;
}

double interface_length(const InterfaceCurve& curve) {
    double len = 0.0;
    for (const auto& loop : curve.loops)
        for (std::size_t i = 0; i < loop.size(); ++i)
            len += norm(loop[(i + 1) % loop.size()] - loop[i]);
    return len;
}

int count_components(const InterfaceCurve& curve) {
    return static_cast<int>(curve.loops.size());
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

int count_components(const InterfaceMesh& mesh) {
    if (mesh.triangles.empty()) return 0;
    UnionFind uf(static_cast<int>(mesh.vertices.size()));
    for (const auto& t : mesh.triangles) {
        uf.unite(t[0], t[1]);
        uf.unite(t[1], t[2]);
    }
    std::vector<bool> seen(mesh.vertices.size(), false);
    int count = 0;
    for (const auto& t : mesh.triangles) {
        const int root = uf.find(t[0]);
        if (!seen[root]) {
            seen[root] = true;
            ++count;
        }
    }
    return count;
}

double enclosed_volume(const InterfaceMesh& mesh) {
    double v = 0.0;
    for (const auto& t : mesh.triangles) {
        const Vec &a = mesh.vertices[t[0]], &b = mesh.vertices[t[1]], &c = mesh.vertices[t[2]];
        v += (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
              a[2] * (b[0] * c[1] - b[1] * c[0])) / 6.0;
    }
    return std::fabs(v);
}

double surface_area(const InterfaceMesh& mesh) {
    double s = 0.0;
    for (const auto& t : mesh.triangles) {
        const Vec ab = mesh.vertices[t[1]] - mesh.vertices[t[0]];
        const Vec ac = mesh.vertices[t[2]] - mesh.vertices[t[0]];
        const Vec cr = {ab[1] * ac[2] - ab[2] * ac[1], ab[2] * ac[0] - ab[0] * ac[2],
                        ab[0] * ac[1] - ab[1] * ac[0]};
        s += 0.5 * norm(cr);
    }
    return s;
}

std::pair<ErrorReport, ErrorReport> band_error(const ScalarField& phi, const VectorField& psi,
                                               const ReferenceSdf& reference) {
    const Grid& g = phi.grid();
    const BandMask band = build_band(phi, 0);
    ErrorReport ephi, epsi;
    ephi.node_count = epsi.node_count = band.adjacent_nodes().size();
    if (band.adjacent_nodes().empty()) return {ephi, epsi};

    double sum_phi = 0.0, sum_psi = 0.0;
    const int n = g.n;
    for (std::size_t c : band.adjacent_nodes()) {
        const int i = static_cast<int>(c % n);
        const int j = static_cast<int>((c / n) % n);
        const int k = static_cast<int>(c / (static_cast<std::size_t>(n) * n));
        const auto [ref_val, ref_grad] = reference(g.position(i, j, k));
        const double dphi = phi[c] - ref_val;
        const double dpsi = norm(psi.at(c) - ref_grad);
        sum_phi += dphi * dphi;
        sum_psi += dpsi * dpsi;
        ephi.linf = std::max(ephi.linf, std::fabs(dphi));
        epsi.linf = std::max(epsi.linf, dpsi);
    }
    const double inv = 1.0 / static_cast<double>(ephi.node_count);
    ephi.l2 = std::sqrt(sum_phi * inv);
    epsi.l2 = std::sqrt(sum_psi * inv);
    return {ephi, epsi};
}

std::optional<double> convergence_order(double err_h, double err_h2) {
    if (err_h <= 0.0 || err_h2 <= 0.0) return std::nullopt;
    return std::log2(err_h / err_h2);
}

} // namespace sigals
