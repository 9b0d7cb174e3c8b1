#include "sigals/stencils.hpp"

#include <vector>

namespace sigals {

namespace {

// Periodic neighbor tables; avoids modulo in inner loops.
struct WrapTables {
    std::vector<int> p, m;
    explicit WrapTables(int n) : p(n), m(n) {
        for (int i = 0; i < n; ++i) {
            p[i] = (i + 1) % n;
            m[i] = (i + n - 1) % n;
        }
    }
};

// 2D isotropic weights (per 1/h or 1/h^2).
constexpr double kLapEdge2 = 4.0 / 6.0;
constexpr double kLapCorner2 = 1.0 / 6.0;
constexpr double kLapCenter2 = -20.0 / 6.0;
constexpr double kD1Face2 = 4.0 / 12.0;
constexpr double kD1Corner2 = 1.0 / 12.0;

// 3D isotropic weights.
constexpr double kLapFace3 = 7.0 / 15.0;
constexpr double kLapEdge3 = 1.0 / 10.0;
constexpr double kLapCorner3 = 1.0 / 30.0;
constexpr double kLapCenter3 = -64.0 / 15.0;
constexpr double kD1Face3 = 2.0 / 9.0;
constexpr double kD1Edge3 = 1.0 / 18.0;
constexpr double kD1Corner3 = 1.0 / 72.0;

// The nine rows of the (j,k) neighborhood plane; suffix is (j,k) offset.
struct Rows3 {
    const double *mm, *om, *pm, *mo, *oo, *po, *mp, *op, *pp;
};

inline Rows3 rows3(const double* f, int n, int j, int jp, int jm, int k, int kp, int km) {
    auto row = [&](int jj, int kk) { return f + (static_cast<std::size_t>(kk) * n + jj) * n; };
    return {row(jm, km), row(j, km), row(jp, km), row(jm, k), row(j, k),
            row(jp, k),  row(jm, kp), row(j, kp), row(jp, kp)};
}

} // namespace

ScalarField diff1(const ScalarField& field, int axis) {
    const Grid& g = field.grid();
    const int n = g.n;
    ScalarField out(g);
    const double* f = field.values().data();
    double* o = out.values().data();
    const WrapTables w(n);
    const double inv_h = 1.0 / g.h;

    if (g.dim == 2) {
        for (int j = 0; j < n; ++j) {
            const double* rm = f + static_cast<std::size_t>(w.m[j]) * n;
            const double* rc = f + static_cast<std::size_t>(j) * n;
            const double* rp = f + static_cast<std::size_t>(w.p[j]) * n;
            double* ro = o + static_cast<std::size_t>(j) * n;
            for (int i = 0; i < n; ++i) {
                const int ip = w.p[i], im = w.m[i];
                double d;
                if (axis == 0)
                    d = kD1Face2 * (rc[ip] - rc[im]) +
                        kD1Corner2 * (rp[ip] - rp[im] + rm[ip] - rm[im]);
                else
                    d = kD1Face2 * (rp[i] - rm[i]) +
                        kD1Corner2 * (rp[ip] - rm[ip] + rp[im] - rm[im]);
                ro[i] = d * inv_h;
            }
        }
        return out;
    }

    for (int k = 0; k < n; ++k) {
        const int kp = w.p[k], km = w.m[k];
        for (int j = 0; j < n; ++j) {
            const int jp = w.p[j], jm = w.m[j];
            const Rows3 r = rows3(f, n, j, jp, jm, k, kp, km);
            double* ro = o + (static_cast<std::size_t>(k) * n + j) * n;
            for (int i = 0; i < n; ++i) {
                const int ip = w.p[i], im = w.m[i];
                double face, edge, corner;
                if (axis == 0) {
                    face = r.oo[ip] - r.oo[im];
                    edge = (r.po[ip] - r.po[im]) + (r.mo[ip] - r.mo[im]) +
                           (r.op[ip] - r.op[im]) + (r.om[ip] - r.om[im]);
                    corner = (r.pp[ip] - r.pp[im]) + (r.pm[ip] - r.pm[im]) +
                             (r.mp[ip] - r.mp[im]) + (r.mm[ip] - r.mm[im]);
                } else if (axis == 1) {
                    face = r.po[i] - r.mo[i];
                    edge = (r.po[ip] - r.mo[ip]) + (r.po[im] - r.mo[im]) +
                           (r.pp[i] - r.mp[i]) + (r.pm[i] - r.mm[i]);
                    corner = (r.pp[ip] - r.mp[ip]) + (r.pp[im] - r.mp[im]) +
                             (r.pm[ip] - r.mm[ip]) + (r.pm[im] - r.mm[im]);
                } else {
                    face = r.op[i] - r.om[i];
                    edge = (r.op[ip] - r.om[ip]) + (r.op[im] - r.om[im]) +
                           (r.pp[i] - r.pm[i]) + (r.mp[i] - r.mm[i]);
                    corner = (r.pp[ip] - r.pm[ip]) + (r.pp[im] - r.pm[im]) +
                             (r.mp[ip] - r.mm[ip]) + (r.mp[im] - r.mm[im]);
                }
                ro[i] = (kD1Face3 * face + kD1Edge3 * edge + kD1Corner3 * corner) * inv_h;
            }
        }
    }
    return out;
}

ScalarField diff2(const ScalarField& field, int axis) {
    const Grid& g = field.grid();
    const int n = g.n;
    ScalarField out(g);
    const WrapTables w(n);
    const double inv_h2 = 1.0 / (g.h * g.h);
    const int nk = g.dim == 3 ? n : 1;
    for (int k = 0; k < nk; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double fp, fm;
                if (axis == 0) {
                    fp = field.at(w.p[i], j, k);
                    fm = field.at(w.m[i], j, k);
                } else if (axis == 1) {
                    fp = field.at(i, w.p[j], k);
                    fm = field.at(i, w.m[j], k);
                } else {
                    fp = field.at(i, j, w.p[k]);
                    fm = field.at(i, j, w.m[k]);
                }
                out.at(i, j, k) = (fp - 2.0 * field.at(i, j, k) + fm) * inv_h2;
            }
    return out;
}

ScalarField cross_diff(const ScalarField& field, int axis_a, int axis_b) {
    const Grid& g = field.grid();
    ScalarField out(g);
    const int nk = g.dim == 3 ? g.n : 1;
    for (int k = 0; k < nk; ++k)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                out.at(i, j, k) = cross_diff_at(field, axis_a, axis_b, i, j, k);
    return out;
}

ScalarField laplacian(const ScalarField& field) {
    const Grid& g = field.grid();
    const int n = g.n;
    ScalarField out(g);
    const double* f = field.values().data();
    double* o = out.values().data();
    const WrapTables w(n);
    const double inv_h2 = 1.0 / (g.h * g.h);

    if (g.dim == 2) {
        for (int j = 0; j < n; ++j) {
            const double* rm = f + static_cast<std::size_t>(w.m[j]) * n;
            const double* rc = f + static_cast<std::size_t>(j) * n;
            const double* rp = f + static_cast<std::size_t>(w.p[j]) * n;
            double* ro = o + static_cast<std::size_t>(j) * n;
            for (int i = 0; i < n; ++i) {
                const int ip = w.p[i], im = w.m[i];
                const double edge = rc[ip] + rc[im] + rp[i] + rm[i];
                const double corner = rp[ip] + rp[im] + rm[ip] + rm[im];
                ro[i] = (kLapEdge2 * edge + kLapCorner2 * corner + kLapCenter2 * rc[i]) * inv_h2;
            }
        }
        return out;
    }

    for (int k = 0; k < n; ++k) {
        const int kp = w.p[k], km = w.m[k];
        for (int j = 0; j < n; ++j) {
            const int jp = w.p[j], jm = w.m[j];
            const Rows3 r = rows3(f, n, j, jp, jm, k, kp, km);
            double* ro = o + (static_cast<std::size_t>(k) * n + j) * n;
            for (int i = 0; i < n; ++i) {
                const int ip = w.p[i], im = w.m[i];
                const double face = r.oo[ip] + r.oo[im] + r.po[i] + r.mo[i] + r.op[i] + r.om[i];
                const double edge = r.po[ip] + r.po[im] + r.mo[ip] + r.mo[im] +
                                    r.op[ip] + r.op[im] + r.om[ip] + r.om[im] +
                                    r.pp[i] + r.pm[i] + r.mp[i] + r.mm[i];
                const double corner = r.pp[ip] + r.pp[im] + r.pm[ip] + r.pm[im] +
                                      r.mp[ip] + r.mp[im] + r.mm[ip] + r.mm[im];
                ro[i] = (kLapFace3 * face + kLapEdge3 * edge + kLapCorner3 * corner +
                         kLapCenter3 * r.oo[i]) * inv_h2;
            }
        }
    }
    return out;
}

ScalarField biharmonic(const ScalarField& field) {
    return laplacian(laplacian(field));
}

VectorField gradient(const ScalarField& field) {
    VectorField out(field.grid());
    for (int a = 0; a < field.grid().dim; ++a) out.comp(a) = diff1(field, a).values();
    return out;
}

double diff1_at(const ScalarField& field, int axis, int i, int j, int k) {
    const Grid& g = field.grid();
    auto off = [&](int da, int db, int dc) {
        int d[3] = {0, 0, 0};
        // da along `axis`; db, dc along the remaining axes in order.
        int others[2], o = 0;
        for (int a = 0; a < 3; ++a)
            if (a != axis) others[o++] = a;
        d[axis] = da;
        d[others[0]] = db;
        d[others[1]] = dc;
        return field.wat(i + d[0], j + d[1], g.dim == 3 ? k + d[2] : 0);
    };
    if (g.dim == 2) {
        const double face = off(1, 0, 0) - off(-1, 0, 0);
        const double corner = off(1, 1, 0) - off(-1, 1, 0) + off(1, -1, 0) - off(-1, -1, 0);
        return (kD1Face2 * face + kD1Corner2 * corner) / g.h;
    }
    const double face = off(1, 0, 0) - off(-1, 0, 0);
    const double edge = off(1, 1, 0) - off(-1, 1, 0) + off(1, -1, 0) - off(-1, -1, 0) +
                        off(1, 0, 1) - off(-1, 0, 1) + off(1, 0, -1) - off(-1, 0, -1);
    const double corner = off(1, 1, 1) - off(-1, 1, 1) + off(1, -1, 1) - off(-1, -1, 1) +
                          off(1, 1, -1) - off(-1, 1, -1) + off(1, -1, -1) - off(-1, -1, -1);
    return (kD1Face3 * face + kD1Edge3 * edge + kD1Corner3 * corner) / g.h;
}

double diff2_at(const ScalarField& field, int axis, int i, int j, int k) {
    const Grid& g = field.grid();
    int d[3] = {0, 0, 0};
    d[axis] = 1;
    const double fp = field.wat(i + d[0], j + d[1], g.dim == 3 ? k + d[2] : 0);
    const double fm = field.wat(i - d[0], j - d[1], g.dim == 3 ? k - d[2] : 0);
    return (fp - 2.0 * field.wat(i, j, k) + fm) / (g.h * g.h);
}

double cross_diff_at(const ScalarField& field, int axis_a, int axis_b, int i, int j, int k) {
    const Grid& g = field.grid();
    int da[3] = {0, 0, 0}, db[3] = {0, 0, 0};
    da[axis_a] = 1;
    db[axis_b] = 1;
    auto v = [&](int sa, int sb) {
        return field.wat(i + sa * da[0] + sb * db[0], j + sa * da[1] + sb * db[1],
                         g.dim == 3 ? k + sa * da[2] + sb * db[2] : 0);
    };
    return (v(1, 1) - v(1, -1) - v(-1, 1) + v(-1, -1)) / (4.0 * g.h * g.h);
}

} // namespace sigals
