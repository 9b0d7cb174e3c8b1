#include "sigals/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sigals/errors.hpp"

namespace sigals {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary); // binary: fixed newlines everywhere
    if (!out) throw NumericalError("cannot open output file: " + path);
    return out;
}

} // namespace

void write_series(const std::vector<SeriesRow>& rows, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t,area,length,kappa_max,phi_coupling_error,solver_iters_phi,solver_iters_psi_max\n";
    for (const auto& r : rows)
        out << fmt(r.t) << ',' << fmt(r.area) << ',' << fmt(r.length) << ',' << fmt(r.kappa_max)
            << ',' << fmt(r.phi_coupling_error) << ',' << r.solver_iters_phi << ','
            << r.solver_iters_psi_max << '\n';
    if (!out) throw NumericalError("write failed: " + path);
}

void write_contour(const InterfaceCurve& curve, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "loop_id,vertex_id,x,y\n";
    for (std::size_t l = 0; l < curve.loops.size(); ++l) {
        const auto& loop = curve.loops[l];
        for (std::size_t v = 0; v < loop.size(); ++v)
            out << l << ',' << v << ',' << fmt(loop[v][0]) << ',' << fmt(loop[v][1]) << '\n';
        // repeated first vertex closes the polyline
        if (!loop.empty())
            out << l << ',' << 0 << ',' << fmt(loop[0][0]) << ',' << fmt(loop[0][1]) << '\n';
    }
    if (!out) throw NumericalError("write failed: " + path);
}

void write_contour(const InterfaceMesh& mesh, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "loop_id,vertex_id,x,y,z\n";
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        for (int v = 0; v < 3; ++v) {
            const Vec& p = mesh.vertices[mesh.triangles[t][v]];
            out << t << ',' << v << ',' << fmt(p[0]) << ',' << fmt(p[1]) << ',' << fmt(p[2])
                << '\n';
        }
        const Vec& p = mesh.vertices[mesh.triangles[t][0]];
        out << t << ',' << 0 << ',' << fmt(p[0]) << ',' << fmt(p[1]) << ',' << fmt(p[2]) << '\n';
    }
    if (!out) throw NumericalError("write failed: " + path);
}

void write_fields(const ScalarField& phi, const VectorField& psi, double t,
                  const std::string& path) {
    const Grid& g = phi.grid();
    std::ofstream out = open_out(path);
    out << "# vtk DataFile Version 3.0\n";
    out << "sigals fields t=" << fmt(t) << " dim=" << g.dim << '\n';
    out << "ASCII\nDATASET STRUCTURED_POINTS\n";
    out << "DIMENSIONS " << g.n << ' ' << g.n << ' ' << (g.dim == 3 ? g.n : 1) << '\n';
    out << "ORIGIN " << fmt(g.origin[0]) << ' ' << fmt(g.origin[1]) << ' ' << fmt(g.origin[2])
        << '\n';
    out << "SPACING " << fmt(g.h) << ' ' << fmt(g.h) << ' ' << fmt(g.h) << '\n';
    out << "POINT_DATA " << g.node_count() << '\n';
    out << "SCALARS phi double 1\nLOOKUP_TABLE default\n";
    for (std::size_t i = 0; i < phi.size(); ++i) out << fmt(phi[i]) << '\n';
    out << "VECTORS psi double\n";
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const Vec v = psi.at(i);
        out << fmt(v[0]) << ' ' << fmt(v[1]) << ' ' << fmt(v[2]) << '\n';
    }
    if (!out) throw NumericalError("write failed: " + path);
}

FieldsFile read_fields(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open fields file: " + path);

    auto bad = [&](const std::string& why) -> std::runtime_error {
        return ConfigError("fields file " + path + ": " + why);
    };

    std::string line, word;
    std::getline(in, line); // vtk banner
    std::getline(in, line); // title carries t= and dim=
    double t = 0.0;
    int dim = 3;
    {
        std::stringstream ss(line);
        while (ss >> word) {
            if (word.rfind("t=", 0) == 0) t = std::stod(word.substr(2));
            if (word.rfind("dim=", 0) == 0) dim = std::stoi(word.substr(4));
        }
    }
    std::getline(in, line); // ASCII
    std::getline(in, line); // DATASET
    int nx = 0, ny = 0, nz = 0;
    Vec origin{};
    double hx = 0, hy = 0, hz = 0;
    std::size_t count = 0;
    in >> word >> nx >> ny >> nz;
    if (word != "DIMENSIONS") throw bad("expected DIMENSIONS");
    in >> word >> origin[0] >> origin[1] >> origin[2];
    if (word != "ORIGIN") throw bad("expected ORIGIN");
    in >> word >> hx >> hy >> hz;
    if (word != "SPACING") throw bad("expected SPACING");
    in >> word >> count;
    if (word != "POINT_DATA") throw bad("expected POINT_DATA");
    if (nx != ny || (nz != 1 && nz != nx)) throw bad("grid is not square/cubic");
    if (dim == 3 && nz == 1) dim = 2;

    Grid g = make_grid(dim, nx, origin, hx * nx);
    FieldsFile f;
    f.t = t;
    f.phi = ScalarField(g);
    f.psi = VectorField(g);
    in >> word; // SCALARS
    std::getline(in, line);
    std::getline(in, line); // LOOKUP_TABLE
    for (std::size_t i = 0; i < g.node_count(); ++i)
        if (!(in >> f.phi[i])) throw bad("truncated phi data");
    in >> word; // VECTORS
    std::getline(in, line);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        Vec v{};
        if (!(in >> v[0] >> v[1] >> v[2])) throw bad("truncated psi data");
        f.psi.set(i, v);
    }
    return f;
}

void write_errors(const std::vector<ErrorRow>& rows, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "field,l2,linf,node_count,band\n";
    for (const auto& r : rows)
        out << r.field << ',' << fmt(r.report.l2) << ',' << fmt(r.report.linf) << ','
            << r.report.node_count << ',' << r.report.band_tag << '\n';
    if (!out) throw NumericalError("write failed: " + path);
}

void write_study(const std::vector<StudyRow>& rows, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "n,h,l2,l2_order,linf,linf_order,status\n";
    for (const auto& r : rows) {
        out << r.n << ',' << fmt(r.h) << ',';
        if (r.failed) {
            out << ",,,," << "failed: " << r.failure << '\n';
            continue;
        }
        out << fmt(r.l2) << ',' << (r.l2_order ? fmt(*r.l2_order) : std::string()) << ','
            << fmt(r.linf) << ',' << (r.linf_order ? fmt(*r.linf_order) : std::string())
            << ",ok\n";
    }
    if (!out) throw NumericalError("write failed: " + path);
}

} // namespace sigals
