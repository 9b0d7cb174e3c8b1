#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sigals/config.hpp"
#include "sigals/errors.hpp"
#include "sigals/io.hpp"
#include "sigals/runner.hpp"

using namespace sigals;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

KeyValues tiny_circle_kv(const std::string& outdir) {
    return parse_key_values(
        "grid.dim = 2\n"
        "grid.n = 48\n"
        "grid.origin = -2, -2\n"
        "grid.extent = 4\n"
        "shape.kind = circle\n"
        "shape.radius = 1\n"
        "flow.mode = mean_curvature\n"
        "flow.dt = 0.03125\n"
        "flow.t_end = 0.0625\n"
        "reference.kind = circle_collapse\n"
        "reference.r0 = 1\n"
        "output.directory = " + outdir + "\n");
}

} // namespace

TEST_CASE("config parsing") {
    const KeyValues kv = parse_key_values(
        "# comment line\n"
        "grid.dim = 2\n"
        "grid.n = 64   # trailing comment\n"
        "shape.kind = circle\n"
        "shape.radius = 1.5\n"
        "flow.dt = 1e-3\n"
        "flow.t_end = 0.1\n");
    const ExperimentConfig c = make_config(kv);
    CHECK(c.n == 64);
    CHECK(c.shape.radius == 1.5);
    CHECK(c.dt == 1e-3);
    CHECK(c.mode == FlowMode::MeanCurvature);
    CHECK(c.scheme == Scheme::SIGALS);
    CHECK(c.beta == 0.5);

    // unknown keys are config errors
    KeyValues bad = kv;
    bad["flow.dtt"] = "1";
    CHECK_THROWS_AS((void)make_config(bad), ConfigError);

    // missing required key
    KeyValues missing = kv;
    missing.erase("grid.n");
    CHECK_THROWS_AS((void)make_config(missing), ConfigError);

    // malformed line
    CHECK_THROWS_AS((void)parse_key_values("grid.n 64\n"), ConfigError);
}

TEST_CASE("dt rule parsing") {
    CHECK(DtRule::parse("8*h^2").dt(0.0625) == doctest::Approx(0.03125).epsilon(1e-14));
    CHECK(DtRule::parse("0.001").dt(0.5) == doctest::Approx(0.001).epsilon(1e-14));
    CHECK(DtRule::parse("0.5*h").dt(0.25) == doctest::Approx(0.125).epsilon(1e-14));
    CHECK_THROWS_AS((void)DtRule::parse("8*x^2"), ConfigError);
    CHECK_THROWS_AS((void)DtRule::parse("eight"), ConfigError);
}

TEST_CASE("overrides replace config keys") {
    KeyValues kv = tiny_circle_kv("out/x");
    apply_override(kv, "flow.dt", "1e-4");
    apply_override(kv, "output.directory", "out/y");
    const ExperimentConfig c = make_config(kv);
    CHECK(c.dt == 1e-4);
    CHECK(c.directory == "out/y");
}

TEST_CASE("shape presets are addressable from configs") {
    KeyValues kv = tiny_circle_kv("out/z");
    kv.erase("shape.kind");
    kv.erase("shape.radius");
    kv["shape.preset"] = "fig8_star";
    kv["shape.amplitude"] = "0.3"; // explicit keys override preset values
    const ExperimentConfig c = make_config(kv);
    CHECK(c.shape.kind == ShapeKind::NLobeStar);
    CHECK(c.shape.amplitude == 0.3);
    CHECK(c.shape.lobes == 5);
}

TEST_CASE("zero t_end writes initial artifacts only") {
    const std::string dir = "test_out/t0";
    std::filesystem::remove_all(dir);
    KeyValues kv = tiny_circle_kv(dir);
    kv["flow.t_end"] = "0";
    kv.erase("reference.kind");
    kv.erase("reference.r0");
    const RunResult r = run(make_config(kv));
    CHECK(r.series.size() == 1);
    CHECK(r.final_state.time == 0.0);
    CHECK(std::filesystem::exists(dir + "/series.csv"));
    CHECK(std::filesystem::exists(dir + "/contour_000000.csv"));
    CHECK_FALSE(std::filesystem::exists(dir + "/contour_000001.csv"));
}

TEST_CASE("runs are reproducible byte for byte") {
    const std::string d1 = "test_out/repro1", d2 = "test_out/repro2";
    std::filesystem::remove_all(d1);
    std::filesystem::remove_all(d2);
    KeyValues kv = tiny_circle_kv(d1);
    kv["output.write_fields"] = "true";
    (void)run(make_config(kv));
    apply_override(kv, "output.directory", d2);
    (void)run(make_config(kv));
    for (const char* name : {"series.csv", "errors.csv", "contour_000002.csv",
                             "fields_000002.vtk"}) {
        CHECK(slurp(d1 + "/" + std::string(name)) == slurp(d2 + "/" + std::string(name)));
    }
}

TEST_CASE("series file carries the documented header") {
    const std::string dir = "test_out/hdr";
    std::filesystem::remove_all(dir);
    (void)run(make_config(tiny_circle_kv(dir)));
    const std::string series = slurp(dir + "/series.csv");
    CHECK(series.rfind("t,area,length,kappa_max,phi_coupling_error,"
                       "solver_iters_phi,solver_iters_psi_max\n", 0) == 0);
}

TEST_CASE("contour writer closes polylines") {
    InterfaceCurve c;
    c.loops.push_back({vec2(0, 0), vec2(1, 0), vec2(1, 1)});
    write_contour(c, "test_out/loop.csv");
    std::ifstream in("test_out/loop.csv");
    std::string line, first_row, last_row;
    std::getline(in, line); // header
    CHECK(line == "loop_id,vertex_id,x,y");
    while (std::getline(in, line)) {
        if (first_row.empty()) first_row = line;
        last_row = line;
    }
    // first and last vertex ids match
    CHECK(first_row.substr(0, 4) == "0,0,");
    CHECK(last_row.substr(0, 4) == "0,0,");

    // empty contour: header only
    write_contour(InterfaceCurve{}, "test_out/empty.csv");
    CHECK(slurp("test_out/empty.csv") == "loop_id,vertex_id,x,y\n");
}

TEST_CASE("fields files round-trip and carry one scalar per node") {
    const Grid g = make_grid(2, 64, {-2, -2, 0}, 4.0);
    ScalarField phi(g);
    VectorField psi(g);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        phi[i] = 0.25 * static_cast<double>(i % 97) - 1.0;
        psi.set(i, {0.5, -0.25, 0.0});
    }
    write_fields(phi, psi, 1.25, "test_out/fields.vtk");

    // 64^2 scalars present
    const std::string text = slurp("test_out/fields.vtk");
    CHECK(text.find("POINT_DATA 4096") != std::string::npos);

    const FieldsFile f = read_fields("test_out/fields.vtk");
    CHECK(f.t == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(f.phi.grid().n == 64);
    CHECK(f.phi.grid().dim == 2);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        CHECK(f.phi[i] == doctest::Approx(phi[i]).epsilon(1e-11));
    }
    CHECK(f.psi.comp(1)[5] == doctest::Approx(-0.25).epsilon(1e-11));
}

TEST_CASE("convergence study requires at least two resolutions") {
    KeyValues kv = tiny_circle_kv("test_out/study_bad");
    kv["study.n"] = "64";
    kv["study.dt"] = "8*h^2";
    CHECK_THROWS_AS((void)make_config(kv), ConfigError);
}

TEST_CASE("convergence study emits the table with orders") {
    const std::string dir = "test_out/study";
    std::filesystem::remove_all(dir);
    KeyValues kv = tiny_circle_kv(dir);
    kv["study.n"] = "32, 64";
    kv["study.dt"] = "8*h^2";
    kv["flow.t_end"] = "0.125";
    const StudyResult s = run_convergence_study(make_config(kv));
    REQUIRE(s.phi_rows.size() == 2);
    CHECK_FALSE(s.phi_rows[0].failed);
    CHECK_FALSE(s.phi_rows[1].failed);
    CHECK(s.phi_rows[1].l2_order.has_value());
    CHECK(*s.phi_rows[1].l2_order > 1.0); // honest convergence on a coarse pair
    CHECK(std::filesystem::exists(dir + "/study_phi.csv"));
    CHECK(std::filesystem::exists(dir + "/study_psi.csv"));
    const std::string table = slurp(dir + "/study_phi.csv");
    CHECK(table.rfind("n,h,l2,l2_order,linf,linf_order,status\n", 0) == 0);
}
