#include "sigals/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "sigals/errors.hpp"

namespace sigals {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d) throw ConfigError(key + ": expected an integer");
    return i;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(key + ": expected true/false");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    if (out.empty()) throw ConfigError(key + ": expected a comma-separated list");
    return out;
}

Vec to_vec(const std::string& key, const std::string& v) {
    const std::vector<double> list = to_list(key, v);
    if (list.size() < 2 || list.size() > 3)
        throw ConfigError(key + ": expected 2 or 3 components");
    return {list[0], list[1], list.size() == 3 ? list[2] : 0.0};
}

// Pulls a ShapeSpec out of keys under `prefix` ("shape" / "shape2").
ShapeSpec parse_shape(const KeyValues& kv, const std::string& prefix,
                      std::set<std::string>& used) {
    ShapeSpec s;
    auto get = [&](const char* name) -> const std::string* {
        const std::string key = prefix + "." + name;
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        used.insert(key);
        return &it->second;
    };
    if (const auto* v = get("preset")) s = shape_preset(*v);
    if (const auto* v = get("kind")) {
        if (*v == "circle") s.kind = ShapeKind::Circle;
        else if (*v == "ellipse") s.kind = ShapeKind::Ellipse;
        else if (*v == "cassini2d") s.kind = ShapeKind::CassiniOval2D;
        else if (*v == "star") s.kind = ShapeKind::NLobeStar;
        else if (*v == "sphere") s.kind = ShapeKind::Sphere;
        else if (*v == "cassini3d") s.kind = ShapeKind::CassiniOval3D;
        else if (*v == "dumbbell") s.kind = ShapeKind::Dumbbell;
        else if (*v == "rounded_box") s.kind = ShapeKind::RoundedBox;
        else throw ConfigError(prefix + ".kind: unknown shape '" + *v + "'");
    }
    if (const auto* v = get("center")) s.center = to_vec(prefix + ".center", *v);
    if (const auto* v = get("radius")) s.radius = to_double(prefix + ".radius", *v);
    if (const auto* v = get("a")) s.a = to_double(prefix + ".a", *v);
    if (const auto* v = get("b")) s.b = to_double(prefix + ".b", *v);
    if (const auto* v = get("angle")) // degrees in config files
        s.angle = to_double(prefix + ".angle", *v) * kPi / 180.0;
    if (const auto* v = get("base_radius")) s.base_radius = to_double(prefix + ".base_radius", *v);
    if (const auto* v = get("amplitude")) s.amplitude = to_double(prefix + ".amplitude", *v);
    if (const auto* v = get("lobes")) s.lobes = to_int(prefix + ".lobes", *v);
    if (const auto* v = get("half_widths")) {
        const Vec hw = to_vec(prefix + ".half_widths", *v);
        s.half_widths = hw;
    }
    if (const auto* v = get("corner_radius"))
        s.corner_radius = to_double(prefix + ".corner_radius", *v);
    if (const auto* v = get("samples")) s.samples = to_int(prefix + ".samples", *v);
    return s;
}

} // namespace

double DtRule::dt(double h) const { return coeff * std::pow(h, power); }

DtRule DtRule::parse(const std::string& text) {
    const std::string t = trim(text);
    DtRule rule;
    const auto star = t.find('*');
    if (star == std::string::npos) {
        if (t == "h") {
            rule.coeff = 1.0;
            rule.power = 1.0;
            return rule;
        }
        rule.coeff = to_double("dt rule", t);
        rule.power = 0.0;
        return rule;
    }
    rule.coeff = to_double("dt rule", trim(t.substr(0, star)));
    std::string rest = trim(t.substr(star + 1));
    if (rest == "h") {
        rule.power = 1.0;
        return rule;
    }
    if (rest.rfind("h^", 0) != 0)
        throw ConfigError("dt rule must look like 'c', 'c*h' or 'c*h^p': '" + text + "'");
    rule.power = to_double("dt rule", trim(rest.substr(2)));
    return rule;
}

KeyValues parse_key_values(const std::string& text) {
    KeyValues kv;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

KeyValues load_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_key_values(ss.str());
}

void apply_override(KeyValues& kv, const std::string& key, const std::string& value) {
    if (key.empty()) throw ConfigError("override with empty key");
    kv[trim(key)] = trim(value);
}

StepperConfig ExperimentConfig::stepper() const {
    StepperConfig sc;
    sc.beta = beta;
    sc.dt = dt;
    sc.op = StepperConfig::operator_for(mode);
    sc.scheme = scheme;
    sc.solver_tol = solver_tol;
    sc.solver_max_iter = solver_max_iter;
    sc.velocity.band_layers = band_layers;
    return sc;
}

void ExperimentConfig::validate() const {
    if (dim != 2 && dim != 3) throw ConfigError("grid.dim must be 2 or 3");
    if (n < 4) throw ConfigError("grid.n must be at least 4");
    if (!(extent > 0.0)) throw ConfigError("grid.extent must be positive");
    if (t_end < 0.0) throw ConfigError("flow.t_end must be non-negative");
    if (t_end > 0.0 && !(dt > 0.0)) throw ConfigError("flow.dt must be positive");
    if (beta < 0.0) throw ConfigError("flow.beta must be non-negative");
    if (cadence < 1) throw ConfigError("output.cadence must be at least 1");
    if (!(solver_tol > 0.0)) throw ConfigError("solver.tol must be positive");
    if (solver_max_iter < 1) throw ConfigError("solver.max_iter must be at least 1");
    if (band_layers != -1 && band_layers < 4)
        throw ConfigError("solver.band_layers must be at least 4 (or full)");
    shape.validate();
    if (shape2) shape2->validate();
    if (study && study->n_values.size() < 2)
        throw ConfigError("study needs at least 2 resolutions");
    if (reference && reference->kind != "circle_collapse")
        throw ConfigError("reference.kind must be circle_collapse");
}

ExperimentConfig make_config(const KeyValues& kv) {
    ExperimentConfig c;
    std::set<std::string> used;
    auto get = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        used.insert(key);
        return &it->second;
    };
    auto require = [&](const char* key) -> const std::string& {
        const auto* v = get(key);
        if (!v) throw ConfigError(std::string("missing required config key: ") + key);
        return *v;
    };

    c.dim = to_int("grid.dim", require("grid.dim"));
    c.n = to_int("grid.n", require("grid.n"));
    if (const auto* v = get("grid.origin")) c.origin = to_vec("grid.origin", *v);
    if (const auto* v = get("grid.extent")) c.extent = to_double("grid.extent", *v);

    c.shape = parse_shape(kv, "shape", used);
    bool has_shape2 = false;
    for (const auto& [k, v] : kv)
        if (k.rfind("shape2.", 0) == 0) has_shape2 = true;
    if (has_shape2) c.shape2 = parse_shape(kv, "shape2", used);

    if (const auto* v = get("flow.mode")) {
        if (*v == "mean_curvature") c.mode = FlowMode::MeanCurvature;
        else if (*v == "surface_diffusion") c.mode = FlowMode::SurfaceDiffusion;
        else throw ConfigError("flow.mode: expected mean_curvature or surface_diffusion");
    }
    if (const auto* v = get("flow.scheme")) {
        if (*v == "sigals") c.scheme = Scheme::SIGALS;
        else if (*v == "explicit_gals") c.scheme = Scheme::ExplicitGALS;
        else if (*v == "standard_semi_implicit") c.scheme = Scheme::StandardSemiImplicit;
        else throw ConfigError("flow.scheme: expected sigals, explicit_gals or "
                               "standard_semi_implicit");
    }
    if (const auto* v = get("flow.beta")) c.beta = to_double("flow.beta", *v);
    if (const auto* v = get("flow.dt")) c.dt = to_double("flow.dt", *v);
    if (const auto* v = get("flow.t_end")) c.t_end = to_double("flow.t_end", *v);

    if (const auto* v = get("solver.tol")) c.solver_tol = to_double("solver.tol", *v);
    if (const auto* v = get("solver.max_iter")) c.solver_max_iter = to_int("solver.max_iter", *v);
    if (const auto* v = get("solver.band_layers"))
        c.band_layers = *v == "full" ? -1 : to_int("solver.band_layers", *v);

    if (const auto* v = get("output.directory")) c.directory = *v;
    if (const auto* v = get("output.cadence")) c.cadence = to_int("output.cadence", *v);
    if (const auto* v = get("output.write_fields"))
        c.write_fields = to_bool("output.write_fields", *v);

    if (const auto* v = get("reference.kind")) {
        ReferenceBlock ref;
        ref.kind = *v;
        if (const auto* r = get("reference.r0")) ref.r0 = to_double("reference.r0", *r);
        if (const auto* ctr = get("reference.center")) ref.center = to_vec("reference.center", *ctr);
        c.reference = ref;
    }

    if (const auto* v = get("study.n")) {
        StudyBlock study;
        for (double d : to_list("study.n", *v)) {
            const int ni = static_cast<int>(d);
            if (static_cast<double>(ni) != d) throw ConfigError("study.n: expected integers");
            study.n_values.push_back(ni);
        }
        study.dt_rule = DtRule::parse(require("study.dt"));
        c.study = study;
    }

    for (const auto& [k, v] : kv)
        if (!used.count(k)) throw ConfigError("unknown config key: " + k);

    c.validate();
    return c;
}

} // namespace sigals
