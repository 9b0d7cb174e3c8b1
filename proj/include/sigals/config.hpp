#ifndef SIGALS_CONFIG_HPP
#define SIGALS_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sigals/contour.hpp"
#include "sigals/shapes.hpp"
#include "sigals/stepper.hpp"

namespace sigals {

// dt rule of the form c * h^p ("8*h^2", "0.001", "0.5*h").
struct DtRule {
    double coeff = 0.0;
    double power = 0.0;
    double dt(double h) const;

    static DtRule parse(const std::string& text);
};

struct StudyBlock {
    std::vector<int> n_values;
    DtRule dt_rule;
};

struct ReferenceBlock {
    std::string kind; // "circle_collapse"
    double r0 = 1.0;
    Vec center{};
};

// One experiment: grid + shape(s) + flow + solver + output (+ study).
struct ExperimentConfig {
    // grid
    int dim = 2;
    int n = 0;
    Vec origin = {-2.0, -2.0, -2.0};
    double extent = 4.0;
    // shapes; shape2 (optional) is min-unioned with shape at initialization
    ShapeSpec shape;
    std::optional<ShapeSpec> shape2;
    // flow
    FlowMode mode = FlowMode::MeanCurvature;
    Scheme scheme = Scheme::SIGALS;
    double beta = 0.5;
    double dt = 0.0;
    double t_end = 0.0;
    // solver
    double solver_tol = 1e-8;
    int solver_max_iter = 5000;
    int band_layers = -1; // -1: extend to the rest of the domain
    // output
    std::string directory = "out";
    int cadence = 1;
    bool write_fields = false;
    // diagnostics reference (optional)
    std::optional<ReferenceBlock> reference;
    // convergence study (optional)
    std::optional<StudyBlock> study;

    StepperConfig stepper() const;
    void validate() const;
};

// Raw key=value view of a config file (dotted section names, '#' comments).
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(const std::string& text);
KeyValues load_key_values(const std::string& path);

// Applies one "--section.key=value" style override.
void apply_override(KeyValues& kv, const std::string& key, const std::string& value);

// Builds and validates the experiment; unknown keys are config errors.
ExperimentConfig make_config(const KeyValues& kv);

} // namespace sigals

#endif
