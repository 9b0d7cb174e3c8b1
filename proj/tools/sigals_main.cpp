// Experiment runner CLI: configure, run and post-process level-set flows.
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "sigals/errors.hpp"
#include "sigals/runner.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

// Remaining "--section.key=value" arguments override config keys.
void apply_cli_overrides(sigals::KeyValues& kv, const std::vector<std::string>& extras) {
    for (const std::string& arg : extras) {
        if (arg.rfind("--", 0) != 0)
            throw sigals::ConfigError("unrecognized argument: " + arg);
        const auto eq = arg.find('=');
        if (eq == std::string::npos)
            throw sigals::ConfigError("override must look like --section.key=value: " + arg);
        sigals::apply_override(kv, arg.substr(2, eq - 2), arg.substr(eq + 1));
    }
}

sigals::ExperimentConfig load_config(const std::string& path,
                                     const std::vector<std::string>& extras) {
    sigals::KeyValues kv = sigals::load_key_values(path);
    apply_cli_overrides(kv, extras);
    if (const char* dir = std::getenv("SIGALS_OUTPUT_DIR"))
        sigals::apply_override(kv, "output.directory", dir);
    return sigals::make_config(kv);
}

void list_presets(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        std::cout << "no presets directory at '" << dir << "'\n";
        return;
    }
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".cfg") names.push_back(e.path().stem().string());
    std::sort(names.begin(), names.end());
    for (const auto& n : names) std::cout << n << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-implicit gradient-augmented level set runner"};
    app.require_subcommand(1);

    std::string config_path, fields_path, out_path, presets_dir = "presets";

    CLI::App* cmd_run = app.add_subcommand("run", "run one experiment config");
    cmd_run->add_option("config", config_path, "config file")->required();
    cmd_run->allow_extras();

    CLI::App* cmd_study = app.add_subcommand("study", "run a convergence study");
    cmd_study->add_option("config", config_path, "config file with a study block")->required();
    cmd_study->allow_extras();

    CLI::App* cmd_presets = app.add_subcommand("presets", "preset configs");
    CLI::App* cmd_presets_list = cmd_presets->add_subcommand("list", "list preset names");
    cmd_presets_list->add_option("--dir", presets_dir, "presets directory");

    CLI::App* cmd_extract = app.add_subcommand("extract", "offline contour extraction");
    cmd_extract->add_option("fields", fields_path, "fields file written by a run")->required();
    cmd_extract->add_option("--out", out_path, "output contour path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            const sigals::ExperimentConfig cfg =
                load_config(config_path, cmd_run->remaining());
            const sigals::RunResult r = sigals::run(cfg);
            std::cout << "run complete: t = " << r.final_state.time << ", "
                      << r.series.size() << " series rows -> " << cfg.directory << "\n";
            if (r.errors) {
                std::cout << "phi: L2 " << r.errors->first.l2 << "  Linf "
                          << r.errors->first.linf << "\n";
                std::cout << "psi: L2 " << r.errors->second.l2 << "  Linf "
                          << r.errors->second.linf << "\n";
            }
        } else if (cmd_study->parsed()) {
            const sigals::ExperimentConfig cfg =
                load_config(config_path, cmd_study->remaining());
            const sigals::StudyResult s = sigals::run_convergence_study(cfg);
            for (std::size_t i = 0; i < s.phi_rows.size(); ++i) {
                const auto& p = s.phi_rows[i];
                std::cout << "N=" << p.n << " h=" << p.h;
                if (p.failed) {
                    std::cout << "  FAILED: " << p.failure << "\n";
                    continue;
                }
                std::cout << "  phi L2=" << p.l2
                          << (p.l2_order ? " order=" + std::to_string(*p.l2_order) : "")
                          << "  psi L2=" << s.psi_rows[i].l2 << "\n";
            }
            std::cout << "tables -> " << cfg.directory << "/study_{phi,psi}.csv\n";
        } else if (cmd_presets_list->parsed()) {
            list_presets(presets_dir);
        } else if (cmd_extract->parsed()) {
            const sigals::FieldsFile f = sigals::read_fields(fields_path);
            if (out_path.empty())
                out_path = std::filesystem::path(fields_path).replace_extension(".contour.csv");
            if (f.phi.grid().dim == 2)
                sigals::write_contour(sigals::extract_interface_2d(f.phi, f.psi), out_path);
            else
                sigals::write_contour(sigals::extract_interface_3d(f.phi, f.psi), out_path);
            std::cout << "contour -> " << out_path << "\n";
        }
    } catch (const sigals::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const sigals::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericalError;
    }
    return 0;
}
