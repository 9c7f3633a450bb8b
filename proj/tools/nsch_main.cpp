// nsch-sim: pseudo-spectral two-phase flow box solver and its experiment
// presets.  Exit codes: 0 success, 2 config error, 3 divergence,
// 4 inequality violation.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nsch/config.hpp"
#include "nsch/errors.hpp"
#include "nsch/presets.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string output_dir;
    bool has_seed = false;
    std::uint64_t seed = 0;
    bool linearized = false;
    bool paper_mode = true;
    bool paper_mode_set = false;
};

int run_experiment(const CliOptions& opt, const std::string& experiment) {
    nsch::RunConfig cfg;
    try {
        cfg = nsch::load_config_file(opt.config_path);
        if (!experiment.empty()) cfg.experiment = experiment;
        if (opt.has_seed) cfg.ic.seed = opt.seed;
        if (opt.linearized) cfg.params.linearized = true;
        if (opt.paper_mode_set) cfg.params.paper_mode = opt.paper_mode;
        cfg.params.validate();
    } catch (const nsch::Error& e) {
        nlohmann::json err = {{"error", "ConfigError"}, {"detail", e.what()}};
        if (auto* c = dynamic_cast<const nsch::ConfigError*>(&e)) err["field"] = c->field;
        std::cout << err.dump(2) << "\n";
        return 2;
    }

    try {
        nsch::RunOutcome outcome = nsch::execute(cfg, opt.output_dir);
        if (outcome.exit_code != 0) std::cout << outcome.report.dump(2) << "\n";
        return outcome.exit_code;
    } catch (const nsch::ConfigError& e) {
        nlohmann::json err = {
            {"error", "ConfigError"}, {"field", e.field}, {"detail", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 2;
    } catch (const nsch::StepDiverged& e) {
        nlohmann::json err = {{"error", "StepDiverged"}, {"time", e.time}, {"step", e.step}};
        std::cout << err.dump(2) << "\n";
        return 3;
    } catch (const nsch::Error& e) {
        nlohmann::json err = {{"error", "RuntimeError"}, {"detail", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral two-phase (Navier-Stokes / Cahn-Hilliard) box solver"};
    app.require_subcommand(1);

    CliOptions opt;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* c = sub->add_option("--config", opt.config_path, "run configuration (JSON)");
        if (config_required) c->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", opt.seed, "override ic.seed")
            ->each([&](const std::string&) { opt.has_seed = true; });
        sub->add_option("--output", opt.output_dir,
                        "directory that relative output paths resolve against");
        sub->add_flag("--linearized", opt.linearized,
                      "drop all nonlinear terms (semigroup mode)");
        sub->add_flag("--paper-mode,!--no-paper-mode", opt.paper_mode,
                      "pin constants to the unit-reduced system (default on)")
            ->each([&](const std::string&) { opt.paper_mode_set = true; });
    };

    CLI::App* run = app.add_subcommand("run", "execute the experiment named in the config");
    CLI::App* energy =
        app.add_subcommand("energy-check", "dissipation-balance residual vs dt");
    CLI::App* small =
        app.add_subcommand("smallness", "critical-norm propagation amplitude sweep");
    CLI::App* decay = app.add_subcommand("decay-study", "algebraic decay-rate fits");
    CLI::App* ineq = app.add_subcommand("ineq-suite", "functional inequality checks");
    CLI::App* info = app.add_subcommand("info", "print build and configuration info");
    for (CLI::App* sub : {run, energy, small, decay, ineq}) add_common(sub, true);
    add_common(info, false);

    CLI11_PARSE(app, argc, argv);

    if (info->parsed()) {
        nlohmann::json j;
        j["name"] = "nsch-sim";
        j["version"] = "1.0.0";
        j["scalar"] = "float64";
        j["transforms"] = "fftw3 (estimate plans, deterministic)";
        j["dealiasing"] = "padding factor 2 (alias-free through cubic terms)";
        j["exit_codes"] = {{"ok", 0}, {"config", 2}, {"divergence", 3}, {"inequality", 4}};
        if (!opt.config_path.empty()) {
            try {
                nsch::RunConfig cfg = nsch::load_config_file(opt.config_path);
                j["config"] = nlohmann::json::parse(nsch::emit_config(cfg));
            } catch (const nsch::Error& e) {
                j["config_error"] = e.what();
            }
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::string experiment;
    if (energy->parsed()) experiment = "energy-check";
    if (small->parsed()) experiment = "smallness";
    if (decay->parsed()) experiment = "decay-study";
    if (ineq->parsed()) experiment = "ineq-suite";
    return run_experiment(opt, experiment);
}
