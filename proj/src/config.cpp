#include "nsch/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nsch/errors.hpp"

namespace nsch {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!ok.count(it.key()))
            throw ConfigError(ctx.empty() ? it.key() : ctx + "." + it.key(),
                              "unknown field");
    }
}

template <typename T>
void get_to(const json& j, const std::string& ctx, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        j.at(key).get_to(out);
    } catch (const json::exception& e) {
        throw ConfigError(ctx.empty() ? key : ctx + "." + std::string(key), e.what());
    }
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "imex1") return Scheme::imex1;
    if (s == "rk4") return Scheme::rk4;
    throw ConfigError("controls.scheme", "must be 'imex1' or 'rk4', got '" + s + "'");
}

std::string scheme_to_string(Scheme s) { return s == Scheme::imex1 ? "imex1" : "rk4"; }

const std::set<std::string> kExperiments{"run", "energy-check", "smallness", "decay-study",
                                         "ineq-suite"};

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("JSON parse failure: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");

    RunConfig cfg;
    check_keys(j, "", {"schema_version", "grid", "params", "controls", "ic", "outputs",
                       "preset", "experiment"});
    get_to(j, "", "schema_version", cfg.schema_version);
    if (cfg.schema_version != 1)
        throw ConfigError("schema_version", "unsupported schema version " +
                                                std::to_string(cfg.schema_version));

    if (j.contains("grid")) {
        const json& g = j["grid"];
        check_keys(g, "grid", {"dim", "n", "box_length"});
        get_to(g, "grid", "dim", cfg.grid.dim);
        get_to(g, "grid", "n", cfg.grid.n);
        get_to(g, "grid", "box_length", cfg.grid.box_length);
        try {
            (void)cfg.grid.make();
        } catch (const GridError& e) {
            throw ConfigError("grid", e.what());
        }
    }
    if (j.contains("params")) {
        const json& p = j["params"];
        check_keys(p, "params",
                   {"omega0", "kappa", "nu", "mobility", "capillarity", "eps", "zeta",
                    "paper_mode", "linearized"});
        get_to(p, "params", "omega0", cfg.params.omega0);
        get_to(p, "params", "kappa", cfg.params.kappa);
        get_to(p, "params", "nu", cfg.params.nu);
        get_to(p, "params", "mobility", cfg.params.mobility);
        get_to(p, "params", "capillarity", cfg.params.capillarity);
        get_to(p, "params", "eps", cfg.params.eps);
        get_to(p, "params", "zeta", cfg.params.zeta);
        get_to(p, "params", "paper_mode", cfg.params.paper_mode);
        get_to(p, "params", "linearized", cfg.params.linearized);
        try {
            cfg.params.validate();
        } catch (const Error& e) {
            throw ConfigError("params", e.what());
        }
    }
    if (j.contains("controls")) {
        const json& c = j["controls"];
        check_keys(c, "controls", {"dt", "t_end", "cfl_safety", "scheme", "adaptive"});
        get_to(c, "controls", "dt", cfg.controls.dt);
        get_to(c, "controls", "t_end", cfg.controls.t_end);
        get_to(c, "controls", "cfl_safety", cfg.controls.cfl_safety);
        std::string scheme = scheme_to_string(cfg.controls.scheme);
        get_to(c, "controls", "scheme", scheme);
        cfg.controls.scheme = scheme_from_string(scheme);
        get_to(c, "controls", "adaptive", cfg.controls.adaptive);
        try {
            cfg.controls.validate();
        } catch (const Error& e) {
            throw ConfigError("controls", e.what());
        }
    }
    if (j.contains("ic")) {
        const json& ic = j["ic"];
        check_keys(ic, "ic", {"kind", "amplitude", "seed", "width", "band"});
        get_to(ic, "ic", "kind", cfg.ic.kind);
        get_to(ic, "ic", "amplitude", cfg.ic.amplitude);
        get_to(ic, "ic", "seed", cfg.ic.seed);
        get_to(ic, "ic", "width", cfg.ic.width);
        get_to(ic, "ic", "band", cfg.ic.band);
        if (cfg.ic.band < 0) throw ConfigError("ic.band", "must be >= 0");
        if (!(cfg.ic.amplitude > 0.0))
            throw ConfigError("ic.amplitude", "must be positive");
        static const std::set<std::string> kinds{"taylor-green-like", "random-divfree",
                                                 "single-mode", "gaussian-blob",
                                                 "gaussian-vortex"};
        if (!kinds.count(cfg.ic.kind))
            throw ConfigError("ic.kind", "unknown generator '" + cfg.ic.kind + "'");
    }
    if (j.contains("outputs")) {
        const json& o = j["outputs"];
        check_keys(o, "outputs",
                   {"csv_path", "json_path", "checkpoint_stride", "record_stride"});
        get_to(o, "outputs", "csv_path", cfg.outputs.csv_path);
        get_to(o, "outputs", "json_path", cfg.outputs.json_path);
        get_to(o, "outputs", "checkpoint_stride", cfg.outputs.checkpoint_stride);
        get_to(o, "outputs", "record_stride", cfg.outputs.record_stride);
        if (cfg.outputs.record_stride < 1)
            throw ConfigError("outputs.record_stride", "must be >= 1");
        if (cfg.outputs.checkpoint_stride < 0)
            throw ConfigError("outputs.checkpoint_stride", "must be >= 0");
    }
    if (j.contains("preset")) {
        const json& p = j["preset"];
        check_keys(p, "preset",
                   {"sweep_count", "sweep_factor", "dt_levels", "decay_p", "decay_max_k",
                    "fit_t0", "trials", "trials_soft", "ineq_n"});
        get_to(p, "preset", "sweep_count", cfg.preset.sweep_count);
        get_to(p, "preset", "sweep_factor", cfg.preset.sweep_factor);
        get_to(p, "preset", "dt_levels", cfg.preset.dt_levels);
        get_to(p, "preset", "decay_p", cfg.preset.decay_p);
        get_to(p, "preset", "decay_max_k", cfg.preset.decay_max_k);
        get_to(p, "preset", "fit_t0", cfg.preset.fit_t0);
        get_to(p, "preset", "trials", cfg.preset.trials);
        get_to(p, "preset", "trials_soft", cfg.preset.trials_soft);
        get_to(p, "preset", "ineq_n", cfg.preset.ineq_n);
        if (cfg.preset.trials < 0 || cfg.preset.trials_soft < 0)
            throw ConfigError("preset.trials", "must be >= 0");
    }
    get_to(j, "", "experiment", cfg.experiment);
    if (!kExperiments.count(cfg.experiment))
        throw ConfigError("experiment", "unknown preset '" + cfg.experiment + "'");
    return cfg;
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string emit_config(const RunConfig& cfg) {
    json j;
    j["schema_version"] = cfg.schema_version;
    j["grid"] = {{"dim", cfg.grid.dim}, {"n", cfg.grid.n}, {"box_length", cfg.grid.box_length}};
    j["params"] = {{"omega0", cfg.params.omega0},
                   {"kappa", cfg.params.kappa},
                   {"nu", cfg.params.nu},
                   {"mobility", cfg.params.mobility},
                   {"capillarity", cfg.params.capillarity},
                   {"eps", cfg.params.eps},
                   {"zeta", cfg.params.zeta},
                   {"paper_mode", cfg.params.paper_mode},
                   {"linearized", cfg.params.linearized}};
    j["controls"] = {{"dt", cfg.controls.dt},
                     {"t_end", cfg.controls.t_end},
                     {"cfl_safety", cfg.controls.cfl_safety},
                     {"scheme", scheme_to_string(cfg.controls.scheme)},
                     {"adaptive", cfg.controls.adaptive}};
    j["ic"] = {{"kind", cfg.ic.kind},
               {"amplitude", cfg.ic.amplitude},
               {"seed", cfg.ic.seed},
               {"width", cfg.ic.width},
               {"band", cfg.ic.band}};
    j["outputs"] = {{"csv_path", cfg.outputs.csv_path},
                    {"json_path", cfg.outputs.json_path},
                    {"checkpoint_stride", cfg.outputs.checkpoint_stride},
                    {"record_stride", cfg.outputs.record_stride}};
    j["preset"] = {{"sweep_count", cfg.preset.sweep_count},
                   {"sweep_factor", cfg.preset.sweep_factor},
                   {"dt_levels", cfg.preset.dt_levels},
                   {"decay_p", cfg.preset.decay_p},
                   {"decay_max_k", cfg.preset.decay_max_k},
                   {"fit_t0", cfg.preset.fit_t0},
                   {"trials", cfg.preset.trials},
                   {"trials_soft", cfg.preset.trials_soft},
                   {"ineq_n", cfg.preset.ineq_n}};
    j["experiment"] = cfg.experiment;
    return j.dump(2) + "\n";
}

}  // namespace nsch
