#include "nsch/presets.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "nsch/checkpoint.hpp"
#include "nsch/diagnostics.hpp"
#include "nsch/errors.hpp"
#include "nsch/inequality.hpp"
#include "nsch/initial_conditions.hpp"
#include "nsch/integrator.hpp"
#include "nsch/random_fields.hpp"

namespace nsch {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path resolve(const std::string& p, const fs::path& dir) {
    if (p.empty()) return {};
    fs::path path(p);
    if (dir.empty() || path.is_absolute()) return path;
    return dir / path;
}

void ensure_parent(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

json metadata_block(const RunConfig& cfg) {
    const Grid g = cfg.grid.make();
    json m;
    m["schema_version"] = cfg.schema_version;
    m["experiment"] = cfg.experiment;
    m["grid"] = {{"dim", cfg.grid.dim}, {"n", cfg.grid.n}, {"box_length", cfg.grid.box_length}};
    m["paper_mode"] = cfg.params.paper_mode;
    m["kappa"] = cfg.params.kappa;
    m["omega0"] = cfg.params.omega0;
    m["linearized"] = cfg.params.linearized;
    m["scheme"] = cfg.controls.scheme == Scheme::imex1 ? "imex1" : "rk4";
    m["dt"] = cfg.controls.dt;
    m["t_end"] = cfg.controls.t_end;
    m["seed"] = cfg.ic.seed;
    m["ic_kind"] = cfg.ic.kind;
    m["ic_amplitude"] = cfg.ic.amplitude;
    // conventions the numbers depend on
    m["validity_horizon"] = validity_horizon(g);
    m["decay_index_convention"] = "l=k";  // target sigma_k uses l = k
    m["negative_norms_mean_removed"] = true;
    m["phi_norm_series_mean_removed"] = true;
    return m;
}

json record_to_json(const DiagnosticsRecord& r) {
    json j;
    j["time"] = r.time;
    j["kinetic"] = r.kinetic;
    j["free_energy"] = r.free_energy;
    j["dissipation"] = r.dissipation;
    j["X"] = r.X;
    j["Y"] = r.Y;
    json neg = json::object();
    for (const auto& [s, v] : r.neg_norms) neg[format_double(s)] = v;
    j["neg_norms"] = neg;
    j["u_norms"] = r.u_norms;
    j["phi_norms"] = r.phi_norms;
    return j;
}

void write_csv(const fs::path& path, std::span<const DiagnosticsRecord> records,
               const RecordOptions& opts) {
    if (path.empty()) return;
    ensure_parent(path);
    std::ofstream out(path, std::ios::binary);  // binary: no newline translation
    if (!out) throw IoError("cannot open CSV output " + path.string());
    out << csv_header(opts) << "\n";
    for (const auto& r : records) out << csv_row(r, opts) << "\n";
    if (!out) throw IoError("CSV write failed for " + path.string());
}

void write_json(const fs::path& path, const json& report) {
    if (path.empty()) return;
    ensure_parent(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open JSON output " + path.string());
    out << report.dump(2) << "\n";
    if (!out) throw IoError("JSON write failed for " + path.string());
}

State make_initial_state(const RunConfig& cfg) {
    return generate_ic(cfg.ic.kind, cfg.grid.make(), cfg.ic.amplitude, cfg.ic.seed, cfg.params,
                       cfg.ic.width, cfg.ic.band);
}

struct Trajectory {
    std::vector<DiagnosticsRecord> records;  // includes the t = 0 record
    bool diverged = false;
    double diverged_time = 0.0;
    long diverged_step = -1;
    State final_state;
};

Trajectory run_trajectory(const RunConfig& cfg, const State& initial,
                          const RecordOptions& ropts, int record_stride,
                          const StepControls& controls, const fs::path& checkpoint_dir = {}) {
    Trajectory traj;
    traj.records.push_back(compute_record(initial, ropts));
    traj.final_state = initial;

    int checkpoint_counter = 0;
    std::vector<Observer> observers;
    observers.push_back([&](const State& s, const DiagnosticsRecord& rec) {
        traj.records.push_back(rec);
        if (cfg.outputs.checkpoint_stride > 0 && !checkpoint_dir.empty()) {
            const int idx = static_cast<int>(traj.records.size()) - 1;
            if (idx % cfg.outputs.checkpoint_stride == 0) {
                const std::string tag = "checkpoint_" + std::to_string(checkpoint_counter++);
                write_field(checkpoint_dir / (tag + "_u.field"), s.u);
                write_field(checkpoint_dir / (tag + "_phi.field"), s.phi);
            }
        }
    });

    IntegrateOptions opts;
    opts.record_stride = record_stride;
    opts.record_options = ropts;
    try {
        traj.final_state = integrate(initial, controls, observers, opts);
    } catch (const StepDiverged& e) {
        traj.diverged = true;
        traj.diverged_time = e.time;
        traj.diverged_step = e.step;
    }
    return traj;
}

// Drops a trailing record that is off the uniform spacing (the integrator
// also fires at t_end when it is not a stride multiple).
std::span<const DiagnosticsRecord> equispaced_prefix(std::span<const DiagnosticsRecord> recs) {
    if (recs.size() < 3) return recs;
    const double dt0 = recs[1].time - recs[0].time;
    const double last = recs[recs.size() - 1].time - recs[recs.size() - 2].time;
    if (std::abs(last - dt0) > 1e-9 * std::max(1.0, std::abs(dt0)))
        return recs.subspan(0, recs.size() - 1);
    return recs;
}

// ---------------------------------------------------------------------- run

RunOutcome preset_run(const RunConfig& cfg, const fs::path& out_dir) {
    RecordOptions ropts;
    const fs::path csv = resolve(cfg.outputs.csv_path, out_dir);
    const fs::path jsn = resolve(cfg.outputs.json_path, out_dir);
    fs::path ckpt_dir = out_dir;
    if (ckpt_dir.empty() && !csv.empty() && csv.has_parent_path()) ckpt_dir = csv.parent_path();
    if (ckpt_dir.empty()) ckpt_dir = ".";

    State initial = make_initial_state(cfg);
    Trajectory traj =
        run_trajectory(cfg, initial, ropts, cfg.outputs.record_stride, cfg.controls, ckpt_dir);

    write_csv(csv, traj.records, ropts);

    RunOutcome outcome;
    outcome.report["metadata"] = metadata_block(cfg);
    json recs = json::array();
    for (const auto& r : traj.records) recs.push_back(record_to_json(r));
    outcome.report["records"] = recs;
    if (traj.diverged) {
        outcome.exit_code = 3;
        outcome.report["error"] = {{"type", "StepDiverged"},
                                   {"time", traj.diverged_time},
                                   {"step", traj.diverged_step}};
    }
    write_json(jsn, outcome.report);
    return outcome;
}

// ------------------------------------------------------------- energy-check

RunOutcome preset_energy_check(const RunConfig& cfg, const fs::path& out_dir) {
    RecordOptions ropts;
    State initial = make_initial_state(cfg);

    json levels = json::array();
    std::vector<double> residuals;
    RunOutcome outcome;
    for (int level = 0; level < cfg.preset.dt_levels; ++level) {
        StepControls controls = cfg.controls;
        controls.dt = cfg.controls.dt / std::pow(2.0, level);
        const int stride = cfg.outputs.record_stride << level;
        Trajectory traj = run_trajectory(cfg, initial, ropts, stride, controls);
        if (traj.diverged) {
            outcome.exit_code = 3;
            outcome.report["error"] = {{"type", "StepDiverged"},
                                       {"time", traj.diverged_time},
                                       {"step", traj.diverged_step}};
            break;
        }
        const double res = dissipation_residual(equispaced_prefix(traj.records));
        residuals.push_back(res);
        levels.push_back({{"dt", controls.dt}, {"residual", res}});
    }
    json orders = json::array();
    for (std::size_t i = 0; i + 1 < residuals.size(); ++i) {
        const double denom = residuals[i + 1];
        orders.push_back(denom > 0.0 ? std::log2(residuals[i] / denom)
                                     : std::numeric_limits<double>::infinity());
    }
    outcome.report["metadata"] = metadata_block(cfg);
    outcome.report["levels"] = levels;
    outcome.report["observed_orders"] = orders;
    write_json(resolve(cfg.outputs.json_path, out_dir), outcome.report);
    return outcome;
}

// ---------------------------------------------------------------- smallness

RunOutcome preset_smallness(const RunConfig& cfg, const fs::path& out_dir) {
    RecordOptions ropts;
    json table = json::array();
    RunOutcome outcome;
    double threshold = std::numeric_limits<double>::infinity();
    bool any_failed = false;

    for (int j = 0; j < cfg.preset.sweep_count; ++j) {
        RunConfig sub = cfg;
        sub.ic.amplitude = cfg.ic.amplitude * std::pow(cfg.preset.sweep_factor, j);
        State initial = make_initial_state(sub);
        Trajectory traj =
            run_trajectory(sub, initial, ropts, sub.outputs.record_stride, sub.controls);

        const double x0 = traj.records.front().X;
        double max_ratio = 1.0;  // 0/0 convention: a zero start counts as 1
        bool monotone = true;
        double prev = x0;
        for (std::size_t i = 1; i < traj.records.size(); ++i) {
            const double x = traj.records[i].X;
            if (x0 > 0.0) max_ratio = std::max(max_ratio, x / x0);
            if (x > prev * (1.0 + 1e-10)) monotone = false;
            prev = x;
        }
        if (!monotone) {
            any_failed = true;
            threshold = std::min(threshold, sub.ic.amplitude);
        }
        table.push_back({{"amplitude", sub.ic.amplitude},
                         {"X0", x0},
                         {"max_ratio", max_ratio},
                         {"monotone_decay", monotone},
                         {"diverged", traj.diverged}});
        if (traj.diverged) outcome.exit_code = 3;
    }
    outcome.report["metadata"] = metadata_block(cfg);
    outcome.report["sweep"] = table;
    // smallest amplitude at which monotone decay of X was lost, if any
    if (any_failed)
        outcome.report["smallest_nonmonotone_amplitude"] = threshold;
    else
        outcome.report["smallest_nonmonotone_amplitude"] = nullptr;
    write_json(resolve(cfg.outputs.json_path, out_dir), outcome.report);
    return outcome;
}

// -------------------------------------------------------------- decay-study

RunOutcome preset_decay_study(const RunConfig& cfg, const fs::path& out_dir) {
    RecordOptions ropts;
    ropts.max_order_u = std::max(3, cfg.preset.decay_max_k);
    ropts.max_order_phi = std::max(4, cfg.preset.decay_max_k + 1);

    State initial = make_initial_state(cfg);
    Trajectory traj =
        run_trajectory(cfg, initial, ropts, cfg.outputs.record_stride, cfg.controls);
    write_csv(resolve(cfg.outputs.csv_path, out_dir), traj.records, ropts);

    RunOutcome outcome;
    outcome.report["metadata"] = metadata_block(cfg);
    if (traj.diverged) {
        outcome.exit_code = 3;
        outcome.report["error"] = {{"type", "StepDiverged"},
                                   {"time", traj.diverged_time},
                                   {"step", traj.diverged_step}};
        write_json(resolve(cfg.outputs.json_path, out_dir), outcome.report);
        return outcome;
    }

    const Grid g = cfg.grid.make();
    const double horizon = validity_horizon(g);
    const double t1 = std::min(cfg.controls.t_end, horizon);
    const double t0 = cfg.preset.fit_t0 > 0.0 ? cfg.preset.fit_t0
                                              : std::max(1.0, 0.15 * t1);

    std::vector<double> times;
    times.reserve(traj.records.size());
    for (const auto& r : traj.records) times.push_back(r.time);

    auto fit_series = [&](const std::string& field, int k,
                          auto&& getter) -> json {
        std::vector<double> vals;
        vals.reserve(traj.records.size());
        for (const auto& r : traj.records) vals.push_back(getter(r));
        json out;
        out["field"] = field;
        out["k"] = k;
        const double sigma_paper =
            sigma_target(k, cfg.preset.decay_p, cfg.params.paper_mode);
        try {
            DecayFit fit = fit_decay(times, vals, t0, t1, sigma_paper);
            out["sigma_hat"] = fit.sigma_hat;
            out["sigma_paper"] = fit.sigma_paper;
            out["window"] = {fit.t0, fit.t1};
            out["residual"] = fit.residual;
            out["points"] = fit.points;
        } catch (const DomainError& e) {
            out["error"] = e.what();
            out["sigma_paper"] = sigma_paper;
        }
        return out;
    };

    json fits = json::array();
    for (int k = 0; k <= cfg.preset.decay_max_k; ++k) {
        fits.push_back(fit_series("u", k, [k](const DiagnosticsRecord& r) {
            return r.u_norms[static_cast<std::size_t>(k)];
        }));
        fits.push_back(fit_series("phi", k, [k](const DiagnosticsRecord& r) {
            return r.phi_norms[static_cast<std::size_t>(k)];
        }));
        fits.push_back(fit_series("grad_phi", k, [k](const DiagnosticsRecord& r) {
            return r.phi_norms[static_cast<std::size_t>(k + 1)];
        }));
    }
    outcome.report["fits"] = fits;
    outcome.report["fit_window"] = {t0, t1};
    outcome.report["validity_horizon"] = horizon;
    outcome.report["phi_mean"] = initial.phi.mean();
    write_json(resolve(cfg.outputs.json_path, out_dir), outcome.report);
    return outcome;
}

// --------------------------------------------------------------- ineq-suite

std::uint64_t trial_seed(std::uint64_t base, long trial) {
    return base * 0x100000001b3ULL + static_cast<std::uint64_t>(trial) + 1;
}

json report_to_json(const IneqReport& r) {
    json j;
    j["id"] = r.id;
    j["trials"] = r.trials;
    j["worst_ratio"] = r.worst_ratio;
    j["violations"] = r.violations;
    j["seed"] = r.seed;
    j["params"] = r.params;
    return j;
}

template <typename Fn>
IneqReport run_trials(const std::string& id, const Grid& g, long trials, std::uint64_t seed,
                      std::map<std::string, double> params, bool hard_constant, Fn&& fn) {
    IneqReport rep;
    rep.id = id;
    rep.trials = trials;
    rep.seed = seed;
    rep.params = std::move(params);
    const int band = std::max(1, g.n() / 4);
    for (long t = 0; t < trials; ++t) {
        Field f = random_mean_zero_field(g, trial_seed(seed, t), band);
        const double ratio = fn(f, t);
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
        if (hard_constant && ratio > 1.0 + 1e-10) ++rep.violations;
    }
    return rep;
}

RunOutcome preset_inequalities(const RunConfig& cfg, const fs::path& out_dir) {
    const Grid g(3, cfg.preset.ineq_n, 2.0 * std::numbers::pi);
    const std::uint64_t seed = cfg.ic.seed;
    const long soft = cfg.preset.trials_soft;
    const long hard = cfg.preset.trials;
    const int band = std::max(1, g.n() / 4);

    std::vector<IneqReport> reports;

    reports.push_back(run_trials(
        "embedding_s1", g, soft, seed, {{"s", 1.0}}, false,
        [](const Field& f, long) { return check_embedding(f, 1.0); }));

    reports.push_back(run_trials(
        "gn_holder_a1_m0_l2", g, soft, seed + 1,
        {{"alpha", 1.0}, {"m", 0.0}, {"l", 2.0}, {"p", 2.0}, {"q", 2.0}, {"r", 2.0}}, true,
        [](const Field& f, long) { return check_gn(f, 1.0, 0.0, 2.0, 2.0, 2.0, 2.0); }));

    {
        IneqReport kp_prod, kp_comm;
        kp_prod.id = "kato_ponce_product_s1";
        kp_comm.id = "kato_ponce_commutator_s1";
        kp_prod.trials = kp_comm.trials = soft;
        kp_prod.seed = kp_comm.seed = seed + 2;
        kp_prod.params = kp_comm.params = {
            {"s", 1.0}, {"p", 2.0}, {"p1", 4.0}, {"p2", 4.0}, {"q1", 4.0}, {"q2", 4.0}};
        KatoPonceExponents exps;
        for (long t = 0; t < soft; ++t) {
            Field f = random_mean_zero_field(g, trial_seed(seed + 2, 2 * t), band);
            Field gg = random_mean_zero_field(g, trial_seed(seed + 2, 2 * t + 1), band);
            auto ratios = check_kato_ponce(f, gg, 1.0, exps);
            kp_prod.worst_ratio = std::max(kp_prod.worst_ratio, ratios.product_rule);
            kp_comm.worst_ratio = std::max(kp_comm.worst_ratio, ratios.commutator);
        }
        reports.push_back(kp_prod);
        reports.push_back(kp_comm);
    }

    reports.push_back(run_trials(
        "hls_s05_p15", g, soft, seed + 3, {{"s", 0.5}, {"p", 1.5}}, false,
        [](const Field& f, long) { return check_hls(f, 0.5, 1.5); }));

    const std::vector<std::pair<double, double>> interp_cases{
        {0.0, 0.5}, {1.0, 0.5}, {0.0, 1.0}, {2.0, 0.25}};
    for (std::size_t c = 0; c < interp_cases.size(); ++c) {
        const auto [l, s] = interp_cases[c];
        reports.push_back(run_trials(
            "interpolation_l" + format_double(l) + "_s" + format_double(s), g, hard,
            seed + 10 + c, {{"l", l}, {"s", s}}, true,
            [l = l, s = s](const Field& f, long) { return check_interpolation(f, l, s); }));
    }

    RunOutcome outcome;
    long violations = 0;
    json arr = json::array();
    for (const auto& r : reports) {
        violations += r.violations;
        arr.push_back(report_to_json(r));
    }
    outcome.report["metadata"] = metadata_block(cfg);
    outcome.report["inequalities"] = arr;
    outcome.report["total_violations"] = violations;
    if (violations > 0) outcome.exit_code = 4;
    write_json(resolve(cfg.outputs.json_path, out_dir), outcome.report);
    return outcome;
}

}  // namespace

RunOutcome execute(const RunConfig& cfg, const fs::path& output_dir) {
    if (cfg.experiment == "run") return preset_run(cfg, output_dir);
    if (cfg.experiment == "energy-check") return preset_energy_check(cfg, output_dir);
    if (cfg.experiment == "smallness") return preset_smallness(cfg, output_dir);
    if (cfg.experiment == "decay-study") return preset_decay_study(cfg, output_dir);
    if (cfg.experiment == "ineq-suite") return preset_inequalities(cfg, output_dir);
    throw ConfigError("experiment", "unknown preset '" + cfg.experiment + "'");
}

}  // namespace nsch
