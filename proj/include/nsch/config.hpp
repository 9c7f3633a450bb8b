// config.hpp: run configuration, parsed from versioned JSON.  Unknown keys
// are rejected rather than ignored, so typos fail loudly.

#ifndef NSCH_CONFIG_HPP
#define NSCH_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nsch/integrator.hpp"
#include "nsch/model.hpp"

namespace nsch {

struct GridConfig {
    int dim = 3;
    int n = 32;
    double box_length = 2.0 * 3.141592653589793;

    Grid make() const { return Grid(dim, n, box_length); }
    bool operator==(const GridConfig&) const = default;
};

struct IcConfig {
    std::string kind = "random-divfree";
    double amplitude = 1e-2;
    std::uint64_t seed = 1;
    double width = 0.0;  // 0 = default L/16 for the Gaussian kinds
    int band = 0;        // random kinds: integer band limit, 0 = default n/4
    bool operator==(const IcConfig&) const = default;
};

struct OutputConfig {
    std::string csv_path;        // empty = no CSV
    std::string json_path;       // empty = no JSON
    int checkpoint_stride = 0;   // every k-th record; 0 = none
    int record_stride = 1;       // steps between diagnostics records
    bool operator==(const OutputConfig&) const = default;
};

// Per-preset knobs, all defaulted.
struct PresetConfig {
    int sweep_count = 5;          // smallness: number of amplitudes
    double sweep_factor = 0.5;    // smallness: geometric step
    int dt_levels = 3;            // energy check: dt, dt/2, ...
    double decay_p = 1.5;         // decay study: L^p data class
    int decay_max_k = 2;          // decay study: derivative orders 0..k
    double fit_t0 = -1.0;         // decay study: window start (-1 = auto)
    long trials = 10000;          // inequality suite: hard-constant trials
    long trials_soft = 200;       // inequality suite: reported-ratio trials
    int ineq_n = 16;              // inequality suite: grid points per axis
    bool operator==(const PresetConfig&) const = default;
};

struct RunConfig {
    int schema_version = 1;
    GridConfig grid;
    ModelParams params;
    StepControls controls;
    IcConfig ic;
    OutputConfig outputs;
    PresetConfig preset;
    std::string experiment = "run";

    bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError with the offending field path on any problem.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::filesystem::path& path);
std::string emit_config(const RunConfig& cfg);  // parse(emit(c)) == c

}  // namespace nsch

#endif
