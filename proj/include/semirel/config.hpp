#pragma once

// Run configuration. File format: UTF-8 lines of `key = value`; `#` starts a
// comment; blank lines are ignored. Unknown or repeated keys are errors.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "semirel/integrator.hpp"
#include "semirel/model.hpp"
#include "semirel/sampler.hpp"

namespace semirel {

enum class RunMode { Ensemble, Single, PeriodScan, Dilation };
enum class OutputFormat { Csv, Ndjson };
/// Units of the x0/p0 keys: scheme (x_m, p_m) or presentation (c/omega, hbar omega/c).
enum class CenterUnits { Scheme, Physical };

struct RunConfig {
    RunMode mode = RunMode::Ensemble;
    double z = 1.0;
    InitialKind initial = InitialKind::Coherent;
    double x0 = 0.0;
    double p0 = 0.0;
    CenterUnits center_units = CenterUnits::Scheme;
    std::size_t n_traj = 100000;
    std::uint64_t seed = 1;
    double dt = 0.01;
    double t_end = 87.0;
    double fp_tol = 1e-13;
    int fp_max_iter = 50;
    double snapshot_every = 0.1;
    std::size_t bins = 128;
    /// Histogram half-widths in presentation units; 0 selects the energy bound.
    double p_range = 0.0;
    double x_range = 0.0;
    /// Trajectory energies (hbar omega) for period_scan and dilation; empty
    /// selects the mode's default list scaled by z.
    std::vector<double> energies;
    std::size_t workers = 1;
    std::filesystem::path out_dir = "out";
    OutputFormat format = OutputFormat::Csv;

    /// Model in scheme units (centers converted if given in physical units).
    ModelParams model() const;
    InitialState initial_state() const;
    StepControls controls() const;
    /// `energies`, or the mode default.
    std::vector<double> energy_list() const;

    /// Throws ConfigError naming the violated constraint.
    void validate() const;
};

/// Sets one key from its textual value. Throws ConfigError for unknown keys
/// or unparsable values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Parses file text on top of `base`.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Canonical form: every key, fixed order, one `key = value` per line,
/// shortest round-trip numbers.
std::string serialize_config(const RunConfig& config);

/// Canonical (key, value) pairs in serialization order. Without
/// `include_execution` the keys that cannot change results (workers, out_dir)
/// are left out; output headers use that form.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config,
                                                                bool include_execution = true);

std::string format_number(double value);

std::string_view to_string(RunMode mode);
std::string_view to_string(OutputFormat format);

}  // namespace semirel
