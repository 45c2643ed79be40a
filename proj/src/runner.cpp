#include "semirel/runner.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>

#include <nlohmann/json.hpp>

#include "semirel/analytics.hpp"
#include "semirel/error.hpp"
#include "semirel/integrator.hpp"
#include "semirel/sampler.hpp"
#include "semirel/version.hpp"

namespace semirel {

namespace {

std::filesystem::path output_path(const RunConfig& c, std::string_view stem) {
    std::filesystem::create_directories(c.out_dir);
    const char* ext = c.format == OutputFormat::Csv ? ".csv" : ".ndjson";
    return c.out_dir / (std::string(stem) + ext);
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

nlohmann::json header_record(const RunConfig& config) {
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : config_entries(config, false)) cfg[k] = v;
    return {{"header", {{"program", kProgramName}, {"version", kVersion}, {"config", cfg}}}};
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<double> snapshot_times(double t_end, double every) {
    if (!(every > 0.0)) throw DomainError("snapshot interval must be positive");
    if (!(t_end >= 0.0)) throw DomainError("t_end must be >= 0");
    const auto k_max = static_cast<std::size_t>(std::floor(t_end / every + 1e-9));
    std::vector<double> times;
    times.reserve(k_max + 2);
    for (std::size_t k = 0; k <= k_max; ++k) times.push_back(static_cast<double>(k) * every);
    if (t_end - times.back() > 1e-9 * every) times.push_back(t_end);
    return times;
}

const std::vector<std::string>& timeseries_columns() {
    static const std::vector<std::string> cols{"t",     "mean_p", "mean_x",
                                               "mean_v", "mean_E", "var_p",
                                               "var_x",  "uncertainty_product", "mean_tprime"};
    return cols;
}

TableWriter::TableWriter(const std::filesystem::path& path, OutputFormat format,
                         const RunConfig& config, std::vector<std::string> columns)
    : out_(open_output(path)), format_(format), columns_(std::move(columns)) {
    if (format_ == OutputFormat::Csv) {
        out_ << "# " << kProgramName << ' ' << kVersion << '\n';
        for (const auto& [k, v] : config_entries(config, false)) {
            out_ << "# " << k << " = " << v << '\n';
        }
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            out_ << (i ? "," : "") << columns_[i];
        }
        out_ << '\n';
    } else {
        out_ << header_record(config).dump() << '\n';
    }
}

void TableWriter::row(std::span<const double> values) {
    if (values.size() != columns_.size()) {
        throw std::logic_error("TableWriter: row width does not match the header");
    }
    if (format_ == OutputFormat::Csv) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            out_ << (i ? "," : "") << csv_number(values[i]);
        }
        out_ << '\n';
    } else {
        nlohmann::ordered_json rec;
        for (std::size_t i = 0; i < values.size(); ++i) rec[columns_[i]] = values[i];
        out_ << rec.dump() << '\n';
    }
}

void TableWriter::fail(std::string_view message) {
    if (format_ == OutputFormat::Csv) {
        out_ << "# FAILED: " << message << '\n';
    } else {
        out_ << nlohmann::json{{"failure", std::string(message)}}.dump() << '\n';
    }
    out_.flush();
}

HistogramWriter::HistogramWriter(const std::filesystem::path& path, const RunConfig& config)
    : out_(open_output(path)) {
    out_ << header_record(config).dump() << '\n';
}

void HistogramWriter::write(const HistogramSnapshot& s, const UnitSystem& units) {
    std::vector<double> edges = s.edges;
    for (double& e : edges) {
        if (s.kind == HistogramKind::Momentum) e = units.p_to_physical(e);
        else if (s.kind == HistogramKind::Coordinate) e = units.x_to_physical(e);
    }
    nlohmann::ordered_json rec;
    rec["t"] = s.t;
    rec["kind"] = std::string(kind_code(s.kind));
    rec["edges"] = edges;
    rec["counts"] = s.counts;
    rec["underflow"] = s.underflow;
    rec["overflow"] = s.overflow;
    out_ << rec.dump() << '\n';
}

void HistogramWriter::fail(std::string_view message) {
    out_ << nlohmann::json{{"failure", std::string(message)}}.dump() << '\n';
    out_.flush();
}

RunSummary run_ensemble(const RunConfig& config) {
    config.validate();
    const ModelParams model = config.model();
    const InitialState init = config.initial_state();
    if (!check_purity(init)) {
        std::cerr << "warning: a delta initial state is not a physical Wigner function\n";
    }
    const UnitSystem units(model.z);
    const StepControls controls = config.controls();
    Executor exec(config.workers);

    Ensemble ensemble = sample(init, model.n_traj, model.seed);
    const HistogramGrid grid =
        default_grid(ensemble, model.z, config.bins, units.p_from_physical(config.p_range),
                     units.x_from_physical(config.x_range));

    RunSummary summary;
    const auto ts_path = output_path(config, "timeseries");
    const auto hist_path = config.out_dir / "histograms.ndjson";
    TableWriter table(ts_path, config.format, config, timeseries_columns());
    HistogramWriter hist(hist_path, config);
    summary.files = {ts_path, hist_path};

    try {
        for (double t : snapshot_times(model.t_end, config.snapshot_every)) {
            propagate_ensemble(ensemble, t, model.z, controls, exec);
            const ObservableRecord r = to_presentation(reduce(ensemble, model.z, &exec), units);
            const double row[] = {r.t,      r.mean_p, r.mean_x, r.mean_v,
                                  r.mean_E, r.var_p,  r.var_x,  r.uncertainty_product,
                                  r.mean_proper_time};
            table.row(row);
            for (auto kind :
                 {HistogramKind::Momentum, HistogramKind::Coordinate, HistogramKind::Velocity}) {
                hist.write(bin(ensemble, kind, grid[kind], model.z, &exec), units);
            }
            ++summary.snapshots;
        }
    } catch (const NumericalError& e) {
        table.fail(e.what());
        hist.fail(e.what());
        throw;
    }
    table.flush();
    hist.flush();
    return summary;
}

RunSummary run_single(const RunConfig& config) {
    config.validate();
    const ModelParams model = config.model();
    const UnitSystem units(model.z);
    const Stepper stepper(model.z, config.controls());
    const auto path = output_path(config, "trajectory");
    TableWriter table(path, config.format, config, {"t", "x", "p", "v", "E", "C1", "t_prime"});

    RunSummary summary;
    summary.files = {path};
    TrajectoryState state{{model.x_center, model.p_center}, 0.0, 0.0};
    const auto noop = [](const TrajectoryState&, const TrajectoryState&) {};
    try {
        for (double t : snapshot_times(model.t_end, config.snapshot_every)) {
            state = propagate(state, t, stepper, noop);
            const double row[] = {state.t,
                                  units.x_to_physical(state.point.x),
                                  units.p_to_physical(state.point.p),
                                  velocity(state.point.p, model.z),
                                  energy(state.point, model.z),
                                  first_integral(state, model.z),
                                  state.proper_time};
            table.row(row);
            ++summary.snapshots;
        }
    } catch (const NumericalError& e) {
        table.fail(e.what());
        throw;
    }
    table.flush();
    return summary;
}

RunSummary run_period_scan(const RunConfig& config) {
    config.validate();
    const StepControls controls = config.controls();
    const auto path = output_path(config, "period_scan");
    TableWriter table(path, config.format, config,
                      {"E", "T_analytic", "T_numeric", "rel_err", "T_nonrel"});
    RunSummary summary;
    summary.files = {path};
    try {
        for (double e : config.energy_list()) {
            const PeriodScanRow r = period_scan_point(e, config.z, controls);
            const double row[] = {r.energy, r.period_analytic, r.period_numeric, r.rel_err,
                                  2.0 * std::numbers::pi};
            table.row(row);
            ++summary.snapshots;
        }
    } catch (const NumericalError& e) {
        table.fail(e.what());
        throw;
    }
    table.flush();
    return summary;
}

RunSummary run_dilation(const RunConfig& config) {
    config.validate();
    const ModelParams model = config.model();
    const StepControls controls = config.controls();
    const Stepper stepper(model.z, controls);
    const std::vector<double> energies = config.energy_list();
    Executor exec(config.workers);

    std::vector<std::string> columns{"t"};
    std::vector<TrajectoryState> singles;
    for (double e : energies) {
        columns.push_back("tprime_E_" + format_number(e));
        singles.push_back({{amplitude_for_energy(e, model.z), 0.0}, 0.0, 0.0});
    }
    columns.push_back("tprime_ensemble");
    Ensemble ensemble = sample(config.initial_state(), model.n_traj, model.seed);

    const auto path = output_path(config, "dilation");
    TableWriter table(path, config.format, config, columns);
    RunSummary summary;
    summary.files = {path};
    const auto noop = [](const TrajectoryState&, const TrajectoryState&) {};
    std::vector<double> row(columns.size());
    try {
        for (double t : snapshot_times(model.t_end, config.snapshot_every)) {
            for (auto& s : singles) s = propagate(s, t, stepper, noop);
            propagate_ensemble(ensemble, t, model.z, controls, exec);
            const ObservableRecord r = reduce(ensemble, model.z, &exec);
            row.front() = r.t;
            for (std::size_t i = 0; i < singles.size(); ++i) row[i + 1] = singles[i].proper_time;
            row.back() = r.mean_proper_time;
            table.row(row);
            ++summary.snapshots;
        }
    } catch (const NumericalError& e) {
        table.fail(e.what());
        throw;
    }
    table.flush();
    return summary;
}

RunSummary run(const RunConfig& config) {
    switch (config.mode) {
        case RunMode::Ensemble: return run_ensemble(config);
        case RunMode::Single: return run_single(config);
        case RunMode::PeriodScan: return run_period_scan(config);
        case RunMode::Dilation: return run_dilation(config);
    }
    throw ConfigError("unknown mode");
}

}  // namespace semirel
