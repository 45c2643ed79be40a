#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semirel/config.hpp"
#include "semirel/histograms.hpp"
#include "semirel/observables.hpp"

namespace semirel {

/// Lab times at which a run reports: 0, every, 2 every, ... up to t_end, plus
/// t_end itself when it is not on that grid.
std::vector<double> snapshot_times(double t_end, double every);

/// Writes a table as CSV (17 significant digits) or NDJSON. The file starts
/// with a header embedding the program version and the canonical config
/// (`# ...` comment lines for CSV, a {"header": ...} record for NDJSON).
class TableWriter {
public:
    TableWriter(const std::filesystem::path& path, OutputFormat format, const RunConfig& config,
                std::vector<std::string> columns);

    void row(std::span<const double> values);
    /// Appends a failure marker and flushes.
    void fail(std::string_view message);
    void flush() { out_.flush(); }

private:
    std::ofstream out_;
    OutputFormat format_;
    std::vector<std::string> columns_;
};

/// One histogram per line: {"t","kind","edges","counts","underflow","overflow"}
/// after a header record. Edges are written in presentation units.
class HistogramWriter {
public:
    HistogramWriter(const std::filesystem::path& path, const RunConfig& config);

    void write(const HistogramSnapshot& snapshot, const UnitSystem& units);
    void fail(std::string_view message);
    void flush() { out_.flush(); }

private:
    std::ofstream out_;
};

struct RunSummary {
    std::vector<std::filesystem::path> files;
    std::size_t snapshots = 0;
};

/// timeseries.{csv,ndjson} + histograms.ndjson.
RunSummary run_ensemble(const RunConfig& config);
/// trajectory.{csv,ndjson}: t, x, p, v, E, C1, t_prime.
RunSummary run_single(const RunConfig& config);
/// period_scan.{csv,ndjson}: E, T_analytic, T_numeric, rel_err, T_nonrel.
RunSummary run_period_scan(const RunConfig& config);
/// dilation.{csv,ndjson}: t, one t' column per energy, ensemble-averaged t'.
RunSummary run_dilation(const RunConfig& config);

/// Validates and dispatches on config.mode.
RunSummary run(const RunConfig& config);

/// Column names of timeseries output.
const std::vector<std::string>& timeseries_columns();

}  // namespace semirel
