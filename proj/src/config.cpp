#include "semirel/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "semirel/error.hpp"

namespace semirel {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
    throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) +
                      "': expected " + expected);
}

double parse_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out)) {
        bad_value(key, value, "a finite number");
    }
    return out;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view value) {
    Int out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        bad_value(key, value, "a non-negative integer");
    }
    return out;
}

std::vector<double> parse_list(std::string_view key, std::string_view value) {
    std::vector<double> out;
    if (trim(value).empty()) return out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const auto item = trim(value.substr(start, comma == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : comma - start));
        out.push_back(parse_double(key, item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string_view to_string(RunMode mode) {
    switch (mode) {
        case RunMode::Ensemble: return "ensemble";
        case RunMode::Single: return "single";
        case RunMode::PeriodScan: return "period_scan";
        case RunMode::Dilation: return "dilation";
    }
    return "?";
}

std::string_view to_string(OutputFormat format) {
    return format == OutputFormat::Csv ? "csv" : "ndjson";
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view raw) {
    const std::string_view value = trim(raw);
    if (key == "mode") {
        if (value == "ensemble") c.mode = RunMode::Ensemble;
        else if (value == "single") c.mode = RunMode::Single;
        else if (value == "period_scan") c.mode = RunMode::PeriodScan;
        else if (value == "dilation") c.mode = RunMode::Dilation;
        else bad_value(key, value, "ensemble|single|period_scan|dilation");
    } else if (key == "z") {
        c.z = parse_double(key, value);
    } else if (key == "initial") {
        if (value == "coherent") c.initial = InitialKind::Coherent;
        else if (value == "delta") c.initial = InitialKind::Delta;
        else bad_value(key, value, "coherent|delta");
    } else if (key == "x0") {
        c.x0 = parse_double(key, value);
    } else if (key == "p0") {
        c.p0 = parse_double(key, value);
    } else if (key == "center_units") {
        if (value == "scheme") c.center_units = CenterUnits::Scheme;
        else if (value == "physical") c.center_units = CenterUnits::Physical;
        else bad_value(key, value, "scheme|physical");
    } else if (key == "n_traj") {
        c.n_traj = parse_int<std::size_t>(key, value);
    } else if (key == "seed") {
        c.seed = parse_int<std::uint64_t>(key, value);
    } else if (key == "dt") {
        c.dt = parse_double(key, value);
    } else if (key == "t_end") {
        c.t_end = parse_double(key, value);
    } else if (key == "fp_tol") {
        c.fp_tol = parse_double(key, value);
    } else if (key == "fp_max_iter") {
        c.fp_max_iter = parse_int<int>(key, value);
    } else if (key == "snapshot_every") {
        c.snapshot_every = parse_double(key, value);
    } else if (key == "bins") {
        c.bins = parse_int<std::size_t>(key, value);
    } else if (key == "p_range") {
        c.p_range = parse_double(key, value);
    } else if (key == "x_range") {
        c.x_range = parse_double(key, value);
    } else if (key == "energies") {
        c.energies = parse_list(key, value);
    } else if (key == "workers") {
        c.workers = parse_int<std::size_t>(key, value);
    } else if (key == "out_dir") {
        if (value.empty()) bad_value(key, value, "a path");
        c.out_dir = std::filesystem::path(std::string(value));
    } else if (key == "format") {
        if (value == "csv") c.format = OutputFormat::Csv;
        else if (value == "ndjson") c.format = OutputFormat::Ndjson;
        else bad_value(key, value, "csv|ndjson");
    } else {
        throw ConfigError("unknown configuration key '" + std::string(key) + "'");
    }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        if (!seen.insert(std::string(key)).second) {
            throw ConfigError("line " + std::to_string(line_no) + ": repeated key '" +
                              std::string(key) + "'");
        }
        apply_setting(base, key, line.substr(eq + 1));
    }
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c,
                                                                bool include_execution) {
    std::string energies;
    for (std::size_t i = 0; i < c.energies.size(); ++i) {
        if (i > 0) energies += ",";
        energies += format_number(c.energies[i]);
    }
    std::vector<std::pair<std::string, std::string>> entries{
        {"mode", std::string(to_string(c.mode))},
        {"z", format_number(c.z)},
        {"initial", c.initial == InitialKind::Coherent ? "coherent" : "delta"},
        {"x0", format_number(c.x0)},
        {"p0", format_number(c.p0)},
        {"center_units", c.center_units == CenterUnits::Scheme ? "scheme" : "physical"},
        {"n_traj", std::to_string(c.n_traj)},
        {"seed", std::to_string(c.seed)},
        {"dt", format_number(c.dt)},
        {"t_end", format_number(c.t_end)},
        {"fp_tol", format_number(c.fp_tol)},
        {"fp_max_iter", std::to_string(c.fp_max_iter)},
        {"snapshot_every", format_number(c.snapshot_every)},
        {"bins", std::to_string(c.bins)},
        {"p_range", format_number(c.p_range)},
        {"x_range", format_number(c.x_range)},
        {"energies", energies},
        {"workers", std::to_string(c.workers)},
        {"out_dir", c.out_dir.generic_string()},
        {"format", std::string(to_string(c.format))},
    };
    if (!include_execution) {
        std::erase_if(entries, [](const auto& kv) {
            return kv.first == "workers" || kv.first == "out_dir";
        });
    }
    return entries;
}

std::string serialize_config(const RunConfig& c) {
    std::string out;
    for (const auto& [k, v] : config_entries(c)) out += k + " = " + v + "\n";
    return out;
}

ModelParams RunConfig::model() const {
    ModelParams m;
    m.z = z;
    m.x_center = x0;
    m.p_center = p0;
    if (center_units == CenterUnits::Physical && z > 0.0) {
        const UnitSystem units(z);
        m.x_center = units.x_from_physical(x0);
        m.p_center = units.p_from_physical(p0);
    }
    m.dt = dt;
    m.t_end = t_end;
    m.n_traj = n_traj;
    m.seed = seed;
    return m;
}

InitialState RunConfig::initial_state() const {
    const ModelParams m = model();
    return {initial, m.x_center, m.p_center};
}

StepControls RunConfig::controls() const { return {dt, fp_tol, fp_max_iter}; }

std::vector<double> RunConfig::energy_list() const {
    if (!energies.empty()) return energies;
    std::vector<double> out;
    if (mode == RunMode::PeriodScan) {
        // 10 points over [1.3 z, 21 z].
        for (int i = 0; i < 10; ++i) out.push_back(z * (1.3 + (21.0 - 1.3) * i / 9.0));
    } else {
        for (double f : {1.0, 1.3125, 2.25, 6.0, 21.0}) out.push_back(z * f);
    }
    return out;
}

void RunConfig::validate() const {
    try {
        model().validate();
        controls().validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (!(snapshot_every >= dt)) throw ConfigError("snapshot_every must be >= dt");
    if (bins < 1) throw ConfigError("bins must be >= 1");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (p_range < 0.0 || x_range < 0.0) throw ConfigError("histogram ranges must be >= 0");
    if (mode == RunMode::Single && initial != InitialKind::Delta) {
        throw ConfigError("single mode requires initial = delta");
    }
    if (mode == RunMode::PeriodScan) {
        for (double e : energy_list()) {
            if (!(e > z)) throw ConfigError("period_scan energies must exceed z");
        }
    }
    if (mode == RunMode::Dilation) {
        for (double e : energy_list()) {
            if (!(e >= z)) throw ConfigError("dilation energies must be >= z");
        }
    }
}

}  // namespace semirel
