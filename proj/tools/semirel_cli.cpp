// semirel-sim: phase-space Monte Carlo for the semi-relativistic oscillator.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "semirel/config.hpp"
#include "semirel/error.hpp"
#include "semirel/runner.hpp"
#include "semirel/version.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wigner-Liouville dynamics of the semi-relativistic harmonic oscillator "
                 "by Monte Carlo virtual trajectories"};
    app.set_version_flag("--version", std::string(semirel::kVersion));

    std::string config_path;
    app.add_option("--config", config_path, "Config file (key = value lines)");

    // Flags map onto config keys and override the file.
    const std::vector<std::pair<std::string, std::string>> flag_keys{
        {"--mode", "mode"},
        {"--z", "z"},
        {"--x0", "x0"},
        {"--p0", "p0"},
        {"--initial", "initial"},
        {"--center-units", "center_units"},
        {"--n-traj", "n_traj"},
        {"--dt", "dt"},
        {"--t-end", "t_end"},
        {"--snapshot-every", "snapshot_every"},
        {"--bins", "bins"},
        {"--seed", "seed"},
        {"--workers", "workers"},
        {"--out-dir", "out_dir"},
        {"--format", "format"},
        {"--energies", "energies"},
    };
    std::vector<std::optional<std::string>> flag_values(flag_keys.size());
    for (std::size_t i = 0; i < flag_keys.size(); ++i) {
        app.add_option(flag_keys[i].first, flag_values[i], "Sets config key '" +
                                                               flag_keys[i].second + "'");
    }
    std::vector<std::string> extra;
    app.add_option("--set", extra, "Any config key as key=value (repeatable)");
    bool print_config = false;
    app.add_flag("--print-config", print_config,
                 "Print the canonical configuration and exit without running");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    semirel::RunConfig config;
    try {
        if (!config_path.empty()) config = semirel::load_config(config_path);
        for (std::size_t i = 0; i < flag_keys.size(); ++i) {
            if (flag_values[i]) semirel::apply_setting(config, flag_keys[i].second, *flag_values[i]);
        }
        for (const auto& kv : extra) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw semirel::ConfigError("--set expects key=value, got '" + kv + "'");
            }
            semirel::apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (print_config) {
            std::cout << semirel::serialize_config(config);
            return 0;
        }
        config.validate();
    } catch (const semirel::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        const semirel::RunSummary summary = semirel::run(config);
        for (const auto& f : summary.files) std::cerr << "wrote " << f.string() << '\n';
    } catch (const semirel::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const semirel::DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const semirel::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
