#include <algorithm>
#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "oracles.hpp"
#include "qaus/config.hpp"
#include "qaus/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

/// Flags that do not spell their config key.
const std::vector<std::pair<std::string, std::string>> kAliases = {
    {"seed", "base_seed"},
    {"out", "output_dir"},
};

/// Config keys exposed as --long-name flags (underscores become dashes).
const std::vector<std::string> kKeys = {
    "n_min",  "n_max",   "n_step",     "epsilon",  "k_pieces", "chi",         "sigma",
    "noise_strength",    "noise_kind", "instances", "bootstrap_resamples",    "workers",
    "rel_tol", "abs_tol", "beta",      "g",        "beta_slope", "policies",  "plot_n",
};

std::string flag_name(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return "--" + key;
}

struct Subcommand {
    CLI::App* app = nullptr;
    std::string config_path;
    std::map<std::string, std::string> values;  ///< keyed by config key
};

void add_common_flags(Subcommand& sub) {
    sub.app->add_option("--config", sub.config_path, "Configuration file (key = value, [sections])");
    for (const auto& [flag, key] : kAliases) {
        sub.app->add_option("--" + flag, sub.values[key], "Overrides '" + key + "'");
    }
    for (const auto& key : kKeys) {
        sub.app->add_option(flag_name(key), sub.values[key], "Overrides '" + key + "'");
    }
}

qaus::ExperimentConfig resolve(qaus::Experiment experiment, const Subcommand& sub) {
    qaus::ConfigSections sections;
    if (!sub.config_path.empty()) {
        sections = qaus::read_config_file(sub.config_path);
    }
    qaus::ExperimentConfig config = qaus::resolve_config(experiment, sections);
    for (const auto& [flag, key] : kAliases) {
        if (sub.app->count("--" + flag) > 0) {
            qaus::apply_setting(config, key, sub.values.at(key));
        }
    }
    for (const auto& key : kKeys) {
        if (sub.app->count(flag_name(key)) > 0) {
            qaus::apply_setting(config, key, sub.values.at(key));
        }
    }
    config.validate();
    return config;
}

int run_experiment(qaus::Experiment experiment, const Subcommand& sub) {
    const qaus::ExperimentConfig config = resolve(experiment, sub);
    std::cerr << "[qaus] " << qaus::to_string(experiment) << ": n = " << config.n_min << ".." << config.n_max
              << ", epsilon = " << config.epsilon << ", workers = " << config.workers << ", output "
              << config.output_dir.string() << "\n";
    const qaus::ExperimentOutcome outcome = qaus::run_experiment(config);
    for (const auto& file : outcome.files) {
        std::cerr << "[qaus] wrote " << file.string() << "\n";
    }
    std::cerr << "[qaus] " << outcome.runs << " runs, " << outcome.invalid_runs << " invalid, "
              << outcome.wall_seconds << " s\n";
    if (outcome.invalid_runs > 0) {
        std::cerr << "[qaus] error: " << outcome.invalid_runs << " run(s) failed the integrator checks\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int run_validate() {
    bool all = true;
    for (const auto& check : qaus::oracle::quick_suite()) {
        std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << "\n";
        all = all && check.passed;
    }
    return all ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adiabatic unstructured-search simulator and experiment harness"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qaus::kToolVersion));

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"schedule-sweep", "Success probability vs n for the exact and piecewise-linear schedules"},
        {"chi-sweep", "Success probability vs n for a misspecified problem Hamiltonian"},
        {"noise-sweep", "Median success probability vs static random-noise strength"},
        {"thermal-report", "Thermal success probability and expected excitations per bath policy"},
        {"validate", "Run the oracle/property suite"},
    };
    std::map<std::string, Subcommand> subs;
    for (const auto& [name, description] : commands) {
        Subcommand& sub = subs[name];
        sub.app = app.add_subcommand(name, description);
        add_common_flags(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        for (auto& [name, sub] : subs) {
            if (!sub.app->parsed()) {
                continue;
            }
            if (name == "validate") {
                return run_validate();
            }
            return run_experiment(qaus::parse_experiment(name), sub);
        }
    } catch (const qaus::ConfigError& e) {
        std::cerr << "qaus: configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "qaus: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}
