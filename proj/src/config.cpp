#include "qaus/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "qaus/format.hpp"

namespace qaus {

namespace {

constexpr Experiment kAllExperiments[] = {Experiment::schedule_sweep, Experiment::chi_sweep,
                                          Experiment::noise_sweep, Experiment::thermal_report};

const std::set<std::string> kRunKeys = {"tool_version", "experiment", "wall_time_seconds", "outputs"};

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("invalid value '" + text + "' for key '" + key + "'");
    }
    return value;
}

template <class T>
std::vector<T> parse_number_list(const std::string& key, const std::string& text) {
    std::vector<T> out;
    for (const auto& item : split_list(text)) {
        out.push_back(parse_number<T>(key, item));
    }
    return out;
}

template <class T>
std::string join(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        if constexpr (std::is_same_v<T, double>) {
            out += format_double(values[i]);
        } else if constexpr (std::is_same_v<T, std::string>) {
            out += values[i];
        } else {
            out += std::to_string(values[i]);
        }
    }
    return out;
}

}  // namespace

std::string to_string(Experiment experiment) {
    switch (experiment) {
        case Experiment::schedule_sweep:
            return "schedule-sweep";
        case Experiment::chi_sweep:
            return "chi-sweep";
        case Experiment::noise_sweep:
            return "noise-sweep";
        case Experiment::thermal_report:
            return "thermal-report";
    }
    return "unknown";
}

Experiment parse_experiment(const std::string& name) {
    for (auto e : kAllExperiments) {
        if (to_string(e) == name) {
            return e;
        }
    }
    throw ConfigError("unknown experiment '" + name + "'");
}

std::vector<int> ExperimentConfig::sizes() const {
    std::vector<int> out;
    for (int n = n_min; n <= n_max; n += n_step) {
        out.push_back(n);
    }
    return out;
}

void ExperimentConfig::validate() const {
    if (n_min < 2 || n_max < n_min || n_step < 1) {
        throw ConfigError("size range needs 2 <= n_min <= n_max and n_step >= 1");
    }
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw ConfigError("epsilon must lie in (0, 1)");
    }
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw ConfigError("rel_tol and abs_tol must be positive");
    }
    if (workers < 1) {
        throw ConfigError("workers must be at least 1");
    }
    if (output_dir.empty()) {
        throw ConfigError("output_dir must not be empty");
    }
    switch (experiment) {
        case Experiment::schedule_sweep:
            if (n_max > 30) {
                throw ConfigError("schedule-sweep supports n <= 30");
            }
            for (int k : k_pieces) {
                if (k < 1) {
                    throw ConfigError("k_pieces entries must be >= 1");
                }
            }
            if (plot_n < 2 || plot_n > 30) {
                throw ConfigError("plot_n must lie in [2, 30]");
            }
            break;
        case Experiment::chi_sweep:
            if (chi.empty()) {
                throw ConfigError("chi-sweep needs a nonempty chi list");
            }
            if (n_max > 30) {
                throw ConfigError("chi-sweep supports n <= 30");
            }
            for (double c : chi) {
                if (!(c > -1.0)) {
                    throw ConfigError("chi entries must exceed -1");
                }
            }
            break;
        case Experiment::noise_sweep:
            if (n_max > 12) {
                throw ConfigError("noise-sweep supports n <= 12");
            }
            if (sigma.empty() && noise_strength.empty()) {
                throw ConfigError("noise-sweep needs a nonempty sigma or noise_strength list");
            }
            for (double v : sigma) {
                if (!(v >= 0.0)) {
                    throw ConfigError("sigma entries must be nonnegative");
                }
            }
            for (double v : noise_strength) {
                if (!(v >= 0.0)) {
                    throw ConfigError("noise_strength entries must be nonnegative");
                }
            }
            if (instances < 1 || bootstrap_resamples < 2) {
                throw ConfigError("noise-sweep needs instances >= 1 and bootstrap_resamples >= 2");
            }
            if (noise_kind != "real_symmetric" && noise_kind != "complex_hermitian") {
                throw ConfigError("noise_kind must be real_symmetric or complex_hermitian");
            }
            break;
        case Experiment::thermal_report:
            if (!(beta >= 0.0) || !(g >= 0.0) || !(beta_slope > 0.0)) {
                throw ConfigError("thermal-report needs beta >= 0, g >= 0 and beta_slope > 0");
            }
            if (policies.empty()) {
                throw ConfigError("thermal-report needs a nonempty policies list");
            }
            for (const auto& p : policies) {
                if (p != "fixed_beta" && p != "beta_linear_in_n" && p != "g_scaled") {
                    throw ConfigError("unknown bath policy '" + p + "'");
                }
            }
            break;
    }
}

ExperimentConfig default_config(Experiment experiment) {
    ExperimentConfig c;
    c.experiment = experiment;
    switch (experiment) {
        case Experiment::schedule_sweep:
            c.n_min = 4;
            c.n_max = 14;
            c.k_pieces = {1, 2, 3, 4};
            c.rel_tol = 1e-12;
            c.abs_tol = 1e-14;
            c.output_dir = "results/schedule-sweep";
            break;
        case Experiment::chi_sweep:
            c.n_min = 4;
            c.n_max = 24;
            c.chi = {0.0, 0.16, 0.08, 0.04, 0.02};
            c.rel_tol = 1e-12;
            c.abs_tol = 1e-14;
            c.output_dir = "results/chi-sweep";
            break;
        case Experiment::noise_sweep:
            c.n_min = 6;
            c.n_max = 10;
            c.n_step = 2;
            c.noise_strength = {0.0, 0.01, 0.02, 0.05, 0.1, 0.3, 1.0, 3.0};
            c.output_dir = "results/noise-sweep";
            break;
        case Experiment::thermal_report:
            c.n_min = 6;
            c.n_max = 16;
            c.policies = {"fixed_beta", "beta_linear_in_n", "g_scaled"};
            c.output_dir = "results/thermal-report";
            break;
    }
    return c;
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (key == "n_min") {
        c.n_min = parse_number<int>(key, value);
    } else if (key == "n_max") {
        c.n_max = parse_number<int>(key, value);
    } else if (key == "n_step") {
        c.n_step = parse_number<int>(key, value);
    } else if (key == "epsilon") {
        c.epsilon = parse_number<double>(key, value);
    } else if (key == "k_pieces") {
        c.k_pieces = parse_number_list<int>(key, value);
    } else if (key == "chi") {
        c.chi = parse_number_list<double>(key, value);
    } else if (key == "sigma") {
        c.sigma = parse_number_list<double>(key, value);
    } else if (key == "noise_strength") {
        c.noise_strength = parse_number_list<double>(key, value);
    } else if (key == "noise_kind") {
        c.noise_kind = value;
    } else if (key == "instances") {
        c.instances = parse_number<int>(key, value);
    } else if (key == "bootstrap_resamples") {
        c.bootstrap_resamples = parse_number<int>(key, value);
    } else if (key == "base_seed") {
        c.base_seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "workers") {
        c.workers = parse_number<int>(key, value);
    } else if (key == "rel_tol") {
        c.rel_tol = parse_number<double>(key, value);
    } else if (key == "abs_tol") {
        c.abs_tol = parse_number<double>(key, value);
    } else if (key == "beta") {
        c.beta = parse_number<double>(key, value);
    } else if (key == "g") {
        c.g = parse_number<double>(key, value);
    } else if (key == "beta_slope") {
        c.beta_slope = parse_number<double>(key, value);
    } else if (key == "policies") {
        c.policies = split_list(value);
    } else if (key == "plot_n") {
        c.plot_n = parse_number<int>(key, value);
    } else if (key == "output_dir") {
        if (value.empty()) {
            throw ConfigError("invalid value '' for key 'output_dir'");
        }
        c.output_dir = value;
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& c) {
    std::vector<std::pair<std::string, std::string>> out = {
        {"n_min", std::to_string(c.n_min)},
        {"n_max", std::to_string(c.n_max)},
        {"n_step", std::to_string(c.n_step)},
        {"epsilon", format_double(c.epsilon)},
        {"base_seed", std::to_string(c.base_seed)},
        {"workers", std::to_string(c.workers)},
        {"rel_tol", format_double(c.rel_tol)},
        {"abs_tol", format_double(c.abs_tol)},
        {"output_dir", c.output_dir.string()},
    };
    switch (c.experiment) {
        case Experiment::schedule_sweep:
            out.emplace_back("k_pieces", join(c.k_pieces));
            out.emplace_back("plot_n", std::to_string(c.plot_n));
            break;
        case Experiment::chi_sweep:
            out.emplace_back("chi", join(c.chi));
            break;
        case Experiment::noise_sweep:
            out.emplace_back("sigma", join(c.sigma));
            out.emplace_back("noise_strength", join(c.noise_strength));
            out.emplace_back("noise_kind", c.noise_kind);
            out.emplace_back("instances", std::to_string(c.instances));
            out.emplace_back("bootstrap_resamples", std::to_string(c.bootstrap_resamples));
            break;
        case Experiment::thermal_report:
            out.emplace_back("beta", format_double(c.beta));
            out.emplace_back("g", format_double(c.g));
            out.emplace_back("beta_slope", format_double(c.beta_slope));
            out.emplace_back("policies", join(c.policies));
            break;
    }
    return out;
}

ConfigSections parse_config_text(std::istream& in, const std::string& origin) {
    ConfigSections sections;
    std::string current = "common";
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#' || text[0] == ';') {
            continue;
        }
        const std::string where = origin + ":" + std::to_string(line_number);
        if (text.front() == '[') {
            if (text.back() != ']') {
                throw ConfigError(where + ": malformed section header '" + text + "'");
            }
            current = trim(text.substr(1, text.size() - 2));
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value', got '" + text + "'");
        }
        const std::string key = trim(text.substr(0, eq));
        if (key.empty()) {
            throw ConfigError(where + ": missing key");
        }
        auto& section = sections[current];
        if (section.contains(key)) {
            throw ConfigError(where + ": duplicate key '" + key + "' in section [" + current + "]");
        }
        section[key] = trim(text.substr(eq + 1));
    }
    return sections;
}

ConfigSections read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open configuration file '" + path.string() + "'");
    }
    return parse_config_text(in, path.string());
}

ExperimentConfig resolve_config(Experiment experiment, const ConfigSections& sections) {
    // Every section is checked, including ones for other experiments, so typos never pass silently.
    for (const auto& [name, entries] : sections) {
        if (name == "run") {
            for (const auto& [key, value] : entries) {
                if (!kRunKeys.contains(key)) {
                    throw ConfigError("unknown configuration key '" + key + "' in section [run]");
                }
            }
            continue;
        }
        if (name == "common") {
            continue;
        }
        const Experiment other = parse_experiment(name);
        ExperimentConfig probe = default_config(other);
        for (const auto& [key, value] : entries) {
            apply_setting(probe, key, value);
        }
    }

    ExperimentConfig config = default_config(experiment);
    for (const std::string& name : {std::string("common"), to_string(experiment)}) {
        const auto it = sections.find(name);
        if (it == sections.end()) {
            continue;
        }
        for (const auto& [key, value] : it->second) {
            apply_setting(config, key, value);
        }
    }
    return config;
}

void write_manifest(std::ostream& out, const ExperimentConfig& config, const ManifestInfo& info) {
    out << "# qaus run manifest; rerun with: qaus " << to_string(config.experiment) << " --config <this file>\n";
    out << "[run]\n";
    out << "tool_version = " << kToolVersion << "\n";
    out << "experiment = " << to_string(config.experiment) << "\n";
    out << "wall_time_seconds = " << format_double(info.wall_seconds) << "\n";
    out << "outputs = " << join(info.outputs) << "\n";
    out << "\n[" << to_string(config.experiment) << "]\n";
    for (const auto& [key, value] : config_entries(config)) {
        out << key << " = " << value << "\n";
    }
}

}  // namespace qaus
