#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaus {

/// Raised for malformed or unknown configuration; the CLI maps it to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Experiment { schedule_sweep, chi_sweep, noise_sweep, thermal_report };

std::string to_string(Experiment experiment);
Experiment parse_experiment(const std::string& name);

/// Fully resolved settings for one experiment. Defaults depend on the experiment.
struct ExperimentConfig {
    Experiment experiment = Experiment::schedule_sweep;
    int n_min = 4;
    int n_max = 14;
    int n_step = 1;
    double epsilon = 0.01;
    std::vector<int> k_pieces;
    std::vector<double> chi;
    /// Absolute noise strengths; merged with noise_strength (N sigma^2) values per n.
    std::vector<double> sigma;
    std::vector<double> noise_strength;
    std::string noise_kind = "real_symmetric";
    int instances = 200;
    int bootstrap_resamples = 1000;
    std::uint64_t base_seed = 1;
    int workers = 1;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double beta = 1.0;
    double g = 0.1;
    double beta_slope = 1.3862943611198906;
    std::vector<std::string> policies;
    int plot_n = 10;
    std::filesystem::path output_dir = "results";

    std::vector<int> sizes() const;
    void validate() const;
};

ExperimentConfig default_config(Experiment experiment);

/// Raw "key = value" entries grouped by [section].
using ConfigSections = std::map<std::string, std::map<std::string, std::string>>;

ConfigSections parse_config_text(std::istream& in, const std::string& origin = "<config>");
ConfigSections read_config_file(const std::filesystem::path& path);

/// Applies [common] and then [<experiment>] entries over the defaults. [run] entries
/// (manifest metadata) are checked and ignored. Unknown sections or keys raise ConfigError.
ExperimentConfig resolve_config(Experiment experiment, const ConfigSections& sections);

/// Sets one key from its text form; the same parser used for files and flags.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Key/value text for every experiment setting, in a fixed order.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& config);

inline constexpr const char* kToolVersion = "1.0.0";

struct ManifestInfo {
    double wall_seconds = 0.0;
    std::vector<std::string> outputs;
};

/// Writes the resolved configuration plus run metadata; loadable by resolve_config.
void write_manifest(std::ostream& out, const ExperimentConfig& config, const ManifestInfo& info);

}  // namespace qaus
