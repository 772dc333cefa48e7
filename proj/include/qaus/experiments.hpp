#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qaus/config.hpp"
#include "qaus/dynamics.hpp"
#include "qaus/stats.hpp"
#include "qaus/thermal.hpp"

namespace qaus {

/// Raised when a run in an experiment is invalid; the CLI maps it to exit code 2.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fixed P_s level that defines the crossing size in the chi sweep.
inline constexpr double kCrossingThreshold = 0.1;
/// Number of largest sizes used for the log-linear tail fit of the chi sweep.
inline constexpr int kTailPoints = 4;

IntegratorConfig integrator_config(const ExperimentConfig& config);

// ---- schedule sweep -------------------------------------------------------------

struct ScheduleSweepRow {
    int pieces = 0;  ///< 0 for the exact schedule
    double total_time = 0.0;
    RunResult result;
};

std::vector<ScheduleSweepRow> compute_schedule_sweep(const ExperimentConfig& config);
void write_schedule_sweep_csv(std::ostream& out, const std::vector<ScheduleSweepRow>& rows);

// ---- chi sweep ------------------------------------------------------------------

struct ChiSweepRow {
    double s_star = 0.0;
    RunResult result;
};

struct ChiCrossing {
    double chi = 0.0;
    /// First swept n with P_s < threshold, or 0 if none.
    int first_below = 0;
    /// Last swept n with P_s >= threshold before the crossing, or 0 if none.
    int last_above = 0;
    /// Least-squares slope and R^2 of ln P_s against n over the tail sizes.
    double tail_slope = 0.0;
    double tail_r_squared = 0.0;
    int tail_n_first = 0;
    int tail_n_last = 0;
};

std::vector<ChiSweepRow> compute_chi_sweep(const ExperimentConfig& config);
std::vector<ChiCrossing> analyze_chi_sweep(const std::vector<ChiSweepRow>& rows, double threshold = kCrossingThreshold,
                                           int tail_points = kTailPoints);
void write_chi_sweep_csv(std::ostream& out, const std::vector<ChiSweepRow>& rows);
void write_chi_crossings_csv(std::ostream& out, const std::vector<ChiCrossing>& crossings);

// ---- noise sweep ----------------------------------------------------------------

struct NoiseInstanceRow {
    std::size_t instance_index = 0;
    RunResult result;
};

struct NoiseSummaryRow {
    int qubits = 0;
    std::size_t dim = 0;
    double sigma = 0.0;
    double noise_strength = 0.0;  ///< N sigma^2
    BootstrapEstimate estimate;
    double mean_success = 0.0;
    std::uint64_t bootstrap_seed = 0;
};

struct NoiseFit {
    double decay_constant = 0.0;
    std::size_t points = 0;
    bool available = false;
};

struct NoiseSweepData {
    std::vector<NoiseInstanceRow> instances;
    std::vector<NoiseSummaryRow> summary;
    NoiseFit fit;
};

/// Sorted, de-duplicated noise strengths for n qubits from the sigma and N sigma^2 lists.
std::vector<double> noise_sigmas(const ExperimentConfig& config, int qubits);
/// Seed of the bootstrap stream for one (n, sigma) cell; disjoint from instance seeds.
std::uint64_t bootstrap_seed(std::uint64_t base_seed, int qubits, double sigma);

NoiseSweepData compute_noise_sweep(const ExperimentConfig& config);
/// Decay-constant fit over summary rows with 0 < sigma < 1/sqrt(7N).
NoiseFit fit_noise_summary(const std::vector<NoiseSummaryRow>& summary);
void write_noise_ensemble_csv(std::ostream& out, const std::vector<NoiseInstanceRow>& rows);
void write_noise_sweep_csv(std::ostream& out, const std::vector<NoiseSummaryRow>& rows);
/// Guide-curve constants for the figure renderer.
void write_figure_params_json(std::ostream& out, const ExperimentConfig& config, const NoiseSweepData& data);

// ---- thermal report -------------------------------------------------------------

std::vector<ThermalReport> compute_thermal_report(const ExperimentConfig& config);
void write_thermal_csv(std::ostream& out, const ThermalReport& report);

// ---- driver ---------------------------------------------------------------------

struct ExperimentOutcome {
    std::vector<std::filesystem::path> files;  ///< CSV and sidecar files, manifest last
    std::size_t runs = 0;
    std::size_t invalid_runs = 0;
    double wall_seconds = 0.0;
};

/// Runs the experiment, writes its CSVs and manifest into config.output_dir, and reports
/// invalid runs (the files are still written so failures can be inspected).
ExperimentOutcome run_experiment(const ExperimentConfig& config);

inline constexpr const char* kManifestFile = "manifest.ini";

}  // namespace qaus
