#include "qaus/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>

#include "json.hpp"

#include "qaus/format.hpp"
#include "qaus/noise.hpp"
#include "qaus/parallel.hpp"
#include "qaus/spectrum.hpp"

namespace qaus {

namespace {

constexpr std::uint64_t kBootstrapDomain = 0x626f6f7473747261ULL;

std::string fmt(double value) { return format_double(value); }

void write_run_tail(std::ostream& out, const RunResult& r) {
    out << fmt(r.success_probability) << ',' << fmt(r.norm_drift) << ',' << r.accepted_steps << ','
        << r.rejected_steps << ',' << to_string(r.status) << '\n';
}

std::size_t dim_of(int qubits) { return std::size_t{1} << qubits; }

/// Least-squares line y = a + b x; returns {slope, r_squared}.
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    const double r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return {slope, r_squared};
}

class OutputWriter {
public:
    explicit OutputWriter(const std::filesystem::path& dir) : dir_(dir) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec || !std::filesystem::is_directory(dir_)) {
            throw ConfigError("output directory '" + dir_.string() + "' cannot be created");
        }
    }

    void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
        const auto path = dir_ / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ConfigError("output file '" + path.string() + "' is not writable");
        }
        body(out);
        out.flush();
        if (!out) {
            throw std::runtime_error("failed writing '" + path.string() + "'");
        }
        files_.push_back(path);
        names_.push_back(name);
    }

    const std::vector<std::filesystem::path>& files() const { return files_; }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::filesystem::path dir_;
    std::vector<std::filesystem::path> files_;
    std::vector<std::string> names_;
};

}  // namespace

IntegratorConfig integrator_config(const ExperimentConfig& config) {
    IntegratorConfig out;
    out.step.rel_tol = config.rel_tol;
    out.step.abs_tol = config.abs_tol;
    out.validate();
    return out;
}

// ---- schedule sweep -------------------------------------------------------------

std::vector<ScheduleSweepRow> compute_schedule_sweep(const ExperimentConfig& config) {
    config.validate();
    const IntegratorConfig integrator = integrator_config(config);
    std::vector<int> pieces = config.k_pieces;
    pieces.push_back(0);

    const std::vector<int> sizes = config.sizes();
    std::vector<ScheduleSweepRow> rows(sizes.size() * pieces.size());
    parallel_for(rows.size(), config.workers, [&](std::size_t index) {
        const int n = sizes[index / pieces.size()];
        const int k = pieces[index % pieces.size()];
        const ScheduleParams params = make_schedule_params(dim_of(n), config.epsilon);
        const Schedule schedule = k == 0 ? Schedule::exact(params) : Schedule::piecewise(k, params);
        ScheduleSweepRow row;
        row.pieces = k;
        row.total_time = params.total_time;
        row.result = evolve(HamiltonianSpec(ProblemInstance(n, 0)), schedule, integrator, Space::reduced);
        row.result.final_state = StateVector();
        rows[index] = std::move(row);
    });
    return rows;
}

void write_schedule_sweep_csv(std::ostream& out, const std::vector<ScheduleSweepRow>& rows) {
    out << "n,N,schedule,k_pieces,epsilon,total_time,P_s,norm_drift,accepted_steps,rejected_steps,status\n";
    for (const auto& row : rows) {
        const RunResult& r = row.result;
        out << r.qubits << ',' << r.dim << ',' << r.schedule << ',' << row.pieces << ',' << fmt(r.epsilon) << ','
            << fmt(row.total_time) << ',';
        write_run_tail(out, r);
    }
}

// ---- chi sweep ------------------------------------------------------------------

std::vector<ChiSweepRow> compute_chi_sweep(const ExperimentConfig& config) {
    config.validate();
    const IntegratorConfig integrator = integrator_config(config);
    const std::vector<int> sizes = config.sizes();
    const std::size_t nchi = config.chi.size();
    std::vector<ChiSweepRow> rows(sizes.size() * nchi);
    // Chi-major order keeps each chi's curve contiguous in the CSV.
    parallel_for(rows.size(), config.workers, [&](std::size_t index) {
        const double chi = config.chi[index / sizes.size()];
        const int n = sizes[index % sizes.size()];
        const Schedule schedule = Schedule::exact(make_schedule_params(dim_of(n), config.epsilon));
        ChiSweepRow row;
        row.s_star = shifted_gap_minimum(chi, dim_of(n));
        row.result = evolve(HamiltonianSpec(ProblemInstance(n, 0), chi), schedule, integrator, Space::reduced);
        row.result.final_state = StateVector();
        rows[index] = std::move(row);
    });
    return rows;
}

std::vector<ChiCrossing> analyze_chi_sweep(const std::vector<ChiSweepRow>& rows, double threshold, int tail_points) {
    std::vector<double> chis;
    for (const auto& row : rows) {
        if (std::find(chis.begin(), chis.end(), row.result.chi) == chis.end()) {
            chis.push_back(row.result.chi);
        }
    }
    std::vector<ChiCrossing> out;
    for (double chi : chis) {
        std::vector<const ChiSweepRow*> curve;
        for (const auto& row : rows) {
            if (row.result.chi == chi) {
                curve.push_back(&row);
            }
        }
        std::sort(curve.begin(), curve.end(),
                  [](const auto* a, const auto* b) { return a->result.qubits < b->result.qubits; });

        ChiCrossing c;
        c.chi = chi;
        for (const auto* row : curve) {
            if (row->result.success_probability < threshold) {
                c.first_below = row->result.qubits;
                break;
            }
            c.last_above = row->result.qubits;
        }
        const std::size_t take = std::min<std::size_t>(curve.size(), static_cast<std::size_t>(tail_points));
        if (take >= 2) {
            std::vector<double> x;
            std::vector<double> y;
            for (std::size_t i = curve.size() - take; i < curve.size(); ++i) {
                x.push_back(curve[i]->result.qubits);
                y.push_back(std::log(std::max(curve[i]->result.success_probability, 1e-300)));
            }
            std::tie(c.tail_slope, c.tail_r_squared) = linear_fit(x, y);
            c.tail_n_first = static_cast<int>(x.front());
            c.tail_n_last = static_cast<int>(x.back());
        }
        out.push_back(c);
    }
    return out;
}

void write_chi_sweep_csv(std::ostream& out, const std::vector<ChiSweepRow>& rows) {
    out << "n,N,chi,s_star,epsilon,total_time,P_s,norm_drift,accepted_steps,rejected_steps,status\n";
    for (const auto& row : rows) {
        const RunResult& r = row.result;
        out << r.qubits << ',' << r.dim << ',' << fmt(r.chi) << ',' << fmt(row.s_star) << ',' << fmt(r.epsilon)
            << ',' << fmt(total_time(r.dim, r.epsilon)) << ',';
        write_run_tail(out, r);
    }
}

void write_chi_crossings_csv(std::ostream& out, const std::vector<ChiCrossing>& crossings) {
    out << "chi,threshold,last_n_above,first_n_below,tail_n_first,tail_n_last,tail_slope,tail_r_squared\n";
    for (const auto& c : crossings) {
        out << fmt(c.chi) << ',' << fmt(kCrossingThreshold) << ',' << c.last_above << ',' << c.first_below << ','
            << c.tail_n_first << ',' << c.tail_n_last << ',' << fmt(c.tail_slope) << ',' << fmt(c.tail_r_squared)
            << '\n';
    }
}

// ---- noise sweep ----------------------------------------------------------------

std::vector<double> noise_sigmas(const ExperimentConfig& config, int qubits) {
    const double dim = static_cast<double>(dim_of(qubits));
    std::vector<double> out = config.sigma;
    for (double x : config.noise_strength) {
        out.push_back(std::sqrt(x / dim));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t bootstrap_seed(std::uint64_t base_seed, int qubits, double sigma) {
    std::uint64_t h = mix_seed(base_seed ^ kBootstrapDomain);
    h = mix_seed(h ^ static_cast<std::uint64_t>(qubits));
    return mix_seed(h ^ std::bit_cast<std::uint64_t>(sigma));
}

NoiseSweepData compute_noise_sweep(const ExperimentConfig& config) {
    config.validate();
    const IntegratorConfig integrator = integrator_config(config);
    NoiseParams params;
    params.base_seed = config.base_seed;
    params.instances = config.instances;
    params.kind = config.noise_kind == "complex_hermitian" ? NoiseKind::complex_hermitian : NoiseKind::real_symmetric;

    NoiseSweepData data;
    for (int n : config.sizes()) {
        const std::size_t dim = dim_of(n);
        const std::vector<double> sigmas = noise_sigmas(config, n);
        const Schedule schedule = Schedule::exact(make_schedule_params(dim, config.epsilon));
        auto results = run_noise_ensembles(n, sigmas, params, schedule, integrator, config.workers);
        for (std::size_t j = 0; j < sigmas.size(); ++j) {
            std::vector<double> success;
            success.reserve(results[j].size());
            for (std::size_t i = 0; i < results[j].size(); ++i) {
                success.push_back(results[j][i].success_probability);
                data.instances.push_back(NoiseInstanceRow{i, std::move(results[j][i])});
            }
            NoiseSummaryRow row;
            row.qubits = n;
            row.dim = dim;
            row.sigma = sigmas[j];
            row.noise_strength = static_cast<double>(dim) * sigmas[j] * sigmas[j];
            row.bootstrap_seed = bootstrap_seed(config.base_seed, n, sigmas[j]);
            row.estimate = bootstrap_median(success, config.bootstrap_resamples, row.bootstrap_seed);
            double total = 0.0;
            for (double p : success) {
                total += p;
            }
            row.mean_success = total / static_cast<double>(success.size());
            data.summary.push_back(row);
        }
    }
    data.fit = fit_noise_summary(data.summary);
    return data;
}

NoiseFit fit_noise_summary(const std::vector<NoiseSummaryRow>& summary) {
    std::vector<DecayPoint> points;
    for (const auto& row : summary) {
        if (row.sigma > 0.0 && row.sigma < small_noise_limit(row.dim) && row.estimate.mean_of_medians > 0.0) {
            points.push_back(DecayPoint{row.dim, row.sigma, row.estimate.mean_of_medians});
        }
    }
    NoiseFit fit;
    fit.points = points.size();
    if (points.size() >= 3) {
        fit.decay_constant = fit_decay_constant(points);
        fit.available = true;
    }
    return fit;
}

void write_noise_ensemble_csv(std::ostream& out, const std::vector<NoiseInstanceRow>& rows) {
    out << "n,N,sigma,instance_index,seed,marked_state,epsilon,P_s,norm_drift,accepted_steps,rejected_steps,status\n";
    for (const auto& row : rows) {
        const RunResult& r = row.result;
        out << r.qubits << ',' << r.dim << ',' << fmt(r.sigma) << ',' << row.instance_index << ',' << r.seed << ','
            << r.marked << ',' << fmt(r.epsilon) << ',';
        write_run_tail(out, r);
    }
}

void write_noise_sweep_csv(std::ostream& out, const std::vector<NoiseSummaryRow>& rows) {
    out << "n,N,sigma,N_sigma2,instances,mean_of_medians,error_bar,std_of_medians,mean_P_s,resamples,"
           "bootstrap_seed\n";
    for (const auto& row : rows) {
        out << row.qubits << ',' << row.dim << ',' << fmt(row.sigma) << ',' << fmt(row.noise_strength) << ','
            << row.estimate.sample_size << ',' << fmt(row.estimate.mean_of_medians) << ','
            << fmt(row.estimate.error_bar) << ',' << fmt(row.estimate.std_of_medians) << ','
            << fmt(row.mean_success) << ',' << row.estimate.resamples << ',' << row.bootstrap_seed << '\n';
    }
}

void write_figure_params_json(std::ostream& out, const ExperimentConfig& config, const NoiseSweepData& data) {
    nlohmann::ordered_json j;
    j["decay_constant_reference"] = kReferenceDecayConstant;
    j["decay_constant_fit"] = data.fit.available ? nlohmann::ordered_json(data.fit.decay_constant)
                                                 : nlohmann::ordered_json(nullptr);
    j["decay_fit_points"] = data.fit.points;
    j["probability_threshold"] = kCrossingThreshold;
    nlohmann::ordered_json sizes = nlohmann::ordered_json::array();
    for (int n : config.sizes()) {
        const std::size_t dim = dim_of(n);
        sizes.push_back({{"n", n},
                         {"N", dim},
                         {"saturation_probability", 1.0 / static_cast<double>(dim)},
                         {"small_noise_sigma_limit", small_noise_limit(dim)},
                         {"large_noise_sigma_limit", large_noise_limit(dim)}});
    }
    j["sizes"] = sizes;
    out << j.dump(2) << '\n';
}

// ---- thermal report -------------------------------------------------------------

std::vector<ThermalReport> compute_thermal_report(const ExperimentConfig& config) {
    config.validate();
    const BathParams bath{config.beta, config.g};
    std::vector<ThermalReport> out;
    for (const auto& name : config.policies) {
        out.push_back(
            scaling_report(config.n_min, config.n_max, bath, parse_bath_policy(name), config.epsilon, config.beta_slope));
    }
    return out;
}

void write_thermal_csv(std::ostream& out, const ThermalReport& report) {
    out << "n,N,beta,g,policy,epsilon,thermal_P_at_half,N_times_thermal_P,expected_excitations\n";
    for (const auto& row : report.rows) {
        out << row.qubits << ',' << row.dim << ',' << fmt(row.beta) << ',' << fmt(row.g) << ','
            << to_string(row.policy) << ',' << fmt(row.epsilon) << ',' << fmt(row.thermal_success_at_half) << ','
            << fmt(static_cast<double>(row.dim) * row.thermal_success_at_half) << ','
            << fmt(row.expected_excitations) << '\n';
    }
}

// ---- driver ---------------------------------------------------------------------

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    OutputWriter writer(config.output_dir);
    ExperimentOutcome outcome;
    auto count = [&](const RunResult& r) {
        ++outcome.runs;
        if (!r.valid()) {
            ++outcome.invalid_runs;
        }
    };

    switch (config.experiment) {
        case Experiment::schedule_sweep: {
            const auto rows = compute_schedule_sweep(config);
            for (const auto& row : rows) {
                count(row.result);
            }
            writer.write("schedule_sweep.csv", [&](std::ostream& out) { write_schedule_sweep_csv(out, rows); });
            const ScheduleParams params = make_schedule_params(dim_of(config.plot_n), config.epsilon);
            writer.write("schedule_exact.csv",
                         [&](std::ostream& out) { write_schedule_csv(out, Schedule::exact(params)); });
            for (int k : config.k_pieces) {
                writer.write("schedule_k" + std::to_string(k) + ".csv",
                             [&](std::ostream& out) { write_schedule_csv(out, Schedule::piecewise(k, params)); });
            }
            break;
        }
        case Experiment::chi_sweep: {
            const auto rows = compute_chi_sweep(config);
            for (const auto& row : rows) {
                count(row.result);
            }
            writer.write("chi_sweep.csv", [&](std::ostream& out) { write_chi_sweep_csv(out, rows); });
            writer.write("chi_crossings.csv",
                         [&](std::ostream& out) { write_chi_crossings_csv(out, analyze_chi_sweep(rows)); });
            writer.write("figure_params.json", [&](std::ostream& out) {
                nlohmann::ordered_json j;
                j["probability_threshold"] = kCrossingThreshold;
                out << j.dump(2) << '\n';
            });
            break;
        }
        case Experiment::noise_sweep: {
            const auto data = compute_noise_sweep(config);
            for (const auto& row : data.instances) {
                count(row.result);
            }
            writer.write("noise_ensemble.csv",
                         [&](std::ostream& out) { write_noise_ensemble_csv(out, data.instances); });
            writer.write("noise_sweep.csv", [&](std::ostream& out) { write_noise_sweep_csv(out, data.summary); });
            writer.write("figure_params.json",
                         [&](std::ostream& out) { write_figure_params_json(out, config, data); });
            break;
        }
        case Experiment::thermal_report: {
            for (const auto& report : compute_thermal_report(config)) {
                writer.write("thermal_" + to_string(report.policy) + ".csv",
                             [&](std::ostream& out) { write_thermal_csv(out, report); });
            }
            break;
        }
    }

    outcome.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ManifestInfo info;
    info.wall_seconds = outcome.wall_seconds;
    info.outputs = writer.names();
    writer.write(kManifestFile, [&](std::ostream& out) { write_manifest(out, config, info); });
    outcome.files = writer.files();
    return outcome;
}

}  // namespace qaus
