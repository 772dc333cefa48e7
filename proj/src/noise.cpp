#include "qaus/noise.hpp"

#include <cmath>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "qaus/parallel.hpp"

namespace qaus {

void NoiseParams::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("noise strength sigma must be finite and nonnegative");
    }
    if (instances < 1) {
        throw std::invalid_argument("noise ensemble needs at least one instance");
    }
}

std::uint64_t mix_seed(std::uint64_t value) {
    std::uint64_t z = value + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t instance_index) {
    return base_seed ^ mix_seed(static_cast<std::uint64_t>(instance_index));
}

std::size_t instance_marked_state(std::size_t dim, std::uint64_t base_seed, std::size_t instance_index) {
    constexpr std::uint64_t kMarkedStream = 0x6d61726b65645f73ULL;
    std::mt19937_64 rng(mix_seed(instance_seed(base_seed, instance_index) ^ kMarkedStream));
    std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
    return pick(rng);
}

NoiseMatrix sample_unit_noise(std::size_t dim, NoiseKind kind, std::uint64_t seed) {
    const auto n = static_cast<Eigen::Index>(dim);
    NoiseMatrix out;
    out.elements = Eigen::MatrixXcd::Zero(n, n);
    out.seed = seed;
    out.sigma = 1.0;
    out.kind = kind;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double half = std::sqrt(0.5);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.elements(i, i) = normal(rng);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            Complex value;
            if (kind == NoiseKind::real_symmetric) {
                value = normal(rng);
            } else {
                const double re = normal(rng);
                const double im = normal(rng);
                value = Complex(half * re, half * im);
            }
            out.elements(i, j) = value;
            out.elements(j, i) = std::conj(value);
        }
    }
    return out;
}

NoiseMatrix sample_noise(std::size_t dim, const NoiseParams& params, std::size_t instance_index) {
    params.validate();
    NoiseMatrix out = sample_unit_noise(dim, params.kind, instance_seed(params.base_seed, instance_index));
    out.elements *= params.sigma;
    out.sigma = params.sigma;
    return out;
}

namespace {

void check_ensemble_args(int qubits, const Schedule& schedule) {
    if (qubits > kNoiseMaxQubits) {
        throw std::invalid_argument("noise ensembles are limited to n <= " + std::to_string(kNoiseMaxQubits));
    }
    if (schedule.params().dim != (std::size_t{1} << qubits)) {
        throw std::invalid_argument("schedule dimension does not match 2^n");
    }
}

}  // namespace

std::vector<std::vector<RunResult>> run_noise_ensembles(int qubits, std::span<const double> sigmas,
                                                        const NoiseParams& params, const Schedule& schedule,
                                                        const IntegratorConfig& config, int workers) {
    params.validate();
    config.validate();
    check_ensemble_args(qubits, schedule);
    for (double sigma : sigmas) {
        if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
            throw std::invalid_argument("noise strength sigma must be finite and nonnegative");
        }
    }

    const std::size_t dim = std::size_t{1} << qubits;
    const auto count = static_cast<std::size_t>(params.instances);
    std::vector<std::vector<RunResult>> out(sigmas.size(), std::vector<RunResult>(count));

    parallel_for(count, workers, [&](std::size_t index) {
        const std::uint64_t seed = instance_seed(params.base_seed, index);
        const ProblemInstance instance(qubits, instance_marked_state(dim, params.base_seed, index));
        const NoiseMatrix unit = sample_unit_noise(dim, params.kind, seed);

        std::optional<NoiseEigensystem> unit_eig;
        for (std::size_t j = 0; j < sigmas.size(); ++j) {
            const double sigma = sigmas[j];
            RunResult result;
            if (sigma == 0.0) {
                result = evolve(HamiltonianSpec(instance), schedule, config, Space::full);
                result.seed = seed;
            } else {
                auto scaled = std::make_shared<NoiseMatrix>(unit);
                scaled->elements *= sigma;
                scaled->sigma = sigma;
                const HamiltonianSpec spec(instance, 0.0, std::move(scaled));
                if (config.noise_route == NoiseRoute::eigenbasis) {
                    if (!unit_eig) {
                        unit_eig = diagonalize_noise(unit);
                    }
                    NoiseEigensystem eig{unit_eig->eigenvalues * sigma, unit_eig->eigenvectors};
                    result = evolve(spec, schedule, config, Space::full, std::nullopt, &eig);
                } else {
                    result = evolve(spec, schedule, config, Space::full);
                }
            }
            result.sigma = sigma;
            result.final_state = StateVector();
            out[j][index] = std::move(result);
        }
    });
    return out;
}

std::vector<RunResult> run_noise_ensemble(int qubits, const NoiseParams& params, const Schedule& schedule,
                                          const IntegratorConfig& config, int workers) {
    const double sigma = params.sigma;
    auto all = run_noise_ensembles(qubits, std::span<const double>(&sigma, 1), params, schedule, config, workers);
    return std::move(all.front());
}

double small_noise_limit(std::size_t dim) { return 1.0 / std::sqrt(7.0 * static_cast<double>(dim)); }

double large_noise_limit(std::size_t dim) { return std::sqrt(3.0 / static_cast<double>(dim)); }

double fit_decay_constant(std::span<const DecayPoint> points) {
    if (points.size() < 3) {
        throw std::invalid_argument("decay fit needs at least 3 points");
    }
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& p : points) {
        if (!(p.median_success > 0.0)) {
            throw std::invalid_argument("decay fit needs positive median success probabilities");
        }
        if (!(p.sigma < small_noise_limit(p.dim))) {
            throw std::invalid_argument("decay fit point lies outside the small-noise regime");
        }
        const double x = static_cast<double>(p.dim) * p.sigma * p.sigma;
        const double y = -std::log(p.median_success);
        sxy += x * y;
        sxx += x * x;
    }
    if (!(sxx > 0.0)) {
        throw std::invalid_argument("decay fit needs at least one point with sigma > 0");
    }
    return sxy / sxx;
}

}  // namespace qaus
