#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qaus/dynamics.hpp"
#include "qaus/problem.hpp"
#include "qaus/schedule.hpp"

namespace qaus {

struct NoiseParams {
    double sigma = 0.0;
    std::uint64_t base_seed = 0;
    int instances = 200;
    NoiseKind kind = NoiseKind::real_symmetric;

    void validate() const;
};

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t value);
/// base_seed XOR a mixed counter for the instance, independent of evaluation order.
std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t instance_index);
/// Marked state for an ensemble member, uniform on [0, N) and drawn from its own stream.
std::size_t instance_marked_state(std::size_t dim, std::uint64_t base_seed, std::size_t instance_index);

/// Unit-variance draw for the instance; sample_noise scales it by sigma.
NoiseMatrix sample_unit_noise(std::size_t dim, NoiseKind kind, std::uint64_t seed);
/// Real symmetric (default) or complex Hermitian matrix whose independent entries have
/// standard deviation sigma. Deterministic in (base_seed, instance_index).
NoiseMatrix sample_noise(std::size_t dim, const NoiseParams& params, std::size_t instance_index);

inline constexpr int kNoiseMaxQubits = 12;

/// Full-space evolutions of H(s) + H_noise, one per ensemble member: fresh marked state,
/// fresh noise matrix, initial |+>. Results are ordered by instance index.
std::vector<RunResult> run_noise_ensemble(int qubits, const NoiseParams& params, const Schedule& schedule,
                                          const IntegratorConfig& config, int workers = 1);

/// Same as run_noise_ensemble for several noise strengths. Each member's unit noise draw is
/// diagonalized once and reused across strengths; out[j][i] is strength j, instance i.
std::vector<std::vector<RunResult>> run_noise_ensembles(int qubits, std::span<const double> sigmas,
                                                        const NoiseParams& params, const Schedule& schedule,
                                                        const IntegratorConfig& config, int workers = 1);

struct DecayPoint {
    std::size_t dim;
    double sigma;
    double median_success;
};

/// Upper edge of the small-noise regime, sigma < 1/sqrt(7N).
double small_noise_limit(std::size_t dim);
/// Lower edge of the saturated regime, sigma > sqrt(3/N).
double large_noise_limit(std::size_t dim);

inline constexpr double kReferenceDecayConstant = 2.11;

/// Least-squares slope through the origin of -log(P) against N sigma^2.
double fit_decay_constant(std::span<const DecayPoint> points);

}  // namespace qaus
