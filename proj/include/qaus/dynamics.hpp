#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "qaus/problem.hpp"
#include "qaus/rkf45.hpp"
#include "qaus/schedule.hpp"

namespace qaus {

enum class Space { reduced, full };

/// How a full-space run applies an attached noise matrix.
enum class NoiseRoute {
    eigenbasis,  ///< propagate in the noise eigenbasis: diagonal plus two rank-one projectors, O(N) per step
    dense,       ///< dense O(N^2) matrix-vector product in the computational basis
};

struct IntegratorConfig {
    StepControl step;
    /// Ceiling on |<psi|psi> - 1| at t = T; above it the run is invalid.
    double norm_drift_ceiling = 1e-6;
    /// Multiple of the identity subtracted from H'(s) during propagation. Only the global phase changes.
    double energy_offset = 0.5;
    NoiseRoute noise_route = NoiseRoute::eigenbasis;

    void validate() const;
};

enum class RunStatus { ok, norm_drift_exceeded, step_underflow, step_limit };

std::string to_string(RunStatus status);

struct RunResult {
    double success_probability = 0.0;
    double norm_drift = 0.0;
    std::int64_t accepted_steps = 0;
    std::int64_t rejected_steps = 0;
    RunStatus status = RunStatus::ok;
    double wall_seconds = 0.0;

    int qubits = 0;
    std::size_t dim = 0;
    std::size_t marked = 0;
    double epsilon = 0.0;
    double chi = 0.0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::string schedule;
    Space space = Space::reduced;

    /// Final state in the computational basis (full) or the {|m>, |m_perp>} basis (reduced).
    StateVector final_state;

    bool valid() const { return status == RunStatus::ok; }
};

/// Spectral decomposition H_noise = V diag(lambda) V^dagger.
struct NoiseEigensystem {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
};

NoiseEigensystem diagonalize_noise(const NoiseMatrix& noise);

double success_probability(const StateVector& psi, std::size_t marked);
double success_probability(const StateVector& psi, const ProblemInstance& instance, Space space);

/// Integrates i d(psi)/dt = H'(s(t)) psi over [0, T].
/// `initial` defaults to |+> (in the reduced basis when space == reduced). A precomputed
/// eigensystem for the attached noise may be supplied to skip the O(N^3) decomposition.
RunResult evolve(const HamiltonianSpec& spec, const Schedule& schedule, const IntegratorConfig& config,
                 Space space, const std::optional<StateVector>& initial = std::nullopt,
                 const NoiseEigensystem* noise_eigensystem = nullptr);

}  // namespace qaus
