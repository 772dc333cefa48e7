#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qaus/problem.hpp"
#include "qaus/schedule.hpp"

namespace qaus {

/// Independent Ohmic sigma^z (dephasing) bath on every qubit.
struct BathParams {
    double beta = 1.0;  ///< inverse temperature
    double g = 0.1;     ///< system-bath coupling

    void validate() const;
};

/// Below this |Delta| the Ohmic rate takes its Delta -> 0 limit.
inline constexpr double kOhmicZeroThreshold = 1e-8;

/// gamma(Delta) = 2 pi g^2 Delta / (1 - exp(-beta Delta)).
double ohmic_gamma(double delta, const BathParams& bath);

/// Total rate from the instantaneous ground state to the N-2 states outside {|m>, |m_perp>}.
double excitation_rate(double s, const ProblemInstance& instance, const BathParams& bath);

/// Integral of the excitation rate over an exact-schedule anneal, evaluated in s via ds/dt = eps gap^2.
double expected_excitations(const ProblemInstance& instance, const BathParams& bath, const Schedule& schedule);

/// Ground-state weight of the Gibbs state of H(s).
double thermal_success(double s, std::size_t dim, double beta);

enum class BathPolicy {
    fixed_beta,        ///< beta and g held fixed
    beta_linear_in_n,  ///< beta = slope * n, g fixed
    g_scaled,          ///< g = g0 * N^{-1/4}, beta fixed
};

std::string to_string(BathPolicy policy);
BathPolicy parse_bath_policy(const std::string& text);

struct ThermalRow {
    int qubits = 0;
    std::size_t dim = 0;
    double beta = 0.0;
    double g = 0.0;
    BathPolicy policy = BathPolicy::fixed_beta;
    double epsilon = 0.0;
    double thermal_success_at_half = 0.0;
    double expected_excitations = 0.0;
};

struct ThermalReport {
    BathPolicy policy = BathPolicy::fixed_beta;
    std::vector<ThermalRow> rows;
    /// (N P)(n_last) / (N P)(n_last - 1) for the thermal success at s = 1/2.
    double final_scaled_success_ratio = 0.0;
    /// Whether that ratio is within 5% of one.
    bool scaled_success_converged = false;
};

/// Bath parameters a policy assigns to n qubits; `bath` holds the base values.
BathParams policy_bath(BathPolicy policy, int qubits, const BathParams& bath, double beta_slope);

inline constexpr double kDefaultBetaSlope = 1.3862943611198906;  // 2 ln 2

ThermalReport scaling_report(int n_min, int n_max, const BathParams& bath, BathPolicy policy,
                             double epsilon = 0.01, double beta_slope = kDefaultBetaSlope);

}  // namespace qaus
