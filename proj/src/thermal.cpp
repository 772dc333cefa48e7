#include "qaus/thermal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qaus/spectrum.hpp"

namespace qaus {

void BathParams::validate() const {
    if (!(beta >= 0.0) || !(g >= 0.0)) {
        throw std::invalid_argument("bath parameters beta and g must be nonnegative");
    }
}

double ohmic_gamma(double delta, const BathParams& bath) {
    bath.validate();
    const double prefactor = 2.0 * std::numbers::pi * bath.g * bath.g;
    if (std::abs(delta) < kOhmicZeroThreshold) {
        if (bath.beta == 0.0) {
            throw std::domain_error("Ohmic rate is undefined at beta = 0 and Delta = 0");
        }
        return prefactor / bath.beta;
    }
    if (bath.beta == 0.0) {
        throw std::domain_error("Ohmic rate diverges at infinite temperature");
    }
    return prefactor * delta / -std::expm1(-bath.beta * delta);
}

double excitation_rate(double s, const ProblemInstance& instance, const BathParams& bath) {
    const std::size_t dim = instance.dim();
    const double delta = gap(s, dim);
    const double excitation = 0.5 * (1.0 + delta);
    const auto elements = sigma_z_matrix_elements(s, dim);
    const double n = static_cast<double>(dim);
    const double weight = (n / 2.0 - 1.0) * elements.antisymmetric * elements.antisymmetric +
                          elements.first_symmetric * elements.first_symmetric;
    return instance.qubits() * ohmic_gamma(excitation, bath) * std::exp(-bath.beta * excitation) * weight;
}

double expected_excitations(const ProblemInstance& instance, const BathParams& bath, const Schedule& schedule) {
    if (schedule.kind() != ScheduleKind::exact) {
        throw std::invalid_argument("expected excitations require the exact schedule");
    }
    if (schedule.params().dim != instance.dim()) {
        throw std::invalid_argument("schedule dimension does not match the problem instance");
    }
    if (bath.g == 0.0) {
        return 0.0;
    }
    const double epsilon = schedule.params().epsilon;
    const std::size_t dim = instance.dim();
    auto integrand = [&](double s) {
        const double delta = gap(s, dim);
        return excitation_rate(s, instance, bath) / (epsilon * delta * delta);
    };

    using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
    constexpr double kTolerance = 1e-8;
    constexpr unsigned kMaxDepth = 30;
    double total = 0.0;
    // 1/gap^2 peaks at s = 1/2; integrate each half separately.
    for (const auto& [lo, hi] : {std::pair{0.0, 0.5}, std::pair{0.5, 1.0}}) {
        double error = 0.0;
        const double part = Quadrature::integrate(integrand, lo, hi, kMaxDepth, kTolerance, &error);
        if (!std::isfinite(part) || error > 10.0 * kTolerance * std::abs(part) + 1e-300) {
            throw std::runtime_error("excitation quadrature did not converge");
        }
        total += part;
    }
    return total;
}

double thermal_success(double s, std::size_t dim, double beta) {
    if (!(beta >= 0.0)) {
        throw std::invalid_argument("inverse temperature must be nonnegative");
    }
    const double delta = gap(s, dim);
    const double n = static_cast<double>(dim);
    return 1.0 / (1.0 + std::exp(-beta * delta) + (n - 2.0) * std::exp(-beta * (1.0 + delta) / 2.0));
}

std::string to_string(BathPolicy policy) {
    switch (policy) {
        case BathPolicy::fixed_beta:
            return "fixed_beta";
        case BathPolicy::beta_linear_in_n:
            return "beta_linear_in_n";
        case BathPolicy::g_scaled:
            return "g_scaled";
    }
    return "unknown";
}

BathPolicy parse_bath_policy(const std::string& text) {
    for (auto p : {BathPolicy::fixed_beta, BathPolicy::beta_linear_in_n, BathPolicy::g_scaled}) {
        if (to_string(p) == text) {
            return p;
        }
    }
    throw std::invalid_argument("unknown bath policy '" + text + "'");
}

BathParams policy_bath(BathPolicy policy, int qubits, const BathParams& bath, double beta_slope) {
    BathParams out = bath;
    switch (policy) {
        case BathPolicy::fixed_beta:
            break;
        case BathPolicy::beta_linear_in_n:
            out.beta = beta_slope * qubits;
            break;
        case BathPolicy::g_scaled:
            out.g = bath.g * std::pow(2.0, -0.25 * qubits);
            break;
    }
    out.validate();
    return out;
}

ThermalReport scaling_report(int n_min, int n_max, const BathParams& bath, BathPolicy policy, double epsilon,
                             double beta_slope) {
    if (n_min < 2 || n_max < n_min) {
        throw std::invalid_argument("thermal report needs 2 <= n_min <= n_max");
    }
    bath.validate();
    ThermalReport report;
    report.policy = policy;
    for (int n = n_min; n <= n_max; ++n) {
        const ProblemInstance instance(n, 0);
        const BathParams local = policy_bath(policy, n, bath, beta_slope);
        const Schedule schedule = Schedule::exact(make_schedule_params(instance.dim(), epsilon));
        ThermalRow row;
        row.qubits = n;
        row.dim = instance.dim();
        row.beta = local.beta;
        row.g = local.g;
        row.policy = policy;
        row.epsilon = epsilon;
        row.thermal_success_at_half = thermal_success(0.5, instance.dim(), local.beta);
        row.expected_excitations = expected_excitations(instance, local, schedule);
        report.rows.push_back(row);
    }
    if (report.rows.size() >= 2) {
        const auto& last = report.rows.back();
        const auto& prev = report.rows[report.rows.size() - 2];
        const double scaled_last = static_cast<double>(last.dim) * last.thermal_success_at_half;
        const double scaled_prev = static_cast<double>(prev.dim) * prev.thermal_success_at_half;
        report.final_scaled_success_ratio = scaled_last / scaled_prev;
        report.scaled_success_converged = std::abs(report.final_scaled_success_ratio - 1.0) <= 0.05;
    }
    return report;
}

}  // namespace qaus
