#include "qaus/dynamics.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace qaus {

namespace {

constexpr Complex kMinusI(0.0, -1.0);

template <class Vec, class Rhs>
StepStats propagate(Rhs&& rhs, Vec& y, const Schedule& schedule, const IntegratorConfig& config) {
    const auto times = schedule.breakpoints();
    double step = config.step.initial_step;
    StepStats stats;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        rkf45_integrate(rhs, y, times[i], times[i + 1], config.step, step, stats);
        if (!stats.ok()) {
            break;
        }
    }
    return stats;
}

StepStats propagate_reduced(const HamiltonianSpec& spec, const Schedule& schedule,
                            const IntegratorConfig& config, StateVector& y) {
    const double inv_n = 1.0 / static_cast<double>(spec.instance.dim());
    const double v0 = std::sqrt(inv_n);
    const double v1 = std::sqrt(1.0 - inv_n);
    const double offset = config.energy_offset;
    const double scale = 1.0 + spec.chi;
    auto rhs = [&](double t, const StateVector& psi, StateVector& out) {
        const double s = schedule.value(t);
        const double driver = 1.0 - s;
        const double h00 = driver * (1.0 - v0 * v0) - offset;
        const double h01 = -driver * v0 * v1;
        const double h11 = driver * (1.0 - v1 * v1) + s * scale - offset;
        out(0) = kMinusI * (h00 * psi(0) + h01 * psi(1));
        out(1) = kMinusI * (h01 * psi(0) + h11 * psi(1));
    };
    return propagate(rhs, y, schedule, config);
}

StepStats propagate_full(const HamiltonianSpec& spec, const Schedule& schedule, const IntegratorConfig& config,
                         StateVector& y) {
    const auto m = static_cast<Eigen::Index>(spec.instance.marked());
    const double inv_n = 1.0 / static_cast<double>(spec.instance.dim());
    const double offset = config.energy_offset;
    const double scale = 1.0 + spec.chi;
    const Eigen::MatrixXcd* noise = spec.noise ? &spec.noise->elements : nullptr;
    auto rhs = [&](double t, const StateVector& psi, StateVector& out) {
        const double s = schedule.value(t);
        const double driver = 1.0 - s;
        const double problem = s * scale;
        const Complex mean = psi.sum() * inv_n;
        if (noise) {
            out.noalias() = *noise * psi;
            out += (driver + problem - offset) * psi;
        } else {
            out = (driver + problem - offset) * psi;
        }
        out.array() -= driver * mean;
        out(m) -= problem * psi(m);
        out *= kMinusI;
    };
    return propagate(rhs, y, schedule, config);
}

/// Propagation in the eigenbasis of the noise: H'(s) - c = diag(a(s) + lambda - c)
/// - (1-s) |p><p| - s(1+chi) |mu><mu| with p = V^dagger |+>, mu = V^dagger |m>.
StepStats propagate_complex_eigenbasis(const HamiltonianSpec& spec, const Schedule& schedule,
                                       const IntegratorConfig& config, const NoiseEigensystem& eig,
                                       StateVector& y) {
    const auto m = static_cast<Eigen::Index>(spec.instance.marked());
    const StateVector p = eig.eigenvectors.adjoint() * make_plus_state(spec.instance);
    const StateVector mu = eig.eigenvectors.row(m).adjoint();
    const Eigen::ArrayXd diag = eig.eigenvalues.array() - config.energy_offset;
    const double scale = 1.0 + spec.chi;
    auto rhs = [&](double t, const StateVector& phi, StateVector& out) {
        const double s = schedule.value(t);
        const double driver = 1.0 - s;
        const double problem = s * scale;
        const Complex on_plus = driver * p.dot(phi);
        const Complex on_marked = problem * mu.dot(phi);
        out.array() = (diag + (driver + problem)) * phi.array() - on_plus * p.array() - on_marked * mu.array();
        out *= kMinusI;
    };
    return propagate(rhs, y, schedule, config);
}

/// Real eigenvectors: H'(s) - c is a real matrix A, so with psi = x + i z the equation
/// splits into dx/dt = A z, dz/dt = -A x. State is stored planar as [x; z].
StepStats propagate_real_eigenbasis(const HamiltonianSpec& spec, const Schedule& schedule,
                                    const IntegratorConfig& config, const NoiseEigensystem& eig,
                                    StateVector& y) {
    const auto m = static_cast<Eigen::Index>(spec.instance.marked());
    const Eigen::Index dim = y.size();
    const Eigen::MatrixXd v = eig.eigenvectors.real();
    const Eigen::VectorXd p = v.transpose() * make_plus_state(spec.instance).real();
    const Eigen::VectorXd mu = v.row(m).transpose();
    const Eigen::ArrayXd diag = eig.eigenvalues.array() - config.energy_offset;
    const double scale = 1.0 + spec.chi;

    auto rhs = [&](double t, const Eigen::VectorXd& state, Eigen::VectorXd& out) {
        const double s = schedule.value(t);
        const double driver = 1.0 - s;
        const double problem = s * scale;
        const auto re = state.head(dim);
        const auto im = state.tail(dim);
        const double plus_re = driver * p.dot(re);
        const double plus_im = driver * p.dot(im);
        const double marked_re = problem * mu.dot(re);
        const double marked_im = problem * mu.dot(im);
        const auto d = diag + (driver + problem);
        out.head(dim).array() = d * im.array() - plus_im * p.array() - marked_im * mu.array();
        out.tail(dim).array() = -(d * re.array()) + plus_re * p.array() + marked_re * mu.array();
    };

    const StateVector phi = eig.eigenvectors.adjoint() * y;
    Eigen::VectorXd planar(2 * dim);
    planar << phi.real(), phi.imag();
    const StepStats stats = propagate(rhs, planar, schedule, config);
    StateVector back(dim);
    back.real() = planar.head(dim);
    back.imag() = planar.tail(dim);
    y = eig.eigenvectors * back;
    return stats;
}

StepStats propagate_noise_eigenbasis(const HamiltonianSpec& spec, const Schedule& schedule,
                                     const IntegratorConfig& config, const NoiseEigensystem& eig,
                                     StateVector& y) {
    if (eig.eigenvectors.imag().isZero(0.0)) {
        return propagate_real_eigenbasis(spec, schedule, config, eig, y);
    }
    y = eig.eigenvectors.adjoint() * y;
    const StepStats stats = propagate_complex_eigenbasis(spec, schedule, config, eig, y);
    y = eig.eigenvectors * y;
    return stats;
}

}  // namespace

void IntegratorConfig::validate() const {
    step.validate();
    if (!(norm_drift_ceiling > 0.0)) {
        throw std::invalid_argument("norm drift ceiling must be positive");
    }
}

std::string to_string(RunStatus status) {
    switch (status) {
        case RunStatus::ok:
            return "ok";
        case RunStatus::norm_drift_exceeded:
            return "norm_drift_exceeded";
        case RunStatus::step_underflow:
            return "step_underflow";
        case RunStatus::step_limit:
            return "step_limit";
    }
    return "unknown";
}

NoiseEigensystem diagonalize_noise(const NoiseMatrix& noise) {
    NoiseEigensystem out;
    if (noise.kind == NoiseKind::real_symmetric) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(noise.elements.real());
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("noise diagonalization failed");
        }
        out.eigenvalues = solver.eigenvalues();
        out.eigenvectors = solver.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(noise.elements);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("noise diagonalization failed");
        }
        out.eigenvalues = solver.eigenvalues();
        out.eigenvectors = solver.eigenvectors();
    }
    return out;
}

double success_probability(const StateVector& psi, std::size_t marked) {
    if (marked >= static_cast<std::size_t>(psi.size())) {
        throw std::invalid_argument("marked index outside the state dimension");
    }
    return std::norm(psi(static_cast<Eigen::Index>(marked)));
}

double success_probability(const StateVector& psi, const ProblemInstance& instance, Space space) {
    return success_probability(psi, space == Space::reduced ? 0 : instance.marked());
}

RunResult evolve(const HamiltonianSpec& spec, const Schedule& schedule, const IntegratorConfig& config,
                 Space space, const std::optional<StateVector>& initial,
                 const NoiseEigensystem* noise_eigensystem) {
    config.validate();
    const ProblemInstance& inst = spec.instance;
    if (schedule.params().dim != inst.dim()) {
        throw std::invalid_argument("schedule dimension does not match the problem instance");
    }
    if (space == Space::reduced && spec.has_noise()) {
        throw std::invalid_argument("reduced-space evolution cannot carry a noise Hamiltonian");
    }

    const auto start = std::chrono::steady_clock::now();
    StateVector psi;
    if (initial) {
        psi = *initial;
    } else {
        psi = space == Space::reduced ? StateVector(reduced_plus_state(inst.dim())) : make_plus_state(inst);
    }
    const auto expected_dim = static_cast<Eigen::Index>(space == Space::reduced ? 2 : inst.dim());
    if (psi.size() != expected_dim) {
        throw std::invalid_argument("initial state has the wrong dimension");
    }
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) {
        throw std::invalid_argument("initial state must have unit norm");
    }

    StepStats stats;
    if (space == Space::reduced) {
        stats = propagate_reduced(spec, schedule, config, psi);
    } else if (spec.has_noise() && config.noise_route == NoiseRoute::eigenbasis) {
        if (noise_eigensystem) {
            if (noise_eigensystem->eigenvalues.size() != psi.size()) {
                throw std::invalid_argument("noise eigensystem dimension mismatch");
            }
            stats = propagate_noise_eigenbasis(spec, schedule, config, *noise_eigensystem, psi);
        } else {
            const NoiseEigensystem eig = diagonalize_noise(*spec.noise);
            stats = propagate_noise_eigenbasis(spec, schedule, config, eig, psi);
        }
    } else {
        stats = propagate_full(spec, schedule, config, psi);
    }

    RunResult result;
    result.accepted_steps = stats.accepted;
    result.rejected_steps = stats.rejected;
    result.norm_drift = std::abs(psi.squaredNorm() - 1.0);
    result.success_probability = success_probability(psi, inst, space);
    if (stats.underflow) {
        result.status = RunStatus::step_underflow;
    } else if (stats.step_limit) {
        result.status = RunStatus::step_limit;
    } else if (!(result.norm_drift <= config.norm_drift_ceiling)) {
        result.status = RunStatus::norm_drift_exceeded;
    }
    result.qubits = inst.qubits();
    result.dim = inst.dim();
    result.marked = inst.marked();
    result.epsilon = schedule.params().epsilon;
    result.chi = spec.chi;
    if (spec.noise) {
        result.sigma = spec.noise->sigma;
        result.seed = spec.noise->seed;
    }
    result.schedule = schedule.label();
    result.space = space;
    result.final_state = std::move(psi);
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace qaus
