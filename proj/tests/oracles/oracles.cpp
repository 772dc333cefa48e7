#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qaus/dynamics.hpp"
#include "qaus/schedule.hpp"
#include "qaus/spectrum.hpp"
#include "qaus/thermal.hpp"

namespace qaus::oracle {

Eigen::MatrixXd hamiltonian(int qubits, std::size_t marked, double s, double chi) {
    const auto dim = Eigen::Index{1} << qubits;
    const Eigen::VectorXd plus = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    Eigen::VectorXd m = Eigen::VectorXd::Zero(dim);
    m(static_cast<Eigen::Index>(marked)) = 1.0;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
    return (1.0 - s) * (id - plus * plus.transpose()) + s * (1.0 + chi) * (id - m * m.transpose());
}

Eigensystem diagonalize(const Eigen::MatrixXd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd sigma_z_diagonal(int qubits, int qubit) {
    const auto dim = Eigen::Index{1} << qubits;
    Eigen::VectorXd z(dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        const bool bit = (x >> (qubits - 1 - qubit)) & 1;
        z(x) = bit ? -1.0 : 1.0;
    }
    return z;
}

ExcitedVectors excited_vectors(int qubits, std::size_t marked) {
    const std::size_t dim = std::size_t{1} << qubits;
    const std::size_t complement = (~marked) & (dim - 1);
    const std::size_t skipped = std::min(marked, complement);
    // f(1), f(2), ...: the lower half of the index range with min(m, mbar) removed.
    std::vector<std::size_t> f;
    for (std::size_t x = 0; x < dim / 2; ++x) {
        if (x != skipped) {
            f.push_back(x);
        }
    }
    auto bar = [&](std::size_t x) { return (~x) & (dim - 1); };
    auto ket = [&](std::size_t x) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
        v(static_cast<Eigen::Index>(x)) = 1.0;
        return v;
    };
    const double n = static_cast<double>(dim);

    ExcitedVectors out;
    for (std::size_t k = 1; k <= dim / 2 - 1; ++k) {
        out.antisymmetric.push_back((ket(f[k - 1]) - ket(bar(f[k - 1]))) / std::sqrt(2.0));
    }
    {
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
        for (std::size_t j = 1; j <= dim / 2 - 1; ++j) {
            sum += ket(f[j - 1]) + ket(bar(f[j - 1]));
        }
        out.symmetric.push_back(std::sqrt((n - 2.0) / (n - 1.0)) * (ket(complement) - sum / (n - 2.0)));
    }
    for (std::size_t k = 2; k <= dim / 2 - 1; ++k) {
        const double kk = static_cast<double>(k);
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
        for (std::size_t j = 1; j <= k - 1; ++j) {
            sum += ket(f[j - 1]) + ket(bar(f[j - 1]));
        }
        out.symmetric.push_back(std::sqrt(2.0 * (kk - 1.0) / kk) *
                                (0.5 * (ket(f[k - 1]) + ket(bar(f[k - 1]))) - sum / (2.0 * (kk - 1.0))));
    }
    return out;
}

BruteSigmaZ sigma_z_elements(int qubits, std::size_t marked, double s, int qubit) {
    const Eigensystem eig = diagonalize(hamiltonian(qubits, marked, s));
    const Eigen::VectorXd ground = eig.vectors.col(0);
    const Eigen::VectorXd z_ground = sigma_z_diagonal(qubits, qubit).cwiseProduct(ground);
    const ExcitedVectors basis = excited_vectors(qubits, marked);

    BruteSigmaZ out;
    for (const auto& v : basis.antisymmetric) {
        out.antisymmetric.push_back(std::abs(v.dot(z_ground)));
    }
    for (const auto& v : basis.symmetric) {
        out.symmetric.push_back(std::abs(v.dot(z_ground)));
    }
    for (Eigen::Index i = 2; i < eig.values.size(); ++i) {
        const double overlap = eig.vectors.col(i).dot(z_ground);
        out.manifold_weight += overlap * overlap;
    }
    return out;
}

double excitation_rate(int qubits, std::size_t marked, double s, double beta, double g) {
    const Eigensystem eig = diagonalize(hamiltonian(qubits, marked, s));
    const Eigen::VectorXd ground = eig.vectors.col(0);
    double total = 0.0;
    for (int alpha = 0; alpha < qubits; ++alpha) {
        const Eigen::VectorXd z_ground = sigma_z_diagonal(qubits, alpha).cwiseProduct(ground);
        for (Eigen::Index i = 2; i < eig.values.size(); ++i) {
            const double delta = eig.values(i) - eig.values(0);
            const double gamma = 2.0 * std::numbers::pi * g * g * delta / (1.0 - std::exp(-beta * delta));
            const double overlap = eig.vectors.col(i).dot(z_ground);
            total += gamma * std::exp(-beta * delta) * overlap * overlap;
        }
    }
    return total;
}

double dense_gap(int qubits, std::size_t marked, double s, double chi) {
    const Eigensystem eig = diagonalize(hamiltonian(qubits, marked, s, chi));
    return eig.values(1) - eig.values(0);
}

double integrated_runtime(std::size_t dim, double epsilon, int intervals) {
    const double n = static_cast<double>(dim);
    auto rate = [&](double s) {
        const double gap_squared = (1.0 - 2.0 * s) * (1.0 - 2.0 * s) + 4.0 * s * (1.0 - s) / n;
        return 1.0 / (epsilon * gap_squared);
    };
    const int panels = intervals + (intervals % 2);
    const double h = 1.0 / panels;
    double sum = rate(0.0) + rate(1.0);
    for (int i = 1; i < panels; ++i) {
        sum += (i % 2 == 1 ? 4.0 : 2.0) * rate(i * h);
    }
    return sum * h / 3.0;
}

namespace {

std::string describe(double worst, double tolerance) {
    std::ostringstream out;
    out.precision(3);
    out << "max deviation " << worst << " (tolerance " << tolerance << ")";
    return out.str();
}

std::vector<double> random_s(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(0.01, 0.99);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (auto& s : out) {
        s = pick(rng);
    }
    return out;
}

std::size_t random_marked(std::mt19937_64& rng, std::size_t dim) {
    std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
    return pick(rng);
}

Check spectrum_check() {
    constexpr double kTol = 1e-10;
    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        for (double s : random_s(100 + n, 20)) {
            const Eigensystem eig = diagonalize(hamiltonian(n, random_marked(rng, dim), s));
            const double d = gap(s, dim);
            Eigen::VectorXd expected = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(dim));
            expected(0) = 0.5 * (1.0 - d);
            expected(1) = 0.5 * (1.0 + d);
            worst = std::max(worst, (eig.values - expected).cwiseAbs().maxCoeff());
        }
    }
    return {"closed-form spectrum vs dense diagonalization (n=2..6, 20 s each)", worst <= kTol,
            describe(worst, kTol)};
}

Check sigma_z_check() {
    constexpr double kTol = 1e-10;
    std::mt19937_64 rng(12);
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        for (double s : random_s(200 + n, 20)) {
            const std::size_t marked = random_marked(rng, dim);
            const qaus::SigmaZElements expected = qaus::sigma_z_matrix_elements(s, dim);
            const double manifold = (static_cast<double>(dim) / 2.0 - 1.0) * expected.antisymmetric *
                                        expected.antisymmetric +
                                    expected.first_symmetric * expected.first_symmetric;
            for (int qubit = 0; qubit < n; ++qubit) {
                const auto brute = sigma_z_elements(n, marked, s, qubit);
                for (double a : brute.antisymmetric) {
                    worst = std::max(worst, std::abs(a - expected.antisymmetric));
                }
                worst = std::max(worst, std::abs(brute.symmetric.front() - expected.first_symmetric));
                for (std::size_t k = 1; k < brute.symmetric.size(); ++k) {
                    worst = std::max(worst, std::abs(brute.symmetric[k] - expected.other_symmetric));
                }
                worst = std::max(worst, std::abs(brute.manifold_weight - manifold));
            }
        }
    }
    return {"sigma^z matrix elements vs brute force, every qubit (n=2..6, 20 s each)", worst <= kTol,
            describe(worst, kTol)};
}

Check schedule_check() {
    bool endpoints = true;
    double worst_fd = 0.0;
    double worst_runtime = 0.0;
    for (int n : {2, 4, 8, 12, 16, 20}) {
        const std::size_t dim = std::size_t{1} << n;
        const ScheduleParams params = make_schedule_params(dim, 0.01);
        const double t_total = params.total_time;
        endpoints = endpoints && s_exact(0.0, params) == 0.0 && s_exact(0.5 * t_total, params) == 0.5 &&
                    s_exact(t_total, params) == 1.0;
        for (int i = 1; i < 40; ++i) {
            const double t = t_total * i / 40.0;
            const double d = gap(s_exact(t, params), dim);
            // Step on the local time scale 1/(eps gap): truncation ~ (h eps gap)^2, roundoff ~ 1e-16/(h eps gap^2).
            const double h = 1e-4 / (0.01 * d);
            const double fd = (s_exact(t + h, params) - s_exact(t - h, params)) / (2.0 * h);
            const double analytic = 0.01 * d * d;
            worst_fd = std::max(worst_fd, std::abs(fd - analytic) / analytic);
        }
        const double integrated = integrated_runtime(dim, 0.01);
        worst_runtime = std::max(worst_runtime, std::abs(integrated - t_total) / t_total);
    }
    const bool passed = endpoints && worst_fd <= 1e-6 && worst_runtime <= 1e-3;
    std::ostringstream detail;
    detail.precision(3);
    detail << "endpoints exact: " << (endpoints ? "yes" : "no") << "; finite-difference rel. error " << worst_fd
           << " (tolerance 1e-06); integrated runtime rel. error " << worst_runtime << " (tolerance 0.001)";
    return {"schedule identities: s(0), s(T/2), s(T), ds/dt, integrated runtime", passed, detail.str()};
}

Check rate_check() {
    constexpr double kTol = 1e-8;
    std::mt19937_64 rng(13);
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        for (double s : random_s(300 + n, 20)) {
            for (const BathParams bath : {BathParams{1.0, 0.1}, BathParams{3.0, 0.05}}) {
                const std::size_t marked = random_marked(rng, dim);
                const double closed = qaus::excitation_rate(s, ProblemInstance(n, marked), bath);
                const double brute = excitation_rate(n, marked, s, bath.beta, bath.g);
                worst = std::max(worst, std::abs(closed - brute) / brute);
            }
        }
    }
    return {"excitation rate vs brute-force sum over dense eigenstates (n=2..6, 20 s each)", worst <= kTol,
            describe(worst, kTol)};
}

Check reduced_full_check() {
    constexpr double kTol = 1e-6;
    IntegratorConfig config;
    double worst = 0.0;
    for (int n = 4; n <= 8; ++n) {
        const ProblemInstance instance(n, static_cast<std::size_t>(n) * 3 % (std::size_t{1} << n));
        const Schedule schedule = Schedule::exact(make_schedule_params(instance.dim(), 0.01));
        const auto reduced = evolve(HamiltonianSpec(instance), schedule, config, Space::reduced);
        const auto full = evolve(HamiltonianSpec(instance), schedule, config, Space::full);
        worst = std::max(worst, std::abs(reduced.success_probability - full.success_probability));
    }
    return {"reduced vs full space success probability (n=4..8, exact schedule)", worst <= kTol,
            describe(worst, kTol)};
}

Check propagator_check() {
    constexpr double kTol = 1e-6;
    IntegratorConfig config;
    config.step.rel_tol = 1e-12;
    config.step.abs_tol = 1e-14;
    double worst = 0.0;
    for (int n : {4, 6}) {
        const std::size_t dim = std::size_t{1} << n;
        const ScheduleParams params = make_schedule_params(dim, 0.01);
        for (int k : {0, 1, 3}) {
            const Schedule schedule = k == 0 ? Schedule::exact(params) : Schedule::piecewise(k, params);
            for (double chi : {0.0, 0.1}) {
                const auto run = evolve(HamiltonianSpec(ProblemInstance(n, 1), chi), schedule, config, Space::reduced);
                // A multiple of 12 puts every knot of k <= 4 on a step boundary.
                const int steps = 12 * static_cast<int>(std::ceil(params.total_time / 0.12));
                const double reference = reduced_exponential_success(
                    dim, chi, [&](double t) { return schedule.value(t); }, params.total_time, steps);
                worst = std::max(worst, std::abs(run.success_probability - reference));
            }
        }
    }
    return {"adaptive integrator vs exponential midpoint propagator (n=4,6; exact, k=1, k=3; chi=0, 0.1)",
            worst <= kTol, describe(worst, kTol)};
}

}  // namespace

std::vector<Check> quick_suite() {
    return {spectrum_check(), sigma_z_check(), schedule_check(), rate_check(), reduced_full_check(),
            propagator_check()};
}

}  // namespace qaus::oracle
