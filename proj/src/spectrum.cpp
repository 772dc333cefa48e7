#include "qaus/spectrum.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace qaus {

namespace {

void check_args(double s, std::size_t dim) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::domain_error("interpolation parameter s must lie in [0, 1]");
    }
    if (dim < 2) {
        throw std::invalid_argument("Hilbert dimension must be at least 2");
    }
}

}  // namespace

double gap(double s, std::size_t dim) {
    check_args(s, dim);
    const double n = static_cast<double>(dim);
    const double lin = 1.0 - 2.0 * s;
    return std::sqrt(lin * lin + 4.0 / n * s * (1.0 - s));
}

MixingAngle mixing_angle(double s, std::size_t dim) {
    const double delta = gap(s, dim);
    const double inv_n = 1.0 / static_cast<double>(dim);
    const double c = (1.0 - 2.0 * (1.0 - s) * (1.0 - inv_n)) / delta;
    const double sn = 2.0 * (1.0 - s) * std::sqrt(inv_n) * std::sqrt(1.0 - inv_n) / delta;
    return {c, sn};
}

double half_angle_sin_squared(double s, std::size_t dim) {
    const auto [c, sn] = mixing_angle(s, dim);
    if (c > 0.0) {
        return sn * sn / (2.0 * (1.0 + c));
    }
    return 0.5 * (1.0 - c);
}

double ground_overlap_marked(double s, std::size_t dim) {
    const auto [c, sn] = mixing_angle(s, dim);
    if (c < 0.0) {
        return sn * sn / (2.0 * (1.0 - c));
    }
    return 0.5 * (1.0 + c);
}

SpectrumPoint spectrum_point(double s, std::size_t dim) {
    SpectrumPoint p;
    p.s = s;
    p.delta = gap(s, dim);
    const auto angle = mixing_angle(s, dim);
    p.cos_theta = angle.cos_theta;
    p.sin_theta = angle.sin_theta;
    p.e0 = 0.5 * (1.0 - p.delta);
    p.e1 = 0.5 * (1.0 + p.delta);
    return p;
}

SigmaZElements sigma_z_matrix_elements(double s, std::size_t dim) {
    const double half_sin = std::sqrt(half_angle_sin_squared(s, dim));
    const double n = static_cast<double>(dim);
    return {std::sqrt(2.0 / (n - 1.0)) * half_sin, std::sqrt(n - 2.0) / (n - 1.0) * half_sin, 0.0};
}

double shifted_gap_minimum(double chi, std::size_t dim) {
    if (!(chi > -1.0)) {
        throw std::invalid_argument("misspecification chi must exceed -1");
    }
    if (dim < 2) {
        throw std::invalid_argument("Hilbert dimension must be at least 2");
    }
    const double n = static_cast<double>(dim);
    const double numerator = n * (chi + 2.0) - 2.0 * (chi + 1.0);
    const double denominator = n * (chi + 2.0) * (chi + 2.0) - 4.0 * (chi + 1.0);
    if (!(denominator > 0.0)) {
        throw std::invalid_argument("no interior gap minimum for this chi and dimension");
    }
    return numerator / denominator;
}

Eigen::MatrixXd ExcitedBasis::all() const {
    Eigen::MatrixXd out(antisymmetric.rows(), antisymmetric.cols() + symmetric.cols());
    out << antisymmetric, symmetric;
    return out;
}

std::size_t pairing_index(std::size_t j, const ProblemInstance& instance) {
    const std::size_t lower = std::min(instance.marked(), instance.marked_complement());
    // m == N-1-m is impossible for even N.
    assert(instance.marked() != instance.marked_complement());
    return (j - 1 < lower) ? j - 1 : j;
}

ExcitedBasis build_excited_basis(const ProblemInstance& instance) {
    const std::size_t dim = instance.dim();
    const std::size_t half = dim / 2;
    const auto rows = static_cast<Eigen::Index>(dim);
    const auto pairs = static_cast<Eigen::Index>(half - 1);
    const double n = static_cast<double>(dim);

    ExcitedBasis basis;
    basis.antisymmetric = Eigen::MatrixXd::Zero(rows, pairs);
    basis.symmetric = Eigen::MatrixXd::Zero(rows, pairs);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 1; k < half; ++k) {
        const auto f = static_cast<Eigen::Index>(pairing_index(k, instance));
        const auto fbar = static_cast<Eigen::Index>(dim - 1) - f;
        const auto col = static_cast<Eigen::Index>(k - 1);
        basis.antisymmetric(f, col) = inv_sqrt2;
        basis.antisymmetric(fbar, col) = -inv_sqrt2;
    }

    // |eps'_2>: weight on the complement of m, balanced against all paired states.
    {
        auto col = basis.symmetric.col(0);
        const double norm = std::sqrt((n - 2.0) / (n - 1.0));
        col(static_cast<Eigen::Index>(instance.marked_complement())) = norm;
        for (std::size_t j = 1; j < half; ++j) {
            const auto f = static_cast<Eigen::Index>(pairing_index(j, instance));
            col(f) -= norm / (n - 2.0);
            col(static_cast<Eigen::Index>(dim - 1) - f) -= norm / (n - 2.0);
        }
    }

    for (std::size_t k = 2; k < half; ++k) {
        auto col = basis.symmetric.col(static_cast<Eigen::Index>(k - 1));
        const double kk = static_cast<double>(k);
        const double norm = std::sqrt(2.0 * (kk - 1.0) / kk);
        const auto fk = static_cast<Eigen::Index>(pairing_index(k, instance));
        col(fk) += 0.5 * norm;
        col(static_cast<Eigen::Index>(dim - 1) - fk) += 0.5 * norm;
        const double tail = norm / (2.0 * (kk - 1.0));
        for (std::size_t j = 1; j < k; ++j) {
            const auto f = static_cast<Eigen::Index>(pairing_index(j, instance));
            col(f) -= tail;
            col(static_cast<Eigen::Index>(dim - 1) - f) -= tail;
        }
    }
    return basis;
}

Eigen::MatrixXcd dense_hamiltonian(const HamiltonianSpec& spec, double s) {
    if (spec.instance.qubits() > kDenseOracleMaxQubits) {
        throw std::invalid_argument("dense oracle is limited to n <= 10");
    }
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::domain_error("interpolation parameter s must lie in [0, 1]");
    }
    const auto dim = static_cast<Eigen::Index>(spec.instance.dim());
    const auto m = static_cast<Eigen::Index>(spec.instance.marked());
    const double n = static_cast<double>(dim);

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(dim, dim) * ((1.0 - s) + s * (1.0 + spec.chi));
    h.array() -= Complex((1.0 - s) / n, 0.0);
    h(m, m) -= s * (1.0 + spec.chi);
    if (spec.noise) {
        h += spec.noise->elements;
    }
    return h;
}

DenseSpectrum dense_oracle(const HamiltonianSpec& spec, double s) {
    const Eigen::MatrixXcd h = dense_hamiltonian(spec, s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("dense diagonalization failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace qaus
