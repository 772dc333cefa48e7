#include "qaus/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qaus {

ProblemInstance::ProblemInstance(int qubits, std::size_t marked) : qubits_(qubits), marked_(marked) {
    if (qubits < 2 || qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [2, " + std::to_string(kMaxQubits) +
                                    "], got " + std::to_string(qubits));
    }
    dim_ = std::size_t{1} << qubits;
    if (marked >= dim_) {
        throw std::invalid_argument("marked index " + std::to_string(marked) + " outside [0, " +
                                    std::to_string(dim_ - 1) + "]");
    }
}

HamiltonianSpec::HamiltonianSpec(ProblemInstance inst, double chi_value,
                                 std::shared_ptr<const NoiseMatrix> noise_matrix)
    : instance(inst), chi(chi_value), noise(std::move(noise_matrix)) {
    if (!(chi > -1.0)) {
        throw std::invalid_argument("misspecification chi must exceed -1");
    }
    if (noise) {
        const auto n = static_cast<Eigen::Index>(instance.dim());
        if (noise->elements.rows() != n || noise->elements.cols() != n) {
            throw std::invalid_argument("noise matrix dimension does not match the instance");
        }
    }
}

StateVector make_plus_state(std::size_t dim) {
    if (dim == 0) {
        throw std::invalid_argument("state dimension must be positive");
    }
    return StateVector::Constant(static_cast<Eigen::Index>(dim),
                                 Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

StateVector make_plus_state(const ProblemInstance& instance) { return make_plus_state(instance.dim()); }

StateVector make_basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::invalid_argument("basis index outside the state dimension");
    }
    StateVector v = StateVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return v;
}

StateVector make_marked_perp_state(const ProblemInstance& instance) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(instance.dim() - 1));
    StateVector v = StateVector::Constant(static_cast<Eigen::Index>(instance.dim()), Complex(amp, 0.0));
    v(static_cast<Eigen::Index>(instance.marked())) = 0.0;
    return v;
}

StateVector apply_hamiltonian(const HamiltonianSpec& spec, double s, const StateVector& psi) {
    const auto dim = static_cast<Eigen::Index>(spec.instance.dim());
    if (psi.size() != dim) {
        throw std::invalid_argument("state dimension " + std::to_string(psi.size()) +
                                    " does not match Hilbert dimension " + std::to_string(dim));
    }
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::domain_error("interpolation parameter s must lie in [0, 1]");
    }
    const auto m = static_cast<Eigen::Index>(spec.instance.marked());
    const double driver = 1.0 - s;
    const double problem = s * (1.0 + spec.chi);

    // |+><+|psi> has every component equal to sum(psi) / N.
    const Complex plus_component = psi.sum() / static_cast<double>(dim);

    StateVector out = (driver + problem) * psi;
    out.array() -= driver * plus_component;
    out(m) -= problem * psi(m);
    if (spec.noise) {
        out.noalias() += spec.noise->elements * psi;
    }
    return out;
}

Eigen::Matrix2d reduced_hamiltonian(const HamiltonianSpec& spec, double s) {
    if (spec.has_noise()) {
        throw std::logic_error("noise breaks the {|m>, |m_perp>} subspace; no reduced Hamiltonian exists");
    }
    const double inv_n = 1.0 / static_cast<double>(spec.instance.dim());
    const Eigen::Vector2d v(std::sqrt(inv_n), std::sqrt(1.0 - inv_n));
    Eigen::Matrix2d h = (1.0 - s) * (Eigen::Matrix2d::Identity() - v * v.transpose());
    h(1, 1) += s * (1.0 + spec.chi);
    return h;
}

Eigen::Vector2cd project_to_reduced(const ProblemInstance& instance, const StateVector& psi) {
    const auto m = static_cast<Eigen::Index>(instance.marked());
    const double amp = 1.0 / std::sqrt(static_cast<double>(instance.dim() - 1));
    return {psi(m), (psi.sum() - psi(m)) * amp};
}

StateVector embed_reduced(const ProblemInstance& instance, const Eigen::Vector2cd& reduced) {
    StateVector v = make_marked_perp_state(instance) * reduced(1);
    v(static_cast<Eigen::Index>(instance.marked())) = reduced(0);
    return v;
}

Eigen::Vector2cd reduced_plus_state(std::size_t dim) {
    const double inv_n = 1.0 / static_cast<double>(dim);
    return {Complex(std::sqrt(inv_n), 0.0), Complex(std::sqrt(1.0 - inv_n), 0.0)};
}

}  // namespace qaus
