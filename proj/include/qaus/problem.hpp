#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>

#include <Eigen/Dense>

namespace qaus {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;

/// Unstructured search over N = 2^n basis states with one marked index.
class ProblemInstance {
public:
    ProblemInstance(int qubits, std::size_t marked);

    int qubits() const { return qubits_; }
    std::size_t dim() const { return dim_; }
    std::size_t marked() const { return marked_; }
    /// Index of the bitwise complement of the marked state, N - 1 - m.
    std::size_t marked_complement() const { return dim_ - 1 - marked_; }

    static constexpr int kMaxQubits = 30;

private:
    int qubits_;
    std::size_t dim_;
    std::size_t marked_;
};

enum class NoiseKind { real_symmetric, complex_hermitian };

/// Static noise Hamiltonian in the computational basis.
struct NoiseMatrix {
    Eigen::MatrixXcd elements;
    std::uint64_t seed = 0;
    double sigma = 0.0;
    NoiseKind kind = NoiseKind::real_symmetric;
};

/// H'(s) = (1-s) H_b + s (1+chi) H_p + H_noise with H_b = 1 - |+><+|, H_p = 1 - |m><m|.
struct HamiltonianSpec {
    ProblemInstance instance;
    double chi = 0.0;
    std::shared_ptr<const NoiseMatrix> noise;

    explicit HamiltonianSpec(ProblemInstance inst, double chi_value = 0.0,
                             std::shared_ptr<const NoiseMatrix> noise_matrix = nullptr);

    bool has_noise() const { return static_cast<bool>(noise); }
};

StateVector make_plus_state(std::size_t dim);
StateVector make_plus_state(const ProblemInstance& instance);
StateVector make_basis_state(std::size_t dim, std::size_t index);
/// |m_perp> = (N-1)^{-1/2} sum_{i != m} |i>.
StateVector make_marked_perp_state(const ProblemInstance& instance);

/// H'(s) psi, with the projector terms applied in O(N) and any attached noise densely.
StateVector apply_hamiltonian(const HamiltonianSpec& spec, double s, const StateVector& psi);

/// H'(s) restricted to the ordered basis {|m>, |m_perp>}. Invalid when noise is attached.
Eigen::Matrix2d reduced_hamiltonian(const HamiltonianSpec& spec, double s);

/// Components (<m|psi>, <m_perp|psi>).
Eigen::Vector2cd project_to_reduced(const ProblemInstance& instance, const StateVector& psi);
StateVector embed_reduced(const ProblemInstance& instance, const Eigen::Vector2cd& reduced);

/// |+> expressed in the reduced basis: (1/sqrt(N), sqrt(1 - 1/N)).
Eigen::Vector2cd reduced_plus_state(std::size_t dim);

}  // namespace qaus
