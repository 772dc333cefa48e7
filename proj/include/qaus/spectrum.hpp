#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "qaus/problem.hpp"

namespace qaus {

/// Closed-form data for the two lowest levels of the unperturbed interpolation.
struct SpectrumPoint {
    double s = 0.0;
    double delta = 1.0;
    double cos_theta = 0.0;
    double sin_theta = 0.0;
    double e0 = 0.0;
    double e1 = 1.0;
};

struct MixingAngle {
    double cos_theta;
    double sin_theta;
};

/// |<eps_0|sigma^z_i|.>| for the three classes of energy-1 eigenstates.
struct SigmaZElements {
    double antisymmetric;  ///< to each |eps_{k+1}>, 1 <= k <= N/2 - 1
    double first_symmetric;  ///< to |eps'_2>
    double other_symmetric;  ///< to |eps'_{k+1}>, k >= 2 (identically zero)
};

double gap(double s, std::size_t dim);
MixingAngle mixing_angle(double s, std::size_t dim);
/// sin^2(theta/2), evaluated without cancellation near s = 1.
double half_angle_sin_squared(double s, std::size_t dim);
/// cos^2(theta/2): ground-state population on |m>.
double ground_overlap_marked(double s, std::size_t dim);
SpectrumPoint spectrum_point(double s, std::size_t dim);
SigmaZElements sigma_z_matrix_elements(double s, std::size_t dim);

/// Location of the minimum gap of (1-s) H_b + s (1+chi) H_p.
double shifted_gap_minimum(double chi, std::size_t dim);

/// The N-2 energy-1 eigenvectors, built from the pairing f(j) <-> N-1-f(j).
struct ExcitedBasis {
    /// Columns k-1 hold |eps_{k+1}> = (|f(k)> - |~f(k)>)/sqrt(2), k = 1..N/2-1.
    Eigen::MatrixXd antisymmetric;
    /// Column 0 holds |eps'_2>, column k-1 holds |eps'_{k+1}> for k = 2..N/2-1.
    Eigen::MatrixXd symmetric;

    Eigen::MatrixXd all() const;
};

/// f(j) for j = 1..N/2-1: skips the smaller of m and its complement.
std::size_t pairing_index(std::size_t j, const ProblemInstance& instance);
ExcitedBasis build_excited_basis(const ProblemInstance& instance);

/// Full diagonalization of the explicit N x N matrix; eigenvalues ascending.
struct DenseSpectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
};

inline constexpr int kDenseOracleMaxQubits = 10;

Eigen::MatrixXcd dense_hamiltonian(const HamiltonianSpec& spec, double s);
DenseSpectrum dense_oracle(const HamiltonianSpec& spec, double s);

}  // namespace qaus
