#pragma once

// Brute-force reference computations. Everything here is built directly from the model
// definitions with dense linear algebra and deliberately shares no code with the library's
// closed forms or integrators, so agreement between the two is meaningful.

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qaus::oracle {

/// (1-s)(1 - |+><+|) + s(1+chi)(1 - |m><m|) as an explicit dense matrix.
Eigen::MatrixXd hamiltonian(int qubits, std::size_t marked, double s, double chi = 0.0);

struct Eigensystem {
    Eigen::VectorXd values;   ///< ascending
    Eigen::MatrixXd vectors;  ///< columns
};

Eigensystem diagonalize(const Eigen::MatrixXd& h);

/// Diagonal of sigma^z on `qubit` (qubit 0 is the most significant bit).
Eigen::VectorXd sigma_z_diagonal(int qubits, int qubit);

/// The N-2 energy-1 vectors written out from their textbook definition.
struct ExcitedVectors {
    std::vector<Eigen::VectorXd> antisymmetric;  ///< (|f(k)> - |fbar(k)>)/sqrt2, k = 1..N/2-1
    std::vector<Eigen::VectorXd> symmetric;      ///< eps'_{k+1}, k = 1..N/2-1
};

ExcitedVectors excited_vectors(int qubits, std::size_t marked);

/// |<eps0|sigma^z_qubit|v>| for every excited vector v, with eps0 from dense diagonalization,
/// plus the basis-independent weight sum over the dense energy-1 eigenspace.
struct BruteSigmaZ {
    std::vector<double> antisymmetric;
    std::vector<double> symmetric;
    double manifold_weight = 0.0;
};

BruteSigmaZ sigma_z_elements(int qubits, std::size_t marked, double s, int qubit);

/// Sum over dense eigenstates i >= 2 and qubits alpha of gamma(D_i) exp(-beta D_i) |<eps0|Z_alpha|eps_i>|^2.
double excitation_rate(int qubits, std::size_t marked, double s, double beta, double g);

/// Gap between the two lowest dense eigenvalues.
double dense_gap(int qubits, std::size_t marked, double s, double chi = 0.0);

/// Runtime from integrating dt = ds / (eps gap(s)^2) with composite Simpson on `intervals` panels.
double integrated_runtime(std::size_t dim, double epsilon, int intervals = 200000);

/// Success probability from a 2x2 propagator built from exact exponentials of the reduced
/// Hamiltonian at segment midpoints (second order in the step). `s_of_t` gives the schedule.
template <class Schedule>
double reduced_exponential_success(std::size_t dim, double chi, const Schedule& s_of_t, double total_time,
                                   int steps);

/// Dense-matrix exponential propagator in the full space, midpoint rule.
template <class Schedule>
double full_exponential_success(int qubits, std::size_t marked, double chi, const Schedule& s_of_t,
                                double total_time, int steps);

/// Pass/fail record shared by the acceptance runner and the CLI validate command.
struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Fast oracle/property suite (seconds): spectrum, sigma^z elements, schedule identities,
/// excitation rate, reduced vs full and integrator vs exponential propagator.
std::vector<Check> quick_suite();

}  // namespace qaus::oracle

#include "oracles_impl.hpp"
