#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dimerquench/bell_basis.hpp"
#include "dimerquench/model.hpp"
#include "dimerquench/state_vector.hpp"

// Brute-force references built without the Bell-basis machinery: dense
// matrices in the spin basis, diagonalized with Eigen.
namespace dimerquench::oracle {

/// Postquench Hamiltonian J sum (SxSx + SySy + delta SzSz) over the coupled
/// bonds (2i+1, 2i+2 mod N), dense and real, dimension 2^N.
[[nodiscard]] Eigen::MatrixXd hamiltonian(const ModelParams &params);

/// Singlet product as a Kronecker product of two-qubit singlets.
[[nodiscard]] Eigen::VectorXcd initial_state(int n);

/// Phi_k by looping over every basis state and multiplying dimer amplitudes.
[[nodiscard]] Eigen::VectorXcd bell_product(const DimerConfig &config);

/// <Phi_k|Psi0> from the two vectors above.
[[nodiscard]] double coefficient(const DimerConfig &config);

/// exp(-i H t) psi from one diagonalization of H.
class DenseEvolution {
  public:
    DenseEvolution(const ModelParams &params, const Eigen::VectorXcd &psi);

    [[nodiscard]] Eigen::VectorXcd state(double t) const;

    /// Full unitary exp(-i H t).
    [[nodiscard]] Eigen::MatrixXcd unitary(double t) const;

  private:
    Eigen::MatrixXd vectors_;
    Eigen::VectorXd energies_;
    Eigen::VectorXcd weights_; // psi in the eigenbasis
};

[[nodiscard]] Eigen::VectorXcd to_eigen(const StateVector &psi);
[[nodiscard]] StateVector from_eigen(const Eigen::VectorXcd &v);

/// Partial trace keeping `subsystem` (qubit j of the list = local bit j).
[[nodiscard]] Eigen::MatrixXcd reduced_density_matrix(const Eigen::VectorXcd &psi, int num_qubits,
                                                      std::span<const int> subsystem);

/// Ascending spectrum from Eigen's self-adjoint solver.
[[nodiscard]] std::vector<double> spectrum(const Eigen::MatrixXcd &rho);

[[nodiscard]] double entropy_s1(const Eigen::MatrixXcd &rho);
[[nodiscard]] double entropy_s2(const Eigen::MatrixXcd &rho);

/// |<psi0|psi>|^2.
[[nodiscard]] double echo(const Eigen::VectorXcd &psi0, const Eigen::VectorXcd &psi);

} // namespace dimerquench::oracle
