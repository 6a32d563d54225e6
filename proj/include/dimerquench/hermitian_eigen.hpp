#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dimerquench {

struct JacobiResult {
    std::vector<double> eigenvalues; // descending
    int sweeps = 0;
    double off_norm = 0.0;           // Frobenius norm of the remaining off-diagonal part
    bool converged = false;
};

/**
 * Eigenvalues of a dense complex Hermitian matrix (row-major, dim x dim) by
 * cyclic Jacobi rotations. Each rotation first rephases column q so that
 * a_pq is real, then applies the real symmetric Schur rotation. Sweeps stop
 * once the off-diagonal Frobenius norm drops below rel_tol * ||A||_F.
 *
 * Throws std::invalid_argument if the input is not Hermitian within
 * hermitian_tol * max(1, ||A||_F).
 */
[[nodiscard]] JacobiResult jacobi_eigenvalues(std::span<const std::complex<double>> matrix,
                                              int dim, double rel_tol = 1e-13,
                                              int max_sweeps = 100,
                                              double hermitian_tol = 1e-10);

/// max |a_ij - conj(a_ji)|.
[[nodiscard]] double hermiticity_error(std::span<const std::complex<double>> matrix, int dim);

} // namespace dimerquench
