#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace dimerquench {

using cplx = std::complex<double>;

/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Matrix2 = std::array<cplx, 4>;

/**
 * Dense amplitudes over 2^n_qubits basis states. Bit q of the index is the
 * z value of qubit q (little-endian), so qubit 0 is the least significant bit.
 */
class StateVector {
  public:
    static constexpr int max_qubits = 28;

    StateVector() = default;
    /// |0...0> on the given number of qubits.
    explicit StateVector(int n_qubits);
    StateVector(int n_qubits, std::vector<cplx> amplitudes);

    [[nodiscard]] static StateVector basis_state(int n_qubits, std::uint64_t index);

    [[nodiscard]] int num_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }

    [[nodiscard]] cplx operator[](std::size_t i) const noexcept { return amps_[i]; }
    [[nodiscard]] cplx &operator[](std::size_t i) noexcept { return amps_[i]; }

    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<cplx> amplitudes() noexcept { return amps_; }

    [[nodiscard]] double norm() const;
    void normalize();

    /// |amp_i|^2 for every basis state.
    [[nodiscard]] std::vector<double> probabilities() const;

    /**
     * Applies a 2x2 unitary to `target`, acting only on the subspace where
     * every qubit in `control_mask` is 1. The target must not be in the mask.
     */
    void apply_1q(const Matrix2 &u, int target, std::uint64_t control_mask = 0);

    /// Diagonal phase diag(d0, d1) on `target`, under the same control rule.
    void apply_diag(cplx d0, cplx d1, int target, std::uint64_t control_mask = 0);

    /// X on `target` where all control bits are set.
    void apply_x(int target, std::uint64_t control_mask = 0);

  private:
    int n_qubits_ = 0;
    std::vector<cplx> amps_;
};

/// <a|b>; throws std::invalid_argument on a dimension mismatch.
[[nodiscard]] cplx inner_product(const StateVector &a, const StateVector &b);

/// |<a|b>|^2.
[[nodiscard]] double fidelity(const StateVector &a, const StateVector &b);

} // namespace dimerquench
