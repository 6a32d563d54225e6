#pragma once

#include <string>
#include <vector>

#include "bell_basis.hpp"
#include "model.hpp"
#include "state_vector.hpp"

namespace dimerquench {

enum class GateKind : std::uint8_t { H, X, S, Sdg, CNOT, RZ, ExpZZ, ExpXX, ExpYY };

[[nodiscard]] std::string_view to_string(GateKind kind) noexcept;

/**
 * One gate application. Single-qubit gates use q0; CNOT uses q0 as control
 * and q1 as target; the EXP gates act on the pair (q0, q1).
 *
 *   RZ(theta)     = diag(e^{-i theta/2}, e^{+i theta/2})
 *   EXP_PP(theta) = exp(-i theta P(x)P)   for P in {X, Y, Z}
 *
 * `controls` lists extra control qubits; the gate acts only where all of
 * them are 1.
 */
struct Gate {
    GateKind kind = GateKind::H;
    int q0 = 0;
    int q1 = -1;
    double theta = 0.0;
    std::vector<int> controls;

    bool operator==(const Gate &) const = default;
};

class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(int n_qubits);

    [[nodiscard]] int num_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const std::vector<Gate> &ops() const noexcept { return ops_; }
    [[nodiscard]] std::size_t size() const noexcept { return ops_.size(); }

    Circuit &h(int q);
    Circuit &x(int q);
    Circuit &s(int q);
    Circuit &sdg(int q);
    Circuit &cx(int control, int target);
    Circuit &rz(double theta, int q);
    Circuit &exp_zz(double theta, int a, int b);
    Circuit &exp_xx(double theta, int a, int b);
    Circuit &exp_yy(double theta, int a, int b);

    /// Appends a validated gate.
    Circuit &add(Gate gate);

    /// Appends every gate of `other` (same or smaller register).
    Circuit &append(const Circuit &other);

    /**
     * Appends `other` controlled on `ancilla`: each gate is promoted to its
     * controlled version. The ancilla must lie outside every gate's qubits.
     */
    Circuit &append_controlled(const Circuit &other, int ancilla);

    /// U^dagger: reversed order, each gate inverted.
    [[nodiscard]] Circuit inverse() const;

    /**
     * Rewrites the EXP gates into H, S, Sdg, CNOT and RZ. Under a control
     * only the central RZ needs it: the basis changes and CNOT pairs cancel
     * on the uncontrolled branch.
     */
    [[nodiscard]] Circuit lower() const;

  private:
    void check_qubit(int q) const;

    int n_qubits_ = 0;
    std::vector<Gate> ops_;
};

/// Applies the circuit in place; throws std::invalid_argument on a qubit-count mismatch.
void apply(const Circuit &circuit, StateVector &psi);

[[nodiscard]] StateVector apply(const Circuit &circuit, const StateVector &psi);

/// Gate matrix of a single-qubit gate kind (H, X, S, Sdg or RZ(theta)).
[[nodiscard]] Matrix2 gate_matrix(GateKind kind, double theta = 0.0);

/**
 * OpenQASM 3 text using h, x, s, sdg, cx and rz. EXP gates are expanded and
 * controlled gates are written with the `ctrl @` modifier.
 */
[[nodiscard]] std::string to_qasm3(const Circuit &circuit);

/**
 * Prepares Bell state mu on (first, second) from |00>, exactly (no global
 * phase): psi0 = X(x)X, H, CNOT; psi1 = H(x)X, CNOT; psi2 = H, CNOT;
 * psi3 = X, H, CNOT. H and the leading X act on `first`.
 */
[[nodiscard]] Circuit bell_prep_circuit(BellType mu, int first, int second, int n_qubits);

/// Singlet product on (2i, 2i+1) for i < n, from |0...0>.
[[nodiscard]] Circuit initial_state_circuit(int n, int n_qubits);

/// Product of Bell dimers on (2i+1, 2i+2 mod 2n), from |0...0>.
[[nodiscard]] Circuit config_prep_circuit(const DimerConfig &config, int n_qubits);

/**
 * exp(-i H t) for the postquench Hamiltonian. Each coupled dimer gets
 * EXP_XX(Jt/4), EXP_YY(Jt/4), EXP_ZZ(J delta t/4); the terms commute, so the
 * circuit is exact and its depth does not depend on t. Open chains skip the
 * wrap-around bond (2n-1, 0).
 */
[[nodiscard]] Circuit evolution_circuit(const ModelParams &params, double t);

} // namespace dimerquench
