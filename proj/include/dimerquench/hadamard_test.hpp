#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bell_basis.hpp"
#include "circuit.hpp"
#include "exact_dynamics.hpp"

namespace dimerquench {

struct HadamardEstimate {
    double value = 0.0;          // P0 - P1 on the ancilla
    double std_error = 0.0;      // zero in exact mode
    std::uint64_t shots = 0;     // zero in exact mode
};

/**
 * The circuit H(anc) . C-U_phi^dagger . C-U_psi . H(anc) on prep.num_qubits()
 * + 1 qubits, the ancilla being the last qubit. Measuring the ancilla gives
 * P0 - P1 = Re <0|U_phi^dagger U_psi|0>.
 */
[[nodiscard]] Circuit hadamard_test_circuit(const Circuit &prep_psi, const Circuit &prep_phi);

/// Exact P0 - P1.
[[nodiscard]] HadamardEstimate hadamard_test(const Circuit &prep_psi, const Circuit &prep_phi);

/**
 * Shot estimate: all qubits are measured `shots` times and the ancilla bit is
 * read off. std_error = sqrt((1 - est^2) / shots).
 */
[[nodiscard]] HadamardEstimate hadamard_test(const Circuit &prep_psi, const Circuit &prep_phi,
                                             std::uint64_t shots, std::uint64_t seed,
                                             std::uint64_t stream = 0);

/// a_k estimate for one dimer configuration against the singlet product.
[[nodiscard]] HadamardEstimate estimate_coefficient(const DimerConfig &config);
[[nodiscard]] HadamardEstimate estimate_coefficient(const DimerConfig &config, std::uint64_t shots,
                                                    std::uint64_t seed, std::uint64_t stream = 0);

struct CoefficientEstimate {
    DimerConfig config;
    double value = 0.0;
};

/**
 * Renormalizes the estimates to unit norm and attaches exp(-i E_k t) with
 * the model energies. Every active configuration of `params` must appear
 * exactly once; extra (inactive) configurations are kept with their values.
 * Throws std::invalid_argument if the estimates are all zero.
 */
[[nodiscard]] EvolvedState reconstruct_state_from_estimates(
    std::span<const CoefficientEstimate> estimates, const ModelParams &params, double t);

} // namespace dimerquench
