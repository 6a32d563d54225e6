#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "model.hpp"
#include "state_vector.hpp"

namespace dimerquench {

/// Measurement basis of one qubit, stored as 0 = X, 1 = Y, 2 = Z.
enum class PauliBasis : std::uint8_t { X = 0, Y = 1, Z = 2 };

/// Per-qubit bases of one random unitary, indexed by qubit.
using PauliBasisChoice = std::vector<PauliBasis>;

/// N_U independent uniform choices over {X, Y, Z}^N; unitary u uses stream u.
[[nodiscard]] std::vector<PauliBasisChoice> sample_unitaries(int num_qubits, int num_unitaries,
                                                             std::uint64_t seed);

/// Every basis in {X, Y, Z}^N, in base-3 counting order (qubit 0 fastest).
[[nodiscard]] std::vector<PauliBasisChoice> all_pauli_bases(int num_qubits);

/// Rotates so that a Z measurement reads the chosen basis: X -> H, Y -> H S^dagger.
void rotate_to_basis(StateVector &psi, const PauliBasisChoice &basis);

/**
 * N_U x N_M outcomes. Outcome bit q is the result on qubit q in that
 * unitary's basis for q.
 */
struct MeasurementDataset {
    std::optional<ModelParams> params;
    double t = 0.0;
    int num_qubits = 0;
    int shots_per_unitary = 0; // N_M
    std::uint64_t seed = 0;
    std::vector<PauliBasisChoice> unitaries;
    std::vector<std::uint64_t> outcomes; // row-major N_U x N_M

    [[nodiscard]] int num_unitaries() const noexcept { return static_cast<int>(unitaries.size()); }
    [[nodiscard]] std::uint64_t outcome(int u, int m) const {
        return outcomes[static_cast<std::size_t>(u) * static_cast<std::size_t>(shots_per_unitary) +
                        static_cast<std::size_t>(m)];
    }
    [[nodiscard]] std::span<const std::uint64_t> shots(int u) const;

    /// Throws std::invalid_argument if sizes or bases are inconsistent.
    void validate() const;

    bool operator==(const MeasurementDataset &) const = default;
};

/**
 * Rotates a copy of psi into each basis and draws N_M outcomes. Unitary u
 * samples with stream u of the seed, so results do not depend on threading.
 */
[[nodiscard]] MeasurementDataset collect(const StateVector &psi,
                                         const std::vector<PauliBasisChoice> &unitaries,
                                         int shots_per_unitary, std::uint64_t seed);

struct Estimate {
    double value = 0.0;
    double sigma = 0.0; // jackknife over unitaries
};

/**
 * Purity of the subsystem from Hamming-distance correlations:
 * 2^{N_A} (-2)^{-D} weighted pairs of distinct shots per unitary, averaged
 * over unitaries. Needs N_M >= 2.
 */
[[nodiscard]] Estimate purity_hamming(const MeasurementDataset &dataset,
                                      std::span<const int> subsystem);

/**
 * Tr[rho1 rho2] from two datasets taken with the same unitaries, over the
 * given qubits (all qubits when empty).
 */
[[nodiscard]] Estimate overlap_hamming(const MeasurementDataset &first,
                                       const MeasurementDataset &second,
                                       std::span<const int> subsystem = {});

/// The same estimators with exact outcome probabilities in place of frequencies.
[[nodiscard]] double purity_hamming_exact(const StateVector &psi, std::span<const int> subsystem,
                                          const std::vector<PauliBasisChoice> &unitaries);
[[nodiscard]] double overlap_hamming_exact(const StateVector &first, const StateVector &second,
                                           std::span<const int> subsystem,
                                           const std::vector<PauliBasisChoice> &unitaries);

/// One qubit of a classical snapshot: 3 u^dagger|z><z|u - I.
struct LocalSnapshot {
    PauliBasis basis = PauliBasis::Z;
    std::uint8_t outcome = 0;

    bool operator==(const LocalSnapshot &) const = default;
};

/// Dense 2x2 form of a local snapshot.
[[nodiscard]] Matrix2 dense_snapshot(const LocalSnapshot &s);

/// Tr[sigma sigma']: 5 for equal basis and outcome, -4 for equal basis only, 1/2 otherwise.
[[nodiscard]] double snapshot_pair_trace(const LocalSnapshot &a, const LocalSnapshot &b) noexcept;

/// Compact snapshots of a dataset: row-major (unitary, shot) by qubit.
struct ShadowSnapshots {
    int num_qubits = 0;
    std::vector<LocalSnapshot> data;

    [[nodiscard]] std::size_t size() const noexcept {
        return num_qubits == 0 ? 0 : data.size() / static_cast<std::size_t>(num_qubits);
    }
    [[nodiscard]] const LocalSnapshot &at(std::size_t m, int q) const {
        return data[m * static_cast<std::size_t>(num_qubits) + static_cast<std::size_t>(q)];
    }
};

[[nodiscard]] ShadowSnapshots shadow_snapshots(const MeasurementDataset &dataset);

enum class ShadowPairing : std::uint8_t {
    /// Only snapshot pairs from different unitaries (unbiased).
    DistinctUnitaries,
    /// Every pair of distinct snapshots, including shots of the same unitary.
    AllPairs
};

/**
 * Purity of the subsystem from products of pairwise snapshot traces. The
 * default pairing averages over snapshot pairs from different unitaries;
 * AllPairs averages over every pair m != m' of the M = N_U N_M snapshots.
 */
[[nodiscard]] Estimate shadow_purity(const MeasurementDataset &dataset,
                                     std::span<const int> subsystem,
                                     ShadowPairing pairing = ShadowPairing::DistinctUnitaries);

/// Direct O(M^2 N_A) pair sum; reference for the grouped computation.
[[nodiscard]] double shadow_purity_direct(const MeasurementDataset &dataset,
                                          std::span<const int> subsystem, ShadowPairing pairing);

/**
 * Pair sum over the 6^{N_A} distinct (basis, outcome) patterns of the
 * subsystem; N_A <= 6.
 */
[[nodiscard]] double shadow_purity_histogram(const MeasurementDataset &dataset,
                                             std::span<const int> subsystem,
                                             ShadowPairing pairing);

/**
 * Tr[|psi0><psi0| rho_hat(t)] averaged over unitaries, where rho_hat
 * averages the snapshots of one unitary. The dataset must cover all qubits
 * of psi0.
 */
[[nodiscard]] Estimate shadow_loschmidt(const MeasurementDataset &dataset, const StateVector &psi0);

/// -log2 of the purity, clamped below at `floor`.
[[nodiscard]] double renyi_from_purity(double purity, double floor = 1e-6);

/// Same, with sigma propagated to first order.
[[nodiscard]] Estimate renyi_from_purity(const Estimate &purity, double floor = 1e-6);

/// Leave-one-out jackknife of the mean; returns {mean, sigma}.
[[nodiscard]] Estimate jackknife_mean(std::span<const double> values);

} // namespace dimerquench
