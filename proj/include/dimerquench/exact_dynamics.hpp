#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "bell_basis.hpp"
#include "model.hpp"
#include "state_vector.hpp"

namespace dimerquench {

/// Statevectors are materialized only up to this many qubits.
inline constexpr int max_statevector_qubits = 24;

/// Echo sums over the expansion directly and is allowed up to this many dimers.
inline constexpr int max_echo_dimers = 10;

/**
 * Psi(t) = sum_k c_k Phi_k. For exact evolution c_k = a_k exp(-i E_k t);
 * reconstructed states may carry arbitrary amplitudes.
 */
class EvolvedState {
  public:
    EvolvedState(std::shared_ptr<const BellExpansion> expansion, double t,
                 std::vector<cplx> amplitudes);

    [[nodiscard]] const BellExpansion &expansion() const noexcept { return *expansion_; }
    [[nodiscard]] const std::shared_ptr<const BellExpansion> &expansion_ptr() const noexcept {
        return expansion_;
    }
    [[nodiscard]] double time() const noexcept { return t_; }
    [[nodiscard]] const std::vector<cplx> &amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] double norm() const;

  private:
    std::shared_ptr<const BellExpansion> expansion_;
    double t_ = 0.0;
    std::vector<cplx> amplitudes_;
};

[[nodiscard]] EvolvedState evolve(std::shared_ptr<const BellExpansion> expansion, double t);
[[nodiscard]] EvolvedState evolve(const BellExpansion &expansion, double t);

/// Spin-basis state of sum_k c_k Phi_k; throws SizeLimitError above 24 qubits.
[[nodiscard]] StateVector to_statevector(const EvolvedState &state);

/// The singlet product Psi0 on n dimers.
[[nodiscard]] StateVector initial_state(int n);

/// A single Bell product Phi_k.
[[nodiscard]] StateVector config_state(const DimerConfig &config);

struct ReducedDensityMatrix {
    std::vector<int> subsystem; // qubit indices; entry j sets bit j of the local index
    int dim = 0;
    std::vector<cplx> data;     // row-major dim x dim

    [[nodiscard]] cplx operator()(int i, int j) const {
        return data[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim) +
                    static_cast<std::size_t>(j)];
    }
    [[nodiscard]] cplx trace() const;
};

/**
 * Partial trace over the complement of `subsystem` (qubit indices, distinct,
 * nonempty, and not the whole register). Local index bit j holds the
 * subsystem's j-th qubit.
 */
[[nodiscard]] ReducedDensityMatrix reduced_density_matrix(const StateVector &psi,
                                                          std::span<const int> subsystem);

/// Qubits 0..n-1, i.e. sites 1..n.
[[nodiscard]] std::vector<int> half_chain(int n);

/**
 * Spectrum of a density matrix, descending. Eigenvalues below -1e-10 are
 * rejected with std::domain_error; the rest are clamped to [0, 1].
 */
[[nodiscard]] std::vector<double> hermitian_eigenvalues(const ReducedDensityMatrix &rho);

/// -sum l log2 l with 0 log 0 = 0. Spectrum must sum to 1 within 1e-9.
[[nodiscard]] double von_neumann_entropy(std::span<const double> eigenvalues);

/// -log2 sum l^2.
[[nodiscard]] double renyi2_entropy(std::span<const double> eigenvalues);

struct EntropyPair {
    double s1 = 0.0;
    double s2 = 0.0;
};

/// Entropies of the half chain (sites 1..n) of the exactly evolved state.
[[nodiscard]] EntropyPair half_chain_entropies(const BellExpansion &expansion, double t);

/// Entropies of an arbitrary qubit subsystem.
[[nodiscard]] EntropyPair subsystem_entropies(const StateVector &psi, std::span<const int> subsystem);

/// |sum_k a_k^2 exp(-i E_k t)|^2.
[[nodiscard]] double loschmidt_echo(const BellExpansion &expansion, double t);

/**
 * Echo evaluator with the expansion collapsed to distinct energies and their
 * summed weights a_k^2, for repeated evaluation on grids.
 */
class EchoSpectrum {
  public:
    explicit EchoSpectrum(const BellExpansion &expansion);

    [[nodiscard]] double operator()(double t) const;
    [[nodiscard]] cplx amplitude(double t) const;

    [[nodiscard]] const std::vector<double> &energies() const noexcept { return energies_; }
    [[nodiscard]] const std::vector<double> &weights() const noexcept { return weights_; }
    [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }

  private:
    std::vector<double> energies_;
    std::vector<double> weights_;
    int num_qubits_ = 0;
};

/// Expansion for the echo: PBC up to n = 10 dimers; no statevector needed.
[[nodiscard]] BellExpansion echo_expansion(const ModelParams &params);

/// -ln(echo)/N; echo below 1e-300 maps to +infinity.
[[nodiscard]] double return_rate(double echo, int num_qubits);

/**
 * Grid scan for local minima of the echo on [0, t_max], each refined by
 * golden-section search; minima with echo < tol are returned in ascending order.
 */
[[nodiscard]] std::vector<double> find_loschmidt_zeros(const ModelParams &params, double t_max,
                                                       double grid_step, double tol = 1e-12);

[[nodiscard]] std::vector<double> find_loschmidt_zeros(const EchoSpectrum &echo, double t_max,
                                                       double grid_step, double tol = 1e-12);

enum class Observable : std::uint8_t { S1, S2, Echo, ReturnRate };

[[nodiscard]] std::string_view to_string(Observable observable) noexcept;
[[nodiscard]] Observable parse_observable(std::string_view text);

struct PeriodicityReport {
    double period = 0.0;
    double max_deviation = 0.0;
    bool periodic = false;
};

/**
 * Compares f(t_i) with f(t_i + T) at `samples` points spread over one period.
 * With delta = p/q (reduced), T = 2 q pi / J for n > 2 and for the echo, and
 * T = q pi / J for the n = 2 entropies. The rational must equal params.delta
 * to 1e-12. Entropies use the half-chain bipartition.
 */
[[nodiscard]] PeriodicityReport check_periodicity(const ModelParams &params, Observable observable,
                                                  const Rational &delta, int samples,
                                                  double tol = 1e-9);

/// Same, refusing (std::invalid_argument) anisotropies without an exact rational form.
[[nodiscard]] PeriodicityReport check_periodicity(const ModelParams &params, Observable observable,
                                                  const Anisotropy &delta, int samples,
                                                  double tol = 1e-9);

/// Evaluates an observable of the exact evolution at time t.
[[nodiscard]] double evaluate_observable(const BellExpansion &expansion, Observable observable,
                                         double t);

} // namespace dimerquench
