#pragma once

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "model.hpp"

namespace dimerquench {

/**
 * The four Bell states of a dimer (j, j+1), written over |z_j z_{j+1}>:
 *
 *   Psi0 = (|01> - |10>)/sqrt2   (singlet)
 *   Psi1 = (|01> + |10>)/sqrt2
 *   Psi2 = (|00> + |11>)/sqrt2
 *   Psi3 = (|00> - |11>)/sqrt2
 */
enum class BellType : std::uint8_t { Psi0 = 0, Psi1 = 1, Psi2 = 2, Psi3 = 3 };

/// Index of the two-site ket |a b> in the amplitude arrays below (a = first site).
[[nodiscard]] constexpr int pair_index(int first, int second) noexcept {
    return 2 * first + second;
}

/// Amplitudes of a Bell state over {|00>, |01>, |10>, |11>}.
[[nodiscard]] std::array<std::complex<double>, 4> bell_amplitudes(BellType mu);

/// Same amplitudes as signs: entry is +1, -1 or 0, the magnitude being 1/sqrt2.
[[nodiscard]] std::array<int, 4> bell_signs(BellType mu) noexcept;

/// Eigenvalue of J(SxSx + SySy + delta SzSz) on the given Bell state.
[[nodiscard]] double dimer_energy(BellType mu, double J, double delta) noexcept;

/**
 * A product of Bell dimers on the postquench bonds. Entry i labels the dimer
 * on qubits (2i+1, 2i+2 mod N); the last entry therefore wraps around to
 * qubit 0. Entries are packed two bits each, entry 0 most significant, so
 * comparing codes orders configurations lexicographically.
 */
class DimerConfig {
  public:
    static constexpr int max_length = 32;

    DimerConfig() = default;
    explicit DimerConfig(std::span<const BellType> types);
    DimerConfig(std::initializer_list<int> types);

    [[nodiscard]] static DimerConfig from_code(std::uint64_t code, int length);

    [[nodiscard]] int size() const noexcept { return length_; }
    [[nodiscard]] std::uint64_t code() const noexcept { return code_; }
    [[nodiscard]] BellType operator[](int i) const noexcept {
        return static_cast<BellType>((code_ >> (2 * (length_ - 1 - i))) & 3U);
    }

    /// Count of entries equal to mu.
    [[nodiscard]] int count(BellType mu) const noexcept;

    /// Digits of the type indices, e.g. "0123".
    [[nodiscard]] std::string to_string() const;

    bool operator==(const DimerConfig &) const = default;
    std::strong_ordering operator<=>(const DimerConfig &other) const noexcept {
        if (auto c = length_ <=> other.length_; c != 0) {
            return c;
        }
        return code_ <=> other.code_;
    }

  private:
    std::uint64_t code_ = 0;
    int length_ = 0;
};

/// Qubits (first, second) of postquench dimer i in a chain of n dimers.
[[nodiscard]] constexpr std::pair<int, int> dimer_qubits(int i, int n) noexcept {
    return {2 * i + 1, (2 * i + 2) % (2 * n)};
}

/// Qubits of initial singlet i.
[[nodiscard]] constexpr std::pair<int, int> singlet_qubits(int i) noexcept {
    return {2 * i, 2 * i + 1};
}

/// Sum of dimer energies over every entry.
[[nodiscard]] double config_energy(const DimerConfig &config, double J, double delta);

/// Energy under the model's postquench Hamiltonian. With open boundaries the
/// wrap-around dimer (last entry) is uncoupled and contributes nothing.
[[nodiscard]] double config_energy(const DimerConfig &config, const ModelParams &params);

/// Both selection rules: even sum of type indices, even count of Psi2 + Psi3.
[[nodiscard]] bool satisfies_selection_rules(const DimerConfig &config) noexcept;

/**
 * Sign of <Phi_k|Psi0> from the transition-graph loop.
 *
 * For periodic chains the singlets and the postquench dimers form a single
 * loop through all 2n sites. Fixing the spin of site 1 determines every other
 * spin along the loop; each dimer contributes the sign of its amplitude on
 * the spins it connects. The two compatible spin configurations (related by a
 * global flip) are summed, giving +-2 or 0 in units of 2^-n.
 */
[[nodiscard]] int loop_rule_sign(const DimerConfig &config);

/// <Phi_k|Psi0> summed over the spin basis (support of Psi0 only).
[[nodiscard]] double spin_basis_overlap(const DimerConfig &config);

/// Coefficient sign: loop rule for periodic chains, spin-basis sum otherwise.
[[nodiscard]] int coefficient_sign(const DimerConfig &config, const ModelParams &params);

/// a_k = <Phi_k|Psi0>: +-2^-(n-1) or exactly 0.
[[nodiscard]] double coefficient(const DimerConfig &config, const ModelParams &params);

/// Configurations with a_k != 0, in lexicographic order.
[[nodiscard]] std::vector<DimerConfig> enumerate_active_configs(const ModelParams &params);

/**
 * Psi0 = sum_k a_k Phi_k restricted to the active configurations. All
 * coefficients share the magnitude 2^-(n-1), so only their signs are stored.
 */
struct BellExpansion {
    ModelParams params;
    std::vector<DimerConfig> configs;
    std::vector<std::int8_t> signs;
    std::vector<double> energies;

    [[nodiscard]] std::size_t size() const noexcept { return configs.size(); }
    [[nodiscard]] double magnitude() const noexcept;
    [[nodiscard]] double coefficient(std::size_t k) const noexcept {
        return signs[k] * magnitude();
    }
    [[nodiscard]] std::vector<double> coefficients() const;
};

[[nodiscard]] BellExpansion build_expansion(const ModelParams &params);

[[nodiscard]] nlohmann::json to_json(const BellExpansion &expansion);
[[nodiscard]] BellExpansion expansion_from_json(const nlohmann::json &doc);

} // namespace dimerquench
