#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dimerquench {

enum class Boundary : std::uint8_t { Periodic, Open };

[[nodiscard]] std::string_view to_string(Boundary boundary) noexcept;

/// Parses "pbc" or "obc" (case-sensitive).
[[nodiscard]] Boundary parse_boundary(std::string_view text);

/**
 * Parameters of the dimer quench.
 *
 * The chain has n dimers, i.e. N = 2n qubits. Site s (1-based) is stored on
 * qubit s-1, and bit q of a basis-state index holds the z value of qubit q
 * with |0> = spin up. The initial singlets sit on qubits (2i, 2i+1); the
 * postquench dimers couple qubits (2i+1, 2i+2 mod N).
 */
struct ModelParams {
    int n = 2;
    double J = 1.0;
    double delta = 0.0;
    Boundary boundary = Boundary::Periodic;

    ModelParams() = default;
    ModelParams(int n, double J, double delta, Boundary boundary = Boundary::Periodic);

    [[nodiscard]] int num_qubits() const noexcept { return 2 * n; }
    [[nodiscard]] bool periodic() const noexcept { return boundary == Boundary::Periodic; }

    bool operator==(const ModelParams &) const = default;
};

/// Reduced fraction num/den with den > 0.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    [[nodiscard]] double value() const noexcept {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    [[nodiscard]] std::string to_string() const;
    bool operator==(const Rational &) const = default;
};

/// Builds a reduced rational; throws std::invalid_argument when den == 0.
[[nodiscard]] Rational make_rational(std::int64_t num, std::int64_t den);

/// Accepts "p/q" or a bare integer "p". Anything else yields nullopt.
[[nodiscard]] std::optional<Rational> parse_rational(std::string_view text);

/**
 * An anisotropy value as typed by a user. "p/q" and integers keep their
 * exact rational form; decimals such as "0.5" do not, and are treated as
 * irrational wherever exactness matters (periodicity checks).
 */
struct Anisotropy {
    double value = 0.0;
    std::optional<Rational> exact;
    std::string text;

    [[nodiscard]] static Anisotropy parse(std::string_view text);
};

} // namespace dimerquench
