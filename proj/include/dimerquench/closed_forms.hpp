#pragma once

#include <utility>
#include <vector>

#include "model.hpp"

namespace dimerquench {

/**
 * Closed-form references for the dimer quench. Times are physical; every
 * expression depends on J t and J delta t only. Entropies are in bits and
 * refer to the half chain (sites 1..n) of a periodic chain.
 */
namespace closed_form {

/// Half-chain S1 (order 1) or S2 (order 2) for n = 2.
[[nodiscard]] double entropy_n2(double J, double delta, double t, int order);

/// The n = 2 spectrum: {sin^2/4, sin^2/4, (1+c^2+2c cd)/4, (1+c^2-2c cd)/4}.
[[nodiscard]] std::vector<double> spectrum_n2(double J, double delta, double t);

/// n = 2, delta = 0: -2[s log s + c log c] with s = sin^2(Jt/2).
[[nodiscard]] double entropy_n2_xx_s1(double J, double t);

/// n = 2, delta = 0: -2 log2(1 - sin^2(Jt)/2).
[[nodiscard]] double entropy_n2_xx_s2(double J, double t);

/// Odd n: 1 + S^{n=2}(t/2).
[[nodiscard]] double entropy_odd(double J, double delta, double t, int order);

/// Even n > 2, written out (not via the n = 2 relation).
[[nodiscard]] double entropy_even(double J, double delta, double t, int order);

/**
 * Dispatch on n for periodic chains: n = 2, odd n, even n > 2. Throws
 * NotCoveredError for open chains and std::invalid_argument for an order
 * other than 1 or 2.
 */
[[nodiscard]] double entropy(const ModelParams &params, double t, int order);

[[nodiscard]] double echo_n2(double J, double delta, double t);
[[nodiscard]] double echo_n3(double J, double delta, double t);
[[nodiscard]] double echo_n4(double J, double delta, double t);
[[nodiscard]] double echo_n4_xx(double J, double t);
[[nodiscard]] double echo_n4_xxx(double J, double t);

/// n = 6, delta = 0: [x (x+3)^2 / 16]^2 with x = cos^2(Jt/2).
[[nodiscard]] double echo_n6_xx(double J, double t);

/// n = 6, any delta, from the multiplicity table: (cs^2 + si^2) / 4^10.
[[nodiscard]] double echo_n6(double J, double delta, double t);

/// n = 8, delta = 0.
[[nodiscard]] double echo_n8_xx(double J, double t);

/**
 * Dispatch: n = 2, 3, 4 and 6 for any delta, n = 8 for delta = 0, periodic
 * chains only. Anything else throws NotCoveredError.
 */
[[nodiscard]] double echo(const ModelParams &params, double t);

/// Whether echo(params, t) has a closed form.
[[nodiscard]] bool echo_covered(const ModelParams &params) noexcept;

/// Whether entropy(params, t, order) has a closed form.
[[nodiscard]] bool entropy_covered(const ModelParams &params) noexcept;

enum class N4Model { XX, XXX };

struct Level {
    double value = 0.0;
    int degeneracy = 1;
};

struct N4Spectrum {
    std::vector<Level> levels;
    double s1 = 0.0;

    /// Levels expanded by degeneracy, descending.
    [[nodiscard]] std::vector<double> expanded() const;
};

/**
 * Half-chain spectrum and S1 of the n = 4 chain at delta = 0 (XX) or
 * delta = 1 (XXX).
 *
 * XX levels (degeneracy 1, 1, 4, 4, 6): cos^8(Jt/4), sin^8(Jt/4), the pair
 * [1 - c^4 +- sqrt(1 - 2c^4 + c^8 - s^8)]/16 and s^4/16 with c = cos(Jt/2),
 * s = sin(Jt/2). The first two equal
 * [c^2 + s^4/8 +- c sqrt(c^2 + s^4/4)]/2.
 *
 * XXX levels (degeneracy 9, 6, 1): s^4/16, s^2(1+3c^2)/16, (1+3c^2)^2/16.
 */
[[nodiscard]] N4Spectrum n4_spectrum(double t, double J, N4Model model);

} // namespace closed_form

} // namespace dimerquench
