#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "state_vector.hpp"

namespace dimerquench {

/**
 * Counter-based random source: every draw is a pure function of
 * (seed, stream, counter), so shots can be generated in any order or in
 * parallel and still reproduce bit for bit. The mixing function is the
 * SplitMix64 finalizer applied to a chained key.
 */
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    [[nodiscard]] std::uint64_t bits(std::uint64_t counter) const noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    [[nodiscard]] double uniform(std::uint64_t counter) const noexcept;

    /// Uniform integer in [0, bound); bound must be positive.
    [[nodiscard]] std::uint64_t below(std::uint64_t counter, std::uint64_t bound) const noexcept;

  private:
    std::uint64_t key_;
};

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Running sum of probabilities; the last entry is rescaled to exactly 1.
[[nodiscard]] std::vector<double> cumulative_distribution(std::span<const double> probabilities);

/// Index i with cdf[i-1] <= u < cdf[i].
[[nodiscard]] std::uint64_t sample_index(std::span<const double> cdf, double u) noexcept;

/**
 * Draws `shots` computational-basis outcomes from |amps|^2. Outcome bit q is
 * the result on qubit q. Shot m uses counter m of stream `stream`.
 */
[[nodiscard]] std::vector<std::uint64_t> measure_z(const StateVector &psi, std::uint64_t shots,
                                                   std::uint64_t seed, std::uint64_t stream = 0);

} // namespace dimerquench
