#include "dimerquench/sampling.hpp"

#include <algorithm>
#include <stdexcept>

#include "dimerquench/parallel.hpp"

namespace dimerquench {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(splitmix64(splitmix64(seed) ^ (stream * 0xD1B54A32D192ED03ULL + 1))) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
    return splitmix64(key_ ^ splitmix64(counter));
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11U) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t counter, std::uint64_t bound) const noexcept {
    // Lemire's multiply-shift; the residual bias is below 2^-50 for the small
    // bounds used here (3 Pauli bases)
    __extension__ using u128 = unsigned __int128;
    const u128 product = static_cast<u128>(bits(counter)) * static_cast<u128>(bound);
    return static_cast<std::uint64_t>(product >> 64U);
}

std::vector<double> cumulative_distribution(std::span<const double> probabilities) {
    if (probabilities.empty()) {
        throw std::invalid_argument("empty probability vector");
    }
    std::vector<double> cdf(probabilities.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] < 0.0) {
            throw std::invalid_argument("negative probability");
        }
        sum += probabilities[i];
        cdf[i] = sum;
    }
    if (!(sum > 0.0)) {
        throw std::invalid_argument("probabilities sum to zero");
    }
    for (auto &c : cdf) {
        c /= sum;
    }
    // pin the tail to 1 from the last outcome with weight, so round-off can
    // never hand a draw to a zero-probability outcome at the end
    std::size_t last = probabilities.size() - 1;
    while (last > 0 && probabilities[last] == 0.0) {
        --last;
    }
    std::fill(cdf.begin() + static_cast<std::ptrdiff_t>(last), cdf.end(), 1.0);
    return cdf;
}

std::uint64_t sample_index(std::span<const double> cdf, double u) noexcept {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto index = static_cast<std::uint64_t>(it - cdf.begin());
    return std::min<std::uint64_t>(index, cdf.size() - 1);
}

std::vector<std::uint64_t> measure_z(const StateVector &psi, std::uint64_t shots,
                                     std::uint64_t seed, std::uint64_t stream) {
    if (shots == 0) {
        throw std::invalid_argument("measure_z needs at least one shot");
    }
    const auto probabilities = psi.probabilities();
    const auto cdf = cumulative_distribution(probabilities);
    const CounterRng rng(seed, stream);
    std::vector<std::uint64_t> out(shots);
    parallel_for(shots, [&](std::size_t begin, std::size_t end) {
        for (std::size_t m = begin; m < end; ++m) {
            out[m] = sample_index(cdf, rng.uniform(m));
        }
    });
    return out;
}

} // namespace dimerquench
