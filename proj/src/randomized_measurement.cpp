#include "dimerquench/randomized_measurement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dimerquench/circuit.hpp"
#include "dimerquench/parallel.hpp"
#include "dimerquench/sampling.hpp"

namespace dimerquench {

namespace {

// outcome streams sit above the unitary-choice streams of the same seed
constexpr std::uint64_t outcome_stream_offset = std::uint64_t{1} << 40U;
constexpr int max_histogram_qubits = 6;
constexpr int max_local_qubits = 20;

std::vector<int> resolve_subsystem(std::span<const int> subsystem, int num_qubits) {
    std::vector<int> a;
    if (subsystem.empty()) {
        a.resize(static_cast<std::size_t>(num_qubits));
        for (int q = 0; q < num_qubits; ++q) {
            a[static_cast<std::size_t>(q)] = q;
        }
        return a;
    }
    std::uint64_t seen = 0;
    for (int q : subsystem) {
        if (q < 0 || q >= num_qubits) {
            throw std::invalid_argument("subsystem qubit " + std::to_string(q) + " out of range");
        }
        if ((seen >> q) & 1U) {
            throw std::invalid_argument("subsystem qubit " + std::to_string(q) + " repeated");
        }
        seen |= std::uint64_t{1} << q;
        a.push_back(q);
    }
    if (static_cast<int>(a.size()) > max_local_qubits) {
        throw std::invalid_argument("subsystem too large for the estimators");
    }
    return a;
}

std::uint64_t local_index(std::uint64_t bits, const std::vector<int> &a) noexcept {
    std::uint64_t x = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        x |= ((bits >> a[j]) & 1U) << j;
    }
    return x;
}

// In place y = (m_{k-1} (x) ... (x) m_0) x where bit j of the index uses m_j.
void kron_transform(std::vector<double> &v, const std::vector<std::array<double, 4>> &per_bit) {
    const std::size_t dim = v.size();
    for (std::size_t j = 0; j < per_bit.size(); ++j) {
        const auto &m = per_bit[j];
        const std::size_t step = std::size_t{1} << j;
        for (std::size_t base = 0; base < dim; base += 2 * step) {
            for (std::size_t i = base; i < base + step; ++i) {
                const double x0 = v[i];
                const double x1 = v[i + step];
                v[i] = m[0] * x0 + m[1] * x1;
                v[i + step] = m[2] * x0 + m[3] * x1;
            }
        }
    }
}

constexpr std::array<double, 4> hamming_kernel{1.0, -0.5, -0.5, 1.0};
constexpr std::array<double, 4> same_basis_kernel{5.0, -4.0, -4.0, 5.0};
constexpr std::array<double, 4> other_basis_kernel{0.5, 0.5, 0.5, 0.5};

double dot(const std::vector<double> &a, const std::vector<double> &b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

std::vector<double> histogram(std::span<const std::uint64_t> shots, const std::vector<int> &a) {
    std::vector<double> h(std::size_t{1} << a.size(), 0.0);
    for (auto b : shots) {
        h[local_index(b, a)] += 1.0;
    }
    return h;
}

std::vector<double> marginal(const std::vector<double> &probabilities, const std::vector<int> &a) {
    std::vector<double> p(std::size_t{1} << a.size(), 0.0);
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        p[local_index(i, a)] += probabilities[i];
    }
    return p;
}

std::vector<double> rotated_probabilities(const StateVector &psi, const PauliBasisChoice &basis) {
    StateVector copy = psi;
    rotate_to_basis(copy, basis);
    return copy.probabilities();
}

void check_unitaries(const std::vector<PauliBasisChoice> &unitaries, int num_qubits) {
    for (const auto &u : unitaries) {
        if (static_cast<int>(u.size()) != num_qubits) {
            throw std::invalid_argument("basis choice length does not match the qubit count");
        }
        for (auto b : u) {
            if (static_cast<int>(b) > 2) {
                throw std::invalid_argument("basis index outside {X, Y, Z}");
            }
        }
    }
}

// Sum over ordered snapshot pairs from unitaries u != v of the trace product,
// plus the same-unitary sums of distinct shots. Returned as (pair matrix, diagonal).
struct ShadowPairSums {
    std::vector<double> cross; // N_U x N_U, zero diagonal; counts N_M^2 pairs each
    std::vector<double> same;  // per unitary, pairs m != m'
};

ShadowPairSums shadow_pair_sums(const MeasurementDataset &ds, const std::vector<int> &a) {
    const int nu = ds.num_unitaries();
    const auto nus = static_cast<std::size_t>(nu);
    std::vector<std::vector<double>> hist(nus);
    for (int u = 0; u < nu; ++u) {
        hist[static_cast<std::size_t>(u)] = histogram(ds.shots(u), a);
    }
    ShadowPairSums sums;
    sums.cross.assign(nus * nus, 0.0);
    sums.same.assign(nus, 0.0);
    const double self = std::pow(5.0, static_cast<double>(a.size())) * ds.shots_per_unitary;
    parallel_for(nus, [&](std::size_t begin, std::size_t end) {
        std::vector<std::array<double, 4>> kernels(a.size());
        for (std::size_t u = begin; u < end; ++u) {
            for (std::size_t v = 0; v < nus; ++v) {
                for (std::size_t j = 0; j < a.size(); ++j) {
                    const auto q = static_cast<std::size_t>(a[j]);
                    kernels[j] = ds.unitaries[u][q] == ds.unitaries[v][q] ? same_basis_kernel
                                                                          : other_basis_kernel;
                }
                std::vector<double> g = hist[v];
                kron_transform(g, kernels);
                const double s = dot(hist[u], g);
                if (u == v) {
                    sums.same[u] = s - self;
                } else {
                    sums.cross[u * nus + v] = s;
                }
            }
        }
    });
    return sums;
}

} // namespace

std::span<const std::uint64_t> MeasurementDataset::shots(int u) const {
    if (u < 0 || u >= num_unitaries()) {
        throw std::out_of_range("unitary index out of range");
    }
    const auto m = static_cast<std::size_t>(shots_per_unitary);
    return std::span<const std::uint64_t>(outcomes).subspan(static_cast<std::size_t>(u) * m, m);
}

void MeasurementDataset::validate() const {
    if (num_qubits < 1 || num_qubits > 63) {
        throw std::invalid_argument("dataset qubit count out of range");
    }
    if (shots_per_unitary < 1) {
        throw std::invalid_argument("dataset needs at least one shot per unitary");
    }
    check_unitaries(unitaries, num_qubits);
    if (outcomes.size() != unitaries.size() * static_cast<std::size_t>(shots_per_unitary)) {
        throw std::invalid_argument("outcome count does not match N_U x N_M");
    }
    for (auto b : outcomes) {
        if ((b >> num_qubits) != 0) {
            throw std::invalid_argument("outcome has bits beyond the qubit count");
        }
    }
    if (params && params->num_qubits() != num_qubits) {
        throw std::invalid_argument("dataset parameters disagree with the qubit count");
    }
}

std::vector<PauliBasisChoice> sample_unitaries(int num_qubits, int num_unitaries,
                                               std::uint64_t seed) {
    if (num_qubits < 1) {
        throw std::invalid_argument("need at least one qubit");
    }
    if (num_unitaries < 1) {
        throw std::invalid_argument("need at least one unitary");
    }
    std::vector<PauliBasisChoice> out(static_cast<std::size_t>(num_unitaries));
    for (int u = 0; u < num_unitaries; ++u) {
        const CounterRng rng(seed, static_cast<std::uint64_t>(u));
        auto &choice = out[static_cast<std::size_t>(u)];
        choice.resize(static_cast<std::size_t>(num_qubits));
        for (int q = 0; q < num_qubits; ++q) {
            choice[static_cast<std::size_t>(q)] =
                static_cast<PauliBasis>(rng.below(static_cast<std::uint64_t>(q), 3));
        }
    }
    return out;
}

std::vector<PauliBasisChoice> all_pauli_bases(int num_qubits) {
    if (num_qubits < 1 || num_qubits > 12) {
        throw std::invalid_argument("basis enumeration supports 1..12 qubits");
    }
    std::size_t total = 1;
    for (int q = 0; q < num_qubits; ++q) {
        total *= 3;
    }
    std::vector<PauliBasisChoice> out(total, PauliBasisChoice(static_cast<std::size_t>(num_qubits)));
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t r = k;
        for (int q = 0; q < num_qubits; ++q) {
            out[k][static_cast<std::size_t>(q)] = static_cast<PauliBasis>(r % 3);
            r /= 3;
        }
    }
    return out;
}

void rotate_to_basis(StateVector &psi, const PauliBasisChoice &basis) {
    if (static_cast<int>(basis.size()) != psi.num_qubits()) {
        throw std::invalid_argument("basis choice length does not match the state");
    }
    const auto h = gate_matrix(GateKind::H);
    const cplx i{0.0, 1.0};
    for (int q = 0; q < psi.num_qubits(); ++q) {
        switch (basis[static_cast<std::size_t>(q)]) {
        case PauliBasis::X:
            psi.apply_1q(h, q);
            break;
        case PauliBasis::Y:
            psi.apply_diag(1.0, -i, q);
            psi.apply_1q(h, q);
            break;
        case PauliBasis::Z:
            break;
        }
    }
}

MeasurementDataset collect(const StateVector &psi, const std::vector<PauliBasisChoice> &unitaries,
                           int shots_per_unitary, std::uint64_t seed) {
    if (shots_per_unitary < 1) {
        throw std::invalid_argument("need at least one shot per unitary");
    }
    if (psi.num_qubits() > 63) {
        throw std::invalid_argument("too many qubits for packed outcomes");
    }
    if (std::abs(psi.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("state must be normalized");
    }
    check_unitaries(unitaries, psi.num_qubits());
    MeasurementDataset ds;
    ds.num_qubits = psi.num_qubits();
    ds.shots_per_unitary = shots_per_unitary;
    ds.seed = seed;
    ds.unitaries = unitaries;
    const auto m = static_cast<std::size_t>(shots_per_unitary);
    ds.outcomes.assign(unitaries.size() * m, 0);
    parallel_for(unitaries.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t u = begin; u < end; ++u) {
            const auto cdf = cumulative_distribution(rotated_probabilities(psi, unitaries[u]));
            const CounterRng rng(seed, outcome_stream_offset + u);
            for (std::size_t s = 0; s < m; ++s) {
                ds.outcomes[u * m + s] = sample_index(cdf, rng.uniform(s));
            }
        }
    });
    return ds;
}

Estimate jackknife_mean(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) {
        throw std::invalid_argument("jackknife needs at least two samples");
    }
    double total = 0.0;
    for (double v : values) {
        total += v;
    }
    const double mean = total / static_cast<double>(n);
    double var = 0.0;
    for (double v : values) {
        const double loo = (total - v) / static_cast<double>(n - 1);
        var += (loo - mean) * (loo - mean);
    }
    var *= static_cast<double>(n - 1) / static_cast<double>(n);
    return {mean, std::sqrt(var)};
}

Estimate purity_hamming(const MeasurementDataset &dataset, std::span<const int> subsystem) {
    dataset.validate();
    if (dataset.shots_per_unitary < 2) {
        throw std::invalid_argument("Hamming purity needs N_M >= 2");
    }
    const auto a = resolve_subsystem(subsystem, dataset.num_qubits);
    const std::vector<std::array<double, 4>> kernels(a.size(), hamming_kernel);
    const double nm = dataset.shots_per_unitary;
    const double dim = std::ldexp(1.0, static_cast<int>(a.size()));
    std::vector<double> per_unitary(static_cast<std::size_t>(dataset.num_unitaries()));
    for (int u = 0; u < dataset.num_unitaries(); ++u) {
        const auto h = histogram(dataset.shots(u), a);
        auto g = h;
        kron_transform(g, kernels);
        // each shot paired with itself contributes weight 1; drop those
        per_unitary[static_cast<std::size_t>(u)] = dim * (dot(h, g) - nm) / (nm * (nm - 1.0));
    }
    return jackknife_mean(per_unitary);
}

Estimate overlap_hamming(const MeasurementDataset &first, const MeasurementDataset &second,
                         std::span<const int> subsystem) {
    first.validate();
    second.validate();
    if (first.num_qubits != second.num_qubits || first.unitaries != second.unitaries) {
        throw std::invalid_argument("overlap needs datasets taken with the same unitaries");
    }
    const auto a = resolve_subsystem(subsystem, first.num_qubits);
    const std::vector<std::array<double, 4>> kernels(a.size(), hamming_kernel);
    const double norm = static_cast<double>(first.shots_per_unitary) *
                        static_cast<double>(second.shots_per_unitary);
    const double dim = std::ldexp(1.0, static_cast<int>(a.size()));
    std::vector<double> per_unitary(static_cast<std::size_t>(first.num_unitaries()));
    for (int u = 0; u < first.num_unitaries(); ++u) {
        const auto h1 = histogram(first.shots(u), a);
        auto g = histogram(second.shots(u), a);
        kron_transform(g, kernels);
        per_unitary[static_cast<std::size_t>(u)] = dim * dot(h1, g) / norm;
    }
    return jackknife_mean(per_unitary);
}

double purity_hamming_exact(const StateVector &psi, std::span<const int> subsystem,
                            const std::vector<PauliBasisChoice> &unitaries) {
    return overlap_hamming_exact(psi, psi, subsystem, unitaries);
}

double overlap_hamming_exact(const StateVector &first, const StateVector &second,
                             std::span<const int> subsystem,
                             const std::vector<PauliBasisChoice> &unitaries) {
    if (first.num_qubits() != second.num_qubits()) {
        throw std::invalid_argument("states act on different registers");
    }
    if (unitaries.empty()) {
        throw std::invalid_argument("need at least one unitary");
    }
    check_unitaries(unitaries, first.num_qubits());
    const auto a = resolve_subsystem(subsystem, first.num_qubits());
    const std::vector<std::array<double, 4>> kernels(a.size(), hamming_kernel);
    const double dim = std::ldexp(1.0, static_cast<int>(a.size()));
    std::vector<double> per_unitary(unitaries.size());
    parallel_for(unitaries.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t u = begin; u < end; ++u) {
            const auto p1 = marginal(rotated_probabilities(first, unitaries[u]), a);
            auto g = marginal(rotated_probabilities(second, unitaries[u]), a);
            kron_transform(g, kernels);
            per_unitary[u] = dim * dot(p1, g);
        }
    });
    double total = 0.0;
    for (double v : per_unitary) {
        total += v;
    }
    return total / static_cast<double>(unitaries.size());
}

Matrix2 dense_snapshot(const LocalSnapshot &s) {
    // 3 |v><v| - I for the eigenvector v of the measured Pauli with eigenvalue (-1)^z
    const double sign = s.outcome == 0 ? 1.0 : -1.0;
    const cplx i{0.0, 1.0};
    switch (s.basis) {
    case PauliBasis::X:
        return {0.5, 1.5 * sign, 1.5 * sign, 0.5};
    case PauliBasis::Y:
        return {0.5, -1.5 * i * sign, 1.5 * i * sign, 0.5};
    case PauliBasis::Z:
        return {0.5 + 1.5 * sign, 0.0, 0.0, 0.5 - 1.5 * sign};
    }
    return {};
}

double snapshot_pair_trace(const LocalSnapshot &a, const LocalSnapshot &b) noexcept {
    if (a.basis != b.basis) {
        return 0.5;
    }
    return a.outcome == b.outcome ? 5.0 : -4.0;
}

ShadowSnapshots shadow_snapshots(const MeasurementDataset &dataset) {
    dataset.validate();
    ShadowSnapshots out;
    out.num_qubits = dataset.num_qubits;
    out.data.reserve(dataset.outcomes.size() * static_cast<std::size_t>(dataset.num_qubits));
    for (int u = 0; u < dataset.num_unitaries(); ++u) {
        const auto &basis = dataset.unitaries[static_cast<std::size_t>(u)];
        for (auto b : dataset.shots(u)) {
            for (int q = 0; q < dataset.num_qubits; ++q) {
                out.data.push_back({basis[static_cast<std::size_t>(q)],
                                    static_cast<std::uint8_t>((b >> q) & 1U)});
            }
        }
    }
    return out;
}

Estimate shadow_purity(const MeasurementDataset &dataset, std::span<const int> subsystem,
                       ShadowPairing pairing) {
    dataset.validate();
    const auto a = resolve_subsystem(subsystem, dataset.num_qubits);
    const int nu = dataset.num_unitaries();
    const double nm = dataset.shots_per_unitary;
    if (pairing == ShadowPairing::DistinctUnitaries && nu < 3) {
        throw std::invalid_argument("distinct-unitary shadow purity needs N_U >= 3");
    }
    if (pairing == ShadowPairing::AllPairs && (nu < 2 || nu * nm < 3)) {
        throw std::invalid_argument("shadow purity needs at least three snapshots");
    }
    const auto sums = shadow_pair_sums(dataset, a);
    const auto nus = static_cast<std::size_t>(nu);
    std::vector<double> row(nus, 0.0);
    double cross_total = 0.0;
    double same_total = 0.0;
    for (std::size_t u = 0; u < nus; ++u) {
        for (std::size_t v = 0; v < nus; ++v) {
            if (u != v) {
                const double s = sums.cross[u * nus + v];
                row[u] += s;
                row[v] += s;
                cross_total += s;
            }
        }
        same_total += sums.same[u];
    }
    auto estimate_without = [&](std::size_t skip, bool skipping) {
        const double k = skipping ? nu - 1.0 : static_cast<double>(nu);
        const double cross = skipping ? cross_total - row[skip] : cross_total;
        if (pairing == ShadowPairing::DistinctUnitaries) {
            return cross / (k * (k - 1.0) * nm * nm);
        }
        const double same = skipping ? same_total - sums.same[skip] : same_total;
        const double m = k * nm;
        return (cross + same) / (m * (m - 1.0));
    };
    Estimate out;
    out.value = estimate_without(0, false);
    std::vector<double> loo(nus);
    double mean = 0.0;
    for (std::size_t u = 0; u < nus; ++u) {
        loo[u] = estimate_without(u, true);
        mean += loo[u];
    }
    mean /= nu;
    double var = 0.0;
    for (double v : loo) {
        var += (v - mean) * (v - mean);
    }
    out.sigma = std::sqrt(var * (nu - 1.0) / nu);
    return out;
}

double shadow_purity_direct(const MeasurementDataset &dataset, std::span<const int> subsystem,
                            ShadowPairing pairing) {
    dataset.validate();
    const auto a = resolve_subsystem(subsystem, dataset.num_qubits);
    const auto snaps = shadow_snapshots(dataset);
    const std::size_t total = snaps.size();
    if (total < 2) {
        throw std::invalid_argument("shadow purity needs at least two snapshots");
    }
    const auto nm = static_cast<std::size_t>(dataset.shots_per_unitary);
    std::vector<double> partial(total, 0.0);
    std::vector<double> counts(total, 0.0);
    parallel_for(total, [&](std::size_t begin, std::size_t end) {
        for (std::size_t m = begin; m < end; ++m) {
            for (std::size_t k = 0; k < total; ++k) {
                if (k == m) {
                    continue;
                }
                if (pairing == ShadowPairing::DistinctUnitaries && k / nm == m / nm) {
                    continue;
                }
                double prod = 1.0;
                for (int q : a) {
                    prod *= snapshot_pair_trace(snaps.at(m, q), snaps.at(k, q));
                }
                partial[m] += prod;
                counts[m] += 1.0;
            }
        }
    });
    double sum = 0.0;
    double pairs = 0.0;
    for (std::size_t m = 0; m < total; ++m) {
        sum += partial[m];
        pairs += counts[m];
    }
    if (pairs == 0.0) {
        throw std::invalid_argument("no snapshot pairs for the requested pairing");
    }
    return sum / pairs;
}

double shadow_purity_histogram(const MeasurementDataset &dataset, std::span<const int> subsystem,
                               ShadowPairing pairing) {
    dataset.validate();
    const auto a = resolve_subsystem(subsystem, dataset.num_qubits);
    if (static_cast<int>(a.size()) > max_histogram_qubits) {
        throw std::invalid_argument("pattern histogram supports at most 6 subsystem qubits");
    }
    const std::size_t na = a.size();
    std::size_t patterns = 1;
    for (std::size_t j = 0; j < na; ++j) {
        patterns *= 6;
    }
    // digit j = 2 * basis + outcome of subsystem qubit j
    std::vector<double> counts(patterns, 0.0);
    double same_unitary = 0.0; // ordered same-unitary pairs, m = m' included
    for (int u = 0; u < dataset.num_unitaries(); ++u) {
        const auto &basis = dataset.unitaries[static_cast<std::size_t>(u)];
        std::size_t base_code = 0;
        std::size_t scale = 1;
        for (std::size_t j = 0; j < na; ++j) {
            base_code += 2 * static_cast<std::size_t>(basis[static_cast<std::size_t>(a[j])]) * scale;
            scale *= 6;
        }
        for (auto b : dataset.shots(u)) {
            std::size_t code = base_code;
            std::size_t s = 1;
            for (std::size_t j = 0; j < na; ++j) {
                code += ((b >> a[j]) & 1U) * s;
                s *= 6;
            }
            counts[code] += 1.0;
        }
        if (pairing == ShadowPairing::DistinctUnitaries) {
            auto h = histogram(dataset.shots(u), a);
            auto g = h;
            kron_transform(g, std::vector<std::array<double, 4>>(na, same_basis_kernel));
            same_unitary += dot(h, g);
        }
    }
    // apply the 6x6 trace table along every digit
    std::array<std::array<double, 6>, 6> table{};
    for (int p = 0; p < 6; ++p) {
        for (int q = 0; q < 6; ++q) {
            const LocalSnapshot sp{static_cast<PauliBasis>(p / 2), static_cast<std::uint8_t>(p % 2)};
            const LocalSnapshot sq{static_cast<PauliBasis>(q / 2), static_cast<std::uint8_t>(q % 2)};
            table[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = snapshot_pair_trace(sp, sq);
        }
    }
    std::vector<double> g = counts;
    std::size_t stride = 1;
    for (std::size_t j = 0; j < na; ++j) {
        std::vector<double> next(patterns, 0.0);
        for (std::size_t code = 0; code < patterns; ++code) {
            const std::size_t digit = (code / stride) % 6;
            const std::size_t rest = code - digit * stride;
            double v = 0.0;
            for (std::size_t d = 0; d < 6; ++d) {
                v += table[digit][d] * g[rest + d * stride];
            }
            next[code] = v;
        }
        g = std::move(next);
        stride *= 6;
    }
    const double all_ordered = dot(counts, g);
    const double m = static_cast<double>(dataset.outcomes.size());
    const double nm = dataset.shots_per_unitary;
    const double nu = dataset.num_unitaries();
    if (pairing == ShadowPairing::AllPairs) {
        const double self = m * std::pow(5.0, static_cast<double>(na));
        return (all_ordered - self) / (m * (m - 1.0));
    }
    return (all_ordered - same_unitary) / (nu * (nu - 1.0) * nm * nm);
}

Estimate shadow_loschmidt(const MeasurementDataset &dataset, const StateVector &psi0) {
    dataset.validate();
    if (dataset.num_qubits != psi0.num_qubits()) {
        throw std::invalid_argument("reference state and dataset cover different registers");
    }
    const std::vector<std::array<double, 4>> kernels(static_cast<std::size_t>(dataset.num_qubits),
                                                     {2.0, -1.0, -1.0, 2.0});
    std::vector<double> per_unitary(static_cast<std::size_t>(dataset.num_unitaries()));
    parallel_for(per_unitary.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t u = begin; u < end; ++u) {
            auto g = rotated_probabilities(psi0, dataset.unitaries[u]);
            kron_transform(g, kernels);
            double s = 0.0;
            for (auto b : dataset.shots(static_cast<int>(u))) {
                s += g[b];
            }
            per_unitary[u] = s / dataset.shots_per_unitary;
        }
    });
    return jackknife_mean(per_unitary);
}

double renyi_from_purity(double purity, double floor) {
    if (std::isnan(purity)) {
        throw std::invalid_argument("purity is NaN");
    }
    if (!(floor > 0.0)) {
        throw std::invalid_argument("clamp floor must be positive");
    }
    return -std::log2(std::max(purity, floor));
}

Estimate renyi_from_purity(const Estimate &purity, double floor) {
    const double p = std::max(purity.value, floor);
    return {renyi_from_purity(purity.value, floor), purity.sigma / (p * std::numbers::ln2)};
}

} // namespace dimerquench
