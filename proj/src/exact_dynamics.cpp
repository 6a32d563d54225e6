#include "dimerquench/exact_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dimerquench/errors.hpp"
#include "dimerquench/hermitian_eigen.hpp"
#include "dimerquench/parallel.hpp"

namespace dimerquench {

namespace {

constexpr int max_rdm_qubits = 10;
constexpr double eigen_floor = -1e-10;

void check_statevector_size(int num_qubits) {
    if (num_qubits > max_statevector_qubits) {
        throw SizeLimitError("statevector materialization limited to " +
                             std::to_string(max_statevector_qubits) + " qubits, requested " +
                             std::to_string(num_qubits));
    }
}

// 4x4 map from Bell label (row) to the amplitudes over |z_a z_b> (column index)
using BellTable = std::array<std::array<double, 4>, 4>;

BellTable bell_table() {
    const double r = 1.0 / std::sqrt(2.0);
    BellTable b{};
    for (int mu = 0; mu < 4; ++mu) {
        const auto s = bell_signs(static_cast<BellType>(mu));
        for (int z = 0; z < 4; ++z) {
            b[static_cast<std::size_t>(mu)][static_cast<std::size_t>(z)] = s[static_cast<std::size_t>(z)] * r;
        }
    }
    return b;
}

// Rewrites the two bits (a, b) from Bell-label encoding (label = 2 bit_a + bit_b)
// to spin amplitudes.
void bell_to_spin(std::vector<cplx> &amps, int a, int b, const BellTable &table) {
    const std::uint64_t ba = std::uint64_t{1} << a;
    const std::uint64_t bb = std::uint64_t{1} << b;
    const std::uint64_t lo = std::min(ba, bb);
    const std::uint64_t hi = std::max(ba, bb);
    const std::size_t quarter = amps.size() / 4;
    auto body = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            // spread i over the positions not occupied by a or b
            std::uint64_t x = i;
            const std::uint64_t lo_mask = lo - 1;
            x = ((x & ~lo_mask) << 1U) | (x & lo_mask);
            const std::uint64_t hi_mask = hi - 1;
            x = ((x & ~hi_mask) << 1U) | (x & hi_mask);
            const std::array<std::uint64_t, 4> idx{x, x | bb, x | ba, x | ba | bb};
            std::array<cplx, 4> in{};
            for (std::size_t m = 0; m < 4; ++m) {
                in[m] = amps[idx[m]];
            }
            for (std::size_t z = 0; z < 4; ++z) {
                cplx v{0.0, 0.0};
                for (std::size_t m = 0; m < 4; ++m) {
                    v += table[m][z] * in[m];
                }
                amps[idx[z]] = v;
            }
        }
    };
    if (quarter < (std::size_t{1} << 14)) {
        body(0, quarter);
    } else {
        parallel_for(quarter, body);
    }
}

std::uint64_t label_index(const DimerConfig &config) {
    const int n = config.size();
    std::uint64_t x = 0;
    for (int i = 0; i < n; ++i) {
        const auto [a, b] = dimer_qubits(i, n);
        const auto mu = static_cast<std::uint64_t>(config[i]);
        x |= ((mu >> 1U) & 1U) << a;
        x |= (mu & 1U) << b;
    }
    return x;
}

double golden_minimum(const EchoSpectrum &f, double lo, double hi, double &t_min) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    t_min = fc < fd ? c : d;
    return std::min(fc, fd);
}

} // namespace

EvolvedState::EvolvedState(std::shared_ptr<const BellExpansion> expansion, double t,
                           std::vector<cplx> amplitudes)
    : expansion_(std::move(expansion)), t_(t), amplitudes_(std::move(amplitudes)) {
    if (!expansion_) {
        throw std::invalid_argument("evolved state needs an expansion");
    }
    if (amplitudes_.size() != expansion_->size()) {
        throw std::invalid_argument("amplitude count does not match the expansion");
    }
}

double EvolvedState::norm() const {
    double s = 0.0;
    for (const auto &a : amplitudes_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

EvolvedState evolve(std::shared_ptr<const BellExpansion> expansion, double t) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("evolution time must be finite");
    }
    if (!expansion) {
        throw std::invalid_argument("null expansion");
    }
    std::vector<cplx> amps(expansion->size());
    for (std::size_t k = 0; k < amps.size(); ++k) {
        amps[k] = expansion->coefficient(k) * std::polar(1.0, -expansion->energies[k] * t);
    }
    return {std::move(expansion), t, std::move(amps)};
}

EvolvedState evolve(const BellExpansion &expansion, double t) {
    return evolve(std::make_shared<const BellExpansion>(expansion), t);
}

StateVector to_statevector(const EvolvedState &state) {
    const auto &e = state.expansion();
    const int n = e.params.n;
    const int num_qubits = 2 * n;
    check_statevector_size(num_qubits);
    std::vector<cplx> amps(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < e.size(); ++k) {
        amps[label_index(e.configs[k])] += state.amplitudes()[k];
    }
    const auto table = bell_table();
    for (int i = 0; i < n; ++i) {
        const auto [a, b] = dimer_qubits(i, n);
        bell_to_spin(amps, a, b, table);
    }
    return {num_qubits, std::move(amps)};
}

StateVector initial_state(int n) {
    if (n < 1) {
        throw std::invalid_argument("need at least one dimer");
    }
    check_statevector_size(2 * n);
    const int num_qubits = 2 * n;
    std::vector<cplx> amps(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
    const double scale = std::ldexp(1.0, -n);
    const double amp = std::sqrt(scale);
    // qubit 2i carries s, qubit 2i+1 carries 1-s; s = 1 picks up the minus sign
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::uint64_t x = 0;
        int sign = 1;
        for (int i = 0; i < n; ++i) {
            const std::uint64_t s = (mask >> i) & 1U;
            x |= s << (2 * i);
            x |= (1U - s) << (2 * i + 1);
            sign = s != 0U ? -sign : sign;
        }
        amps[x] = sign * amp;
    }
    return {num_qubits, std::move(amps)};
}

StateVector config_state(const DimerConfig &config) {
    const int n = config.size();
    if (n < 1) {
        throw std::invalid_argument("empty dimer configuration");
    }
    check_statevector_size(2 * n);
    std::vector<cplx> amps(std::size_t{1} << (2 * n), cplx{0.0, 0.0});
    amps[label_index(config)] = 1.0;
    const auto table = bell_table();
    for (int i = 0; i < n; ++i) {
        const auto [a, b] = dimer_qubits(i, n);
        bell_to_spin(amps, a, b, table);
    }
    return {2 * n, std::move(amps)};
}

cplx ReducedDensityMatrix::trace() const {
    cplx s{0.0, 0.0};
    for (int i = 0; i < dim; ++i) {
        s += (*this)(i, i);
    }
    return s;
}

ReducedDensityMatrix reduced_density_matrix(const StateVector &psi, std::span<const int> subsystem) {
    const int num_qubits = psi.num_qubits();
    const int na = static_cast<int>(subsystem.size());
    if (na == 0 || na >= num_qubits) {
        throw std::invalid_argument("subsystem must be a nonempty proper subset of the qubits");
    }
    std::uint64_t mask = 0;
    for (int q : subsystem) {
        if (q < 0 || q >= num_qubits) {
            throw std::invalid_argument("subsystem qubit " + std::to_string(q) + " out of range");
        }
        if ((mask >> q) & 1U) {
            throw std::invalid_argument("subsystem qubit " + std::to_string(q) + " repeated");
        }
        mask |= std::uint64_t{1} << q;
    }
    if (na > max_rdm_qubits) {
        throw SizeLimitError("reduced density matrix limited to " +
                             std::to_string(max_rdm_qubits) + " qubits");
    }
    std::vector<int> env;
    for (int q = 0; q < num_qubits; ++q) {
        if (!((mask >> q) & 1U)) {
            env.push_back(q);
        }
    }
    const std::size_t da = std::size_t{1} << na;
    const std::size_t de = std::size_t{1} << env.size();
    // M[a][e]: amplitude with subsystem bits a and environment bits e
    std::vector<std::uint64_t> a_bits(da, 0);
    for (std::size_t a = 0; a < da; ++a) {
        for (int j = 0; j < na; ++j) {
            if ((a >> j) & 1U) {
                a_bits[a] |= std::uint64_t{1} << subsystem[static_cast<std::size_t>(j)];
            }
        }
    }
    std::vector<std::uint64_t> e_bits(de, 0);
    for (std::size_t e = 0; e < de; ++e) {
        for (std::size_t j = 0; j < env.size(); ++j) {
            if ((e >> j) & 1U) {
                e_bits[e] |= std::uint64_t{1} << env[j];
            }
        }
    }
    std::vector<cplx> m(da * de);
    for (std::size_t a = 0; a < da; ++a) {
        for (std::size_t e = 0; e < de; ++e) {
            m[a * de + e] = psi[a_bits[a] | e_bits[e]];
        }
    }
    ReducedDensityMatrix rho;
    rho.subsystem.assign(subsystem.begin(), subsystem.end());
    rho.dim = static_cast<int>(da);
    rho.data.assign(da * da, cplx{0.0, 0.0});
    auto rows = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = i; j < da; ++j) {
                cplx s{0.0, 0.0};
                const cplx *ri = &m[i * de];
                const cplx *rj = &m[j * de];
                for (std::size_t e = 0; e < de; ++e) {
                    s += ri[e] * std::conj(rj[e]);
                }
                rho.data[i * da + j] = s;
                rho.data[j * da + i] = std::conj(s);
            }
        }
    };
    if (da * da * de < (std::size_t{1} << 16)) {
        rows(0, da);
    } else {
        parallel_for(da, rows);
    }
    return rho;
}

std::vector<int> half_chain(int n) {
    std::vector<int> q(static_cast<std::size_t>(n));
    std::iota(q.begin(), q.end(), 0);
    return q;
}

std::vector<double> hermitian_eigenvalues(const ReducedDensityMatrix &rho) {
    auto result = jacobi_eigenvalues(rho.data, rho.dim);
    if (!result.converged) {
        throw std::runtime_error("Jacobi iteration did not converge");
    }
    for (double &l : result.eigenvalues) {
        if (l < eigen_floor) {
            throw std::domain_error("density matrix has eigenvalue " + std::to_string(l));
        }
        l = std::clamp(l, 0.0, 1.0);
    }
    return result.eigenvalues;
}

namespace {

void check_spectrum(std::span<const double> eigenvalues) {
    double sum = 0.0;
    for (double l : eigenvalues) {
        if (l < eigen_floor) {
            throw std::domain_error("negative eigenvalue " + std::to_string(l));
        }
        sum += l;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::domain_error("spectrum sums to " + std::to_string(sum) + ", not 1");
    }
}

} // namespace

double von_neumann_entropy(std::span<const double> eigenvalues) {
    check_spectrum(eigenvalues);
    double s = 0.0;
    for (double l : eigenvalues) {
        if (l > 0.0) {
            s -= l * std::log2(l);
        }
    }
    return s;
}

double renyi2_entropy(std::span<const double> eigenvalues) {
    check_spectrum(eigenvalues);
    double p = 0.0;
    for (double l : eigenvalues) {
        if (l > 0.0) {
            p += l * l;
        }
    }
    return -std::log2(p);
}

EntropyPair subsystem_entropies(const StateVector &psi, std::span<const int> subsystem) {
    // the smaller side has the same nonzero spectrum and a cheaper matrix
    std::vector<int> side(subsystem.begin(), subsystem.end());
    if (2 * static_cast<int>(side.size()) > psi.num_qubits()) {
        std::vector<int> complement;
        for (int q = 0; q < psi.num_qubits(); ++q) {
            if (std::find(side.begin(), side.end(), q) == side.end()) {
                complement.push_back(q);
            }
        }
        side = std::move(complement);
    }
    const auto rho = reduced_density_matrix(psi, side);
    const auto eigs = hermitian_eigenvalues(rho);
    return {von_neumann_entropy(eigs), renyi2_entropy(eigs)};
}

EntropyPair half_chain_entropies(const BellExpansion &expansion, double t) {
    const auto psi = to_statevector(evolve(expansion, t));
    const auto a = half_chain(expansion.params.n);
    return subsystem_entropies(psi, a);
}

double loschmidt_echo(const BellExpansion &expansion, double t) {
    cplx z{0.0, 0.0};
    for (std::size_t k = 0; k < expansion.size(); ++k) {
        const double a = expansion.coefficient(k);
        z += a * a * std::polar(1.0, -expansion.energies[k] * t);
    }
    return std::clamp(std::norm(z), 0.0, 1.0);
}

EchoSpectrum::EchoSpectrum(const BellExpansion &expansion)
    : num_qubits_(expansion.params.num_qubits()) {
    std::vector<std::pair<double, double>> terms;
    terms.reserve(expansion.size());
    for (std::size_t k = 0; k < expansion.size(); ++k) {
        const double a = expansion.coefficient(k);
        terms.emplace_back(expansion.energies[k], a * a);
    }
    std::sort(terms.begin(), terms.end());
    for (const auto &[e, w] : terms) {
        if (!energies_.empty() && std::abs(e - energies_.back()) <= 1e-12 * std::max(1.0, std::abs(e))) {
            weights_.back() += w;
        } else {
            energies_.push_back(e);
            weights_.push_back(w);
        }
    }
}

cplx EchoSpectrum::amplitude(double t) const {
    cplx z{0.0, 0.0};
    for (std::size_t i = 0; i < energies_.size(); ++i) {
        z += weights_[i] * std::polar(1.0, -energies_[i] * t);
    }
    return z;
}

double EchoSpectrum::operator()(double t) const {
    return std::clamp(std::norm(amplitude(t)), 0.0, 1.0);
}

BellExpansion echo_expansion(const ModelParams &params) {
    if (params.n > max_echo_dimers) {
        throw SizeLimitError("echo evaluation limited to n <= " + std::to_string(max_echo_dimers));
    }
    return build_expansion(params);
}

double return_rate(double echo, int num_qubits) {
    if (!(echo >= 0.0 && echo <= 1.0 + 1e-12)) {
        throw std::invalid_argument("echo must lie in [0, 1], got " + std::to_string(echo));
    }
    if (num_qubits <= 0) {
        throw std::invalid_argument("qubit count must be positive");
    }
    if (echo < 1e-300) {
        return std::numeric_limits<double>::infinity();
    }
    return -std::log(std::min(echo, 1.0)) / num_qubits;
}

std::vector<double> find_loschmidt_zeros(const EchoSpectrum &echo, double t_max, double grid_step,
                                         double tol) {
    if (!(grid_step > 0.0) || !std::isfinite(grid_step)) {
        throw std::invalid_argument("grid step must be positive");
    }
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
        throw std::invalid_argument("t_max must be finite and non-negative");
    }
    const auto steps = static_cast<std::size_t>(std::floor(t_max / grid_step + 1e-9));
    std::vector<double> ts(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        ts[i] = std::min(t_max, static_cast<double>(i) * grid_step);
    }
    if (ts.back() < t_max) {
        ts.push_back(t_max);
    }
    std::vector<double> f(ts.size());
    parallel_for(ts.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            f[i] = echo(ts[i]);
        }
    });
    std::vector<double> zeros;
    const std::size_t last = ts.size() - 1;
    for (std::size_t i = 0; i <= last; ++i) {
        const bool left_ok = i == 0 || f[i] <= f[i - 1];
        const bool right_ok = i == last || f[i] <= f[i + 1];
        if (!left_ok || !right_ok || last == 0) {
            continue;
        }
        const double lo = ts[i == 0 ? 0 : i - 1];
        const double hi = ts[i == last ? last : i + 1];
        double t_min = ts[i];
        const double f_min = golden_minimum(echo, lo, hi, t_min);
        double best_t = t_min;
        double best_f = f_min;
        if (f[i] < best_f) {
            best_t = ts[i];
            best_f = f[i];
        }
        if (best_f < tol) {
            if (zeros.empty() || std::abs(best_t - zeros.back()) > 1e-6) {
                zeros.push_back(best_t);
            }
        }
    }
    return zeros;
}

std::vector<double> find_loschmidt_zeros(const ModelParams &params, double t_max,
                                         double grid_step, double tol) {
    return find_loschmidt_zeros(EchoSpectrum(echo_expansion(params)), t_max, grid_step, tol);
}

std::string_view to_string(Observable observable) noexcept {
    switch (observable) {
    case Observable::S1:
        return "S1";
    case Observable::S2:
        return "S2";
    case Observable::Echo:
        return "echo";
    case Observable::ReturnRate:
        return "return_rate";
    }
    return "?";
}

Observable parse_observable(std::string_view text) {
    for (auto o : {Observable::S1, Observable::S2, Observable::Echo, Observable::ReturnRate}) {
        if (text == to_string(o)) {
            return o;
        }
    }
    throw std::invalid_argument("unknown observable '" + std::string(text) + "'");
}

double evaluate_observable(const BellExpansion &expansion, Observable observable, double t) {
    switch (observable) {
    case Observable::S1:
        return half_chain_entropies(expansion, t).s1;
    case Observable::S2:
        return half_chain_entropies(expansion, t).s2;
    case Observable::Echo:
        return loschmidt_echo(expansion, t);
    case Observable::ReturnRate:
        return return_rate(loschmidt_echo(expansion, t), expansion.params.num_qubits());
    }
    throw std::invalid_argument("unknown observable");
}

PeriodicityReport check_periodicity(const ModelParams &params, Observable observable,
                                    const Rational &delta, int samples, double tol) {
    if (samples < 1) {
        throw std::invalid_argument("need at least one sample");
    }
    const Rational r = make_rational(delta.num, delta.den);
    if (std::abs(r.value() - params.delta) > 1e-12) {
        throw std::invalid_argument("rational " + r.to_string() +
                                    " does not match the model anisotropy");
    }
    const bool entropy = observable == Observable::S1 || observable == Observable::S2;
    const double cycles = (params.n == 2 && entropy) ? 1.0 : 2.0;
    PeriodicityReport report;
    report.period = cycles * static_cast<double>(r.den) * std::numbers::pi / params.J;
    const auto expansion = build_expansion(params);
    std::vector<double> dev(static_cast<std::size_t>(samples), 0.0);
    parallel_for(dev.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double t = report.period * static_cast<double>(i) / samples;
            const double a = evaluate_observable(expansion, observable, t);
            const double b = evaluate_observable(expansion, observable, t + report.period);
            if (std::isinf(a) && std::isinf(b)) {
                dev[i] = 0.0;
            } else {
                dev[i] = std::abs(a - b);
            }
        }
    });
    report.max_deviation = *std::max_element(dev.begin(), dev.end());
    report.periodic = report.max_deviation < tol;
    return report;
}

PeriodicityReport check_periodicity(const ModelParams &params, Observable observable,
                                    const Anisotropy &delta, int samples, double tol) {
    if (!delta.exact) {
        throw std::invalid_argument("periodicity needs an exact rational anisotropy; '" +
                                    delta.text + "' has none");
    }
    return check_periodicity(params, observable, *delta.exact, samples, tol);
}

} // namespace dimerquench
