#include "dimerquench/bell_basis.hpp"

#include <cmath>
#include <stdexcept>

#include "dimerquench/errors.hpp"
#include "dimerquench/parallel.hpp"

namespace dimerquench {

namespace {

constexpr int max_periodic_enumeration = 12;
constexpr int max_open_enumeration = 9;

void require_valid_type(int index) {
    if (index < 0 || index > 3) {
        throw std::invalid_argument("Bell type index must be in 0..3, got " +
                                    std::to_string(index));
    }
}

void require_length(const DimerConfig &config, int n) {
    if (config.size() != n) {
        throw std::invalid_argument("dimer configuration has length " +
                                    std::to_string(config.size()) + ", expected " +
                                    std::to_string(n));
    }
}

bool preserves_spin(BellType mu) noexcept {
    return mu == BellType::Psi2 || mu == BellType::Psi3;
}

} // namespace

std::array<int, 4> bell_signs(BellType mu) noexcept {
    switch (mu) {
    case BellType::Psi0:
        return {0, 1, -1, 0};
    case BellType::Psi1:
        return {0, 1, 1, 0};
    case BellType::Psi2:
        return {1, 0, 0, 1};
    case BellType::Psi3:
        return {1, 0, 0, -1};
    }
    return {0, 0, 0, 0};
}

std::array<std::complex<double>, 4> bell_amplitudes(BellType mu) {
    require_valid_type(static_cast<int>(mu));
    const double r = 1.0 / std::sqrt(2.0);
    const auto s = bell_signs(mu);
    return {s[0] * r, s[1] * r, s[2] * r, s[3] * r};
}

double dimer_energy(BellType mu, double J, double delta) noexcept {
    switch (mu) {
    case BellType::Psi0:
        return -0.25 * J * (2.0 + delta);
    case BellType::Psi1:
        return 0.25 * J * (2.0 - delta);
    case BellType::Psi2:
    case BellType::Psi3:
        return 0.25 * J * delta;
    }
    return 0.0;
}

DimerConfig::DimerConfig(std::span<const BellType> types) {
    if (types.size() > static_cast<std::size_t>(max_length)) {
        throw std::invalid_argument("dimer configuration longer than 32 entries");
    }
    length_ = static_cast<int>(types.size());
    for (BellType mu : types) {
        require_valid_type(static_cast<int>(mu));
        code_ = (code_ << 2U) | static_cast<std::uint64_t>(mu);
    }
}

DimerConfig::DimerConfig(std::initializer_list<int> types) {
    if (types.size() > static_cast<std::size_t>(max_length)) {
        throw std::invalid_argument("dimer configuration longer than 32 entries");
    }
    length_ = static_cast<int>(types.size());
    for (int mu : types) {
        require_valid_type(mu);
        code_ = (code_ << 2U) | static_cast<std::uint64_t>(mu);
    }
}

DimerConfig DimerConfig::from_code(std::uint64_t code, int length) {
    if (length < 0 || length > max_length) {
        throw std::invalid_argument("dimer configuration length out of range");
    }
    if (length < max_length && (code >> (2 * length)) != 0) {
        throw std::invalid_argument("dimer code has bits beyond its length");
    }
    DimerConfig c;
    c.code_ = code;
    c.length_ = length;
    return c;
}

int DimerConfig::count(BellType mu) const noexcept {
    int total = 0;
    for (int i = 0; i < length_; ++i) {
        total += (*this)[i] == mu ? 1 : 0;
    }
    return total;
}

std::string DimerConfig::to_string() const {
    std::string s;
    s.reserve(static_cast<std::size_t>(length_));
    for (int i = 0; i < length_; ++i) {
        s.push_back(static_cast<char>('0' + static_cast<int>((*this)[i])));
    }
    return s;
}

double config_energy(const DimerConfig &config, double J, double delta) {
    double e = 0.0;
    for (int i = 0; i < config.size(); ++i) {
        e += dimer_energy(config[i], J, delta);
    }
    return e;
}

double config_energy(const DimerConfig &config, const ModelParams &params) {
    require_length(config, params.n);
    const int coupled = params.periodic() ? params.n : params.n - 1;
    double e = 0.0;
    for (int i = 0; i < coupled; ++i) {
        e += dimer_energy(config[i], params.J, params.delta);
    }
    return e;
}

bool satisfies_selection_rules(const DimerConfig &config) noexcept {
    int index_sum = 0;
    int spin_preserving = 0;
    for (int i = 0; i < config.size(); ++i) {
        index_sum += static_cast<int>(config[i]);
        spin_preserving += preserves_spin(config[i]) ? 1 : 0;
    }
    return index_sum % 2 == 0 && spin_preserving % 2 == 0;
}

int loop_rule_sign(const DimerConfig &config) {
    const int n = config.size();
    if (n < 2) {
        throw std::invalid_argument("loop rule needs at least two dimers");
    }
    const auto singlet = bell_signs(BellType::Psi0);
    int total = 0;
    for (int start = 0; start < 2; ++start) {
        int spin = start; // spin of qubit 2i as we walk the loop
        int sign = 1;
        for (int i = 0; i < n; ++i) {
            // singlet (2i, 2i+1): antiparallel
            const int partner = 1 - spin;
            sign *= singlet[pair_index(spin, partner)];
            // postquench dimer (2i+1, 2i+2 mod N)
            const BellType mu = config[i];
            const int next = preserves_spin(mu) ? partner : 1 - partner;
            sign *= bell_signs(mu)[pair_index(partner, next)];
            spin = next;
        }
        // the last dimer lands on qubit 0 again
        if (spin == start) {
            total += sign;
        }
    }
    return total / 2;
}

double spin_basis_overlap(const DimerConfig &config) {
    const int n = config.size();
    if (n < 2 || n > 20) {
        throw std::invalid_argument("spin-basis overlap supports 2..20 dimers");
    }
    std::array<std::array<int, 4>, 4> table{};
    for (int mu = 0; mu < 4; ++mu) {
        table[static_cast<std::size_t>(mu)] = bell_signs(static_cast<BellType>(mu));
    }
    long long total = 0;
    // Psi0 is supported on 2^n basis states: bit i of mask is the spin of qubit 2i.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::uint64_t x = 0;
        int psi_sign = 1;
        for (int i = 0; i < n; ++i) {
            const std::uint64_t s = (mask >> i) & 1U;
            x |= s << (2 * i);
            x |= (1U - s) << (2 * i + 1);
            psi_sign *= s == 0 ? 1 : -1;
        }
        int phi_sign = 1;
        for (int i = 0; i < n && phi_sign != 0; ++i) {
            const auto [a, b] = dimer_qubits(i, n);
            const int za = static_cast<int>((x >> a) & 1U);
            const int zb = static_cast<int>((x >> b) & 1U);
            phi_sign *= table[static_cast<std::size_t>(config[i])][pair_index(za, zb)];
        }
        total += psi_sign * phi_sign;
    }
    return static_cast<double>(total) * std::ldexp(1.0, -n);
}

int coefficient_sign(const DimerConfig &config, const ModelParams &params) {
    require_length(config, params.n);
    if (params.periodic()) {
        return loop_rule_sign(config);
    }
    const double overlap = spin_basis_overlap(config);
    const double magnitude = std::ldexp(1.0, -(params.n - 1));
    if (std::abs(overlap) < 0.5 * magnitude) {
        return 0;
    }
    return overlap > 0 ? 1 : -1;
}

double coefficient(const DimerConfig &config, const ModelParams &params) {
    return coefficient_sign(config, params) * std::ldexp(1.0, -(params.n - 1));
}

std::vector<DimerConfig> enumerate_active_configs(const ModelParams &params) {
    const int n = params.n;
    const int limit = params.periodic() ? max_periodic_enumeration : max_open_enumeration;
    if (n > limit) {
        throw SizeLimitError("configuration enumeration is limited to n <= " +
                             std::to_string(limit) + " for " +
                             std::string(to_string(params.boundary)) + " chains");
    }
    const std::uint64_t total = std::uint64_t{1} << (2 * n);
    constexpr std::uint64_t block = 4096;
    const std::size_t blocks = static_cast<std::size_t>((total + block - 1) / block);
    std::vector<std::vector<DimerConfig>> found(blocks);
    parallel_for(blocks, [&](std::size_t begin, std::size_t end) {
        for (std::size_t b = begin; b < end; ++b) {
            const std::uint64_t lo = b * block;
            const std::uint64_t hi = std::min(total, lo + block);
            for (std::uint64_t code = lo; code < hi; ++code) {
                const auto config = DimerConfig::from_code(code, n);
                if (params.periodic()) {
                    if (satisfies_selection_rules(config) && loop_rule_sign(config) != 0) {
                        found[b].push_back(config);
                    }
                } else if (coefficient_sign(config, params) != 0) {
                    found[b].push_back(config);
                }
            }
        }
    });
    std::vector<DimerConfig> out;
    for (auto &part : found) {
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

double BellExpansion::magnitude() const noexcept {
    return std::ldexp(1.0, -(params.n - 1));
}

std::vector<double> BellExpansion::coefficients() const {
    std::vector<double> out(size());
    for (std::size_t k = 0; k < size(); ++k) {
        out[k] = coefficient(k);
    }
    return out;
}

BellExpansion build_expansion(const ModelParams &params) {
    BellExpansion e;
    e.params = params;
    e.configs = enumerate_active_configs(params);
    e.signs.reserve(e.configs.size());
    e.energies.reserve(e.configs.size());
    for (const auto &c : e.configs) {
        e.signs.push_back(static_cast<std::int8_t>(coefficient_sign(c, params)));
        e.energies.push_back(config_energy(c, params));
    }
    return e;
}

nlohmann::json to_json(const BellExpansion &expansion) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t k = 0; k < expansion.size(); ++k) {
        nlohmann::json types = nlohmann::json::array();
        const auto &c = expansion.configs[k];
        for (int i = 0; i < c.size(); ++i) {
            types.push_back(static_cast<int>(c[i]));
        }
        entries.push_back({{"config", types},
                           {"sign", static_cast<int>(expansion.signs[k])},
                           {"energy", expansion.energies[k]}});
    }
    return {{"n", expansion.params.n},
            {"J", expansion.params.J},
            {"delta", expansion.params.delta},
            {"boundary", std::string(to_string(expansion.params.boundary))},
            {"entries", entries}};
}

BellExpansion expansion_from_json(const nlohmann::json &doc) {
    BellExpansion e;
    e.params = ModelParams(doc.at("n").get<int>(), doc.at("J").get<double>(),
                           doc.at("delta").get<double>(),
                           parse_boundary(doc.at("boundary").get<std::string>()));
    for (const auto &entry : doc.at("entries")) {
        std::vector<BellType> types;
        for (const auto &t : entry.at("config")) {
            const int mu = t.get<int>();
            require_valid_type(mu);
            types.push_back(static_cast<BellType>(mu));
        }
        DimerConfig config(types);
        require_length(config, e.params.n);
        const int sign = entry.at("sign").get<int>();
        if (sign != 1 && sign != -1) {
            throw std::invalid_argument("expansion entry sign must be +1 or -1");
        }
        e.configs.push_back(config);
        e.signs.push_back(static_cast<std::int8_t>(sign));
        e.energies.push_back(entry.at("energy").get<double>());
    }
    return e;
}

} // namespace dimerquench
