#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "dimerquench/bell_basis.hpp"
#include "oracles.hpp"

using namespace dimerquench;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<DimerConfig> all_configs(int n) {
    std::vector<DimerConfig> out;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * n)); ++code) {
        out.push_back(DimerConfig::from_code(code, n));
    }
    return out;
}

} // namespace

TEST_CASE("Bell amplitudes") {
    const double r = 1.0 / std::sqrt(2.0);
    auto a0 = bell_amplitudes(BellType::Psi0);
    CHECK(a0[0] == 0.0);
    CHECK_THAT(a0[1].real(), WithinAbs(r, 1e-15));
    CHECK_THAT(a0[2].real(), WithinAbs(-r, 1e-15));
    auto a2 = bell_amplitudes(BellType::Psi2);
    CHECK_THAT(a2[0].real(), WithinAbs(r, 1e-15));
    CHECK_THAT(a2[3].real(), WithinAbs(r, 1e-15));
    auto a3 = bell_amplitudes(BellType::Psi3);
    CHECK_THAT(a3[3].real(), WithinAbs(-r, 1e-15));

    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const auto u = bell_amplitudes(static_cast<BellType>(a));
            const auto v = bell_amplitudes(static_cast<BellType>(b));
            std::complex<double> dot = 0.0;
            for (int i = 0; i < 4; ++i) {
                dot += std::conj(u[i]) * v[i];
            }
            CHECK_THAT(std::abs(dot), WithinAbs(a == b ? 1.0 : 0.0, 1e-15));
        }
    }
}

TEST_CASE("dimer and config energies") {
    CHECK(dimer_energy(BellType::Psi0, 1.0, 0.0) == -0.5);
    CHECK(dimer_energy(BellType::Psi2, 1.0, 0.0) == 0.0);
    CHECK(dimer_energy(BellType::Psi1, 2.0, 1.0) == 0.5);
    CHECK(config_energy(DimerConfig{0, 0}, 1.0, 0.0) == -1.0);
    CHECK(config_energy(DimerConfig{2, 2}, 1.0, 1.0) == 0.5);
    CHECK(config_energy(DimerConfig{0, 0, 0, 0, 0, 0}, 1.0, 1.0) == -4.5);

    // each Bell state is an eigenvector of the dense two-site Hamiltonian
    const ModelParams p(2, 1.3, 0.7);
    const Eigen::MatrixXd h = oracle::hamiltonian(p);
    for (std::uint64_t code = 0; code < 16; ++code) {
        const auto c = DimerConfig::from_code(code, 2);
        const Eigen::VectorXcd phi = oracle::bell_product(c);
        const Eigen::VectorXcd hphi = h.cast<std::complex<double>>() * phi;
        CHECK((hphi - config_energy(c, p) * phi).norm() < 1e-12);
    }
}

TEST_CASE("DimerConfig ordering and text") {
    const DimerConfig c{0, 1, 2, 3};
    CHECK(c.size() == 4);
    CHECK(c.to_string() == "0123");
    CHECK(c[2] == BellType::Psi2);
    CHECK(c.count(BellType::Psi3) == 1);
    CHECK(DimerConfig{0, 3} < DimerConfig{1, 0});
    CHECK(DimerConfig::from_code(c.code(), 4) == c);
}

TEST_CASE("n = 2 coefficients") {
    const ModelParams p(2, 1.0, 0.0);
    CHECK(coefficient(DimerConfig{0, 0}, p) == 0.5);
    CHECK(coefficient(DimerConfig{1, 1}, p) == 0.5);
    CHECK(coefficient(DimerConfig{2, 2}, p) == -0.5);
    CHECK(coefficient(DimerConfig{3, 3}, p) == 0.5);
    CHECK(coefficient(DimerConfig{0, 1}, p) == 0.0);

    const auto e = build_expansion(p);
    REQUIRE(e.size() == 4);
    CHECK(e.configs == std::vector<DimerConfig>{{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    CHECK(e.coefficients() == std::vector<double>{0.5, 0.5, -0.5, 0.5});
}

TEST_CASE("loop rule equals brute force for every configuration, n <= 5") {
    for (int n = 2; n <= 5; ++n) {
        const ModelParams p(n, 1.0, 0.3);
        const Eigen::VectorXcd psi0 = oracle::initial_state(n);
        for (const auto &c : all_configs(n)) {
            const double brute = oracle::bell_product(c).dot(psi0).real();
            const double a = coefficient(c, p);
            INFO("n=" << n << " config " << c.to_string());
            REQUIRE(std::abs(a - brute) < 1e-12);
            if (!satisfies_selection_rules(c)) {
                REQUIRE(std::abs(brute) < 1e-14);
            }
        }
    }
}

TEST_CASE("expansion invariants") {
    for (int n = 2; n <= 6; ++n) {
        const auto e = build_expansion(ModelParams(n, 1.0, 0.5));
        CHECK(e.size() == (std::size_t{1} << (2 * (n - 1))));
        CHECK(e.magnitude() == std::ldexp(1.0, -(n - 1)));
        double norm = 0.0;
        for (std::size_t k = 0; k < e.size(); ++k) {
            norm += e.coefficient(k) * e.coefficient(k);
            CHECK(satisfies_selection_rules(e.configs[k]));
        }
        CHECK_THAT(norm, WithinAbs(1.0, 1e-12));
        CHECK(std::is_sorted(e.configs.begin(), e.configs.end()));
    }
}

TEST_CASE("coefficients do not depend on J or delta") {
    const auto a = build_expansion(ModelParams(4, 1.0, 0.0));
    const auto b = build_expansion(ModelParams(4, 2.5, 1.75));
    CHECK(a.configs == b.configs);
    CHECK(a.signs == b.signs);
}

TEST_CASE("open chain coefficients match brute force") {
    for (int n = 2; n <= 4; ++n) {
        const ModelParams p(n, 1.0, 0.5, Boundary::Open);
        const auto e = build_expansion(p);
        double norm = 0.0;
        for (std::size_t k = 0; k < e.size(); ++k) {
            CHECK_THAT(e.coefficient(k), WithinAbs(oracle::coefficient(e.configs[k]), 1e-12));
            norm += e.coefficient(k) * e.coefficient(k);
        }
        CHECK_THAT(norm, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("n = 6 multiset classes") {
    const auto e = build_expansion(ModelParams(6, 1.0, 1.0));
    std::map<std::string, int> classes;
    for (const auto &c : e.configs) {
        auto s = c.to_string();
        std::sort(s.begin(), s.end());
        ++classes[s];
    }
    CHECK(classes.at("000000") == 1);
    CHECK(classes.at("001122") == 90);
    CHECK(classes.at("222222") == 1);
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(ModelParams(1, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(2, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS(coefficient(DimerConfig{0, 0, 0}, ModelParams(2, 1.0, 0.0)));
    CHECK_THROWS(DimerConfig{0, 4});
}

TEST_CASE("expansion JSON round trip") {
    const auto e = build_expansion(ModelParams(3, 1.5, 0.5));
    const auto j = to_json(e);
    CHECK(j.at("entries").size() == 16);
    const auto back = expansion_from_json(j);
    CHECK(back.configs == e.configs);
    CHECK(back.signs == e.signs);
    CHECK(back.energies == e.energies);
    CHECK(back.params == e.params);
}
