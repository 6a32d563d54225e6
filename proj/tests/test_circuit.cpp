#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "dimerquench/circuit.hpp"
#include "dimerquench/exact_dynamics.hpp"
#include "dimerquench/hadamard_test.hpp"
#include "dimerquench/sampling.hpp"
#include "oracles.hpp"

using namespace dimerquench;
using Catch::Matchers::WithinAbs;
using std::numbers::pi;

namespace {

StateVector random_state(int nq, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> a(std::size_t{1} << nq);
    for (auto &x : a) {
        x = {g(rng), g(rng)};
    }
    StateVector psi(nq, std::move(a));
    psi.normalize();
    return psi;
}

// Dense matrix of a circuit, column by column.
Eigen::MatrixXcd circuit_matrix(const Circuit &c) {
    const auto dim = Eigen::Index{1} << c.num_qubits();
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        m.col(j) = oracle::to_eigen(apply(c, StateVector::basis_state(c.num_qubits(), static_cast<std::uint64_t>(j))));
    }
    return m;
}

} // namespace

TEST_CASE("basic gates") {
    StateVector psi(1);
    Circuit h(1);
    h.h(0);
    apply(h, psi);
    CHECK_THAT(psi[0].real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));
    CHECK_THAT(psi[1].real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));

    auto ten = StateVector::basis_state(2, 0b01); // qubit 0 set
    Circuit cx(2);
    cx.cx(0, 1);
    apply(cx, ten);
    CHECK(ten[0b11] == cplx(1.0, 0.0));

    StateVector zz(2);
    Circuit ezz(2);
    ezz.exp_zz(0.37, 0, 1);
    apply(ezz, zz);
    CHECK(std::abs(zz[0] - std::polar(1.0, -0.37)) < 1e-15);
}

TEST_CASE("gates preserve the norm and match their definitions") {
    const Eigen::Matrix2cd X{{0, 1}, {1, 0}};
    const Eigen::Matrix2cd Y{{0, cplx(0, -1)}, {cplx(0, 1), 0}};
    const Eigen::Matrix2cd Z{{1, 0}, {0, -1}};
    struct Two {
        GateKind kind;
        Eigen::Matrix2cd pauli;
    };
    for (const auto &g : {Two{GateKind::ExpXX, X}, Two{GateKind::ExpYY, Y}, Two{GateKind::ExpZZ, Z}}) {
        const double theta = 0.813;
        Circuit c(2);
        c.add({g.kind, 0, 1, theta, {}});
        Eigen::MatrixXcd pp(4, 4);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                // qubit 0 is the low bit
                pp(i, j) = g.pauli(i >> 1, j >> 1) * g.pauli(i & 1, j & 1);
            }
        }
        const Eigen::MatrixXcd expected =
            std::cos(theta) * Eigen::MatrixXcd::Identity(4, 4) - cplx(0, std::sin(theta)) * pp;
        CHECK((circuit_matrix(c) - expected).norm() < 1e-14);
        CHECK((circuit_matrix(c.lower()) - expected).norm() < 1e-14);
    }

    Circuit all(4);
    all.h(0).x(1).s(2).sdg(3).cx(0, 2).rz(0.4, 1).exp_xx(0.2, 1, 3).exp_yy(1.1, 0, 3).exp_zz(-0.6, 2, 1);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto psi = random_state(4, seed);
        for (const auto &g : all.ops()) {
            Circuit one(4);
            one.add(g);
            apply(one, psi);
            CHECK_THAT(psi.norm(), WithinAbs(1.0, 1e-13));
        }
    }
    // inverse undoes the circuit, also after lowering and under a control
    const auto u = circuit_matrix(all);
    CHECK((circuit_matrix(all.inverse()) * u - Eigen::MatrixXcd::Identity(16, 16)).norm() < 1e-13);
    CHECK((circuit_matrix(all.lower()) - u).norm() < 1e-13);

    Circuit controlled(5);
    controlled.append_controlled(all, 4);
    const auto cu = circuit_matrix(controlled);
    CHECK((cu.topLeftCorner(16, 16) - Eigen::MatrixXcd::Identity(16, 16)).norm() < 1e-13);
    CHECK((cu.bottomRightCorner(16, 16) - u).norm() < 1e-13);
    CHECK((circuit_matrix(controlled.lower()) - cu).norm() < 1e-13);
}

TEST_CASE("invalid circuits") {
    Circuit c(2);
    CHECK_THROWS_AS(c.h(2), std::out_of_range);
    CHECK_THROWS_AS(c.cx(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(c.exp_zz(0.1, 0, 0), std::invalid_argument);
    StateVector three(3);
    CHECK_THROWS_AS(apply(c, three), std::invalid_argument);
    Circuit inner(2);
    inner.h(0);
    Circuit outer(2);
    CHECK_THROWS_AS(outer.append_controlled(inner, 0), std::invalid_argument);
}

TEST_CASE("Bell preparation matches the Bell amplitudes with phase") {
    for (int mu = 0; mu < 4; ++mu) {
        for (auto [a, b] : {std::pair{0, 1}, std::pair{3, 0}}) {
            StateVector psi(4);
            apply(bell_prep_circuit(static_cast<BellType>(mu), a, b, 4), psi);
            const auto amps = bell_amplitudes(static_cast<BellType>(mu));
            for (int za = 0; za < 2; ++za) {
                for (int zb = 0; zb < 2; ++zb) {
                    const std::size_t idx = (static_cast<std::size_t>(za) << a) | (static_cast<std::size_t>(zb) << b);
                    CHECK(std::abs(psi[idx] - amps[static_cast<std::size_t>(pair_index(za, zb))]) < 1e-15);
                }
            }
        }
    }
    for (int n = 2; n <= 4; ++n) {
        StateVector psi(2 * n);
        apply(initial_state_circuit(n, 2 * n), psi);
        CHECK((oracle::to_eigen(psi) - oracle::initial_state(n)).norm() < 1e-14);
    }
    const DimerConfig c{3, 1, 2};
    StateVector phi(6);
    apply(config_prep_circuit(c, 6), phi);
    CHECK((oracle::to_eigen(phi) - oracle::bell_product(c)).norm() < 1e-14);
}

TEST_CASE("evolution circuit") {
    for (int n = 2; n <= 4; ++n) {
        for (Boundary b : {Boundary::Periodic, Boundary::Open}) {
            const ModelParams p(n, 0.8, 0.65, b);
            const oracle::DenseEvolution dense(p, oracle::initial_state(n));
            for (double t : {0.0, 0.7, 5.3}) {
                const auto u = circuit_matrix(evolution_circuit(p, t));
                CHECK((u - dense.unitary(t)).norm() < 1e-10);
            }
        }
    }
    const ModelParams p(3, 1.0, 0.4);
    const auto psi = random_state(6, 9);
    auto twice = apply(evolution_circuit(p, 1.3), psi);
    apply(evolution_circuit(p, 1.3), twice);
    CHECK(std::abs(std::abs(inner_product(twice, apply(evolution_circuit(p, 2.6), psi))) - 1.0) < 1e-10);

    const auto zero = apply(evolution_circuit(ModelParams(2, 1.0, 0.0), pi), initial_state(2));
    CHECK_THAT(fidelity(initial_state(2), zero), WithinAbs(0.0, 1e-14));
    CHECK(evolution_circuit(p, 0.1).size() == evolution_circuit(p, 100.0).size());
}

TEST_CASE("QASM export") {
    Circuit c(3);
    c.h(0).cx(0, 1).exp_zz(0.25, 1, 2);
    Circuit cc(4);
    cc.append_controlled(c, 3);
    const auto text = to_qasm3(cc);
    CHECK(text.find("OPENQASM 3") == 0);
    CHECK(text.find("qubit[4] q;") != std::string::npos);
    CHECK(text.find("ctrl @ h q[3], q[0];") != std::string::npos);
    CHECK(text.find("ctrl(2) @") == std::string::npos);
    CHECK(text.find("ctrl @ cx q[3], q[0], q[1];") != std::string::npos);
    CHECK(text.find("ctrl @ rz(0.5) q[3], q[2];") != std::string::npos);
}

TEST_CASE("sampling") {
    const auto zeros = measure_z(StateVector(3), 100, 5);
    CHECK(std::all_of(zeros.begin(), zeros.end(), [](std::uint64_t b) { return b == 0; }));

    StateVector bell(2);
    apply(bell_prep_circuit(BellType::Psi2, 0, 1, 2), bell);
    const auto shots = measure_z(bell, 8192, 11);
    const auto ones = std::count(shots.begin(), shots.end(), 0b11U);
    CHECK(std::all_of(shots.begin(), shots.end(), [](std::uint64_t b) { return b == 0 || b == 3; }));
    CHECK_THAT(static_cast<double>(ones) / 8192, WithinAbs(0.5, 0.02));
    CHECK(measure_z(bell, 8192, 11) == shots);
    CHECK(measure_z(bell, 8192, 12) != shots);

    const std::vector<double> p{0.25, 0.0, 0.75, 0.0};
    const auto cdf = cumulative_distribution(p);
    CHECK(cdf.back() == 1.0);
    CHECK(sample_index(cdf, 0.0) == 0);
    CHECK(sample_index(cdf, 0.3) == 2);
    CHECK(sample_index(cdf, 0.9999999999) == 2);
    CHECK_THROWS(measure_z(bell, 0, 1));

    const CounterRng rng(42, 3);
    CHECK(rng.bits(7) == CounterRng(42, 3).bits(7));
    CHECK(rng.bits(7) != CounterRng(42, 4).bits(7));
    for (std::uint64_t i = 0; i < 1000; ++i) {
        CHECK(rng.below(i, 3) < 3);
        const double u = rng.uniform(i);
        CHECK((u >= 0.0 && u < 1.0));
    }
}

TEST_CASE("Hadamard test, exact mode") {
    CHECK_THAT(estimate_coefficient(DimerConfig{0, 0}).value, WithinAbs(0.5, 1e-12));
    CHECK_THAT(estimate_coefficient(DimerConfig{2, 2}).value, WithinAbs(-0.5, 1e-12));
    const auto prep = initial_state_circuit(2, 4);
    CHECK_THAT(hadamard_test(prep, prep).value, WithinAbs(1.0, 1e-14));

    for (int n = 2; n <= 4; ++n) {
        const ModelParams p(n, 1.0, 0.0);
        for (const auto &c : enumerate_active_configs(p)) {
            CHECK_THAT(estimate_coefficient(c).value, WithinAbs(coefficient(c, p), 1e-12));
        }
        int inactive = 0;
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * n)) && inactive < 20; ++code) {
            const auto c = DimerConfig::from_code(code, n);
            if (coefficient(c, p) == 0.0) {
                CHECK_THAT(estimate_coefficient(c).value, WithinAbs(0.0, 1e-12));
                ++inactive;
            }
        }
    }
}

TEST_CASE("Hadamard test, shot mode") {
    const DimerConfig c{2, 2};
    const auto est = estimate_coefficient(c, 8192, 3);
    CHECK(est.shots == 8192);
    CHECK(est.std_error <= 1.0 / std::sqrt(8192.0));
    CHECK(std::abs(est.value + 0.5) <= 5.0 / std::sqrt(8192.0));
    CHECK(estimate_coefficient(c, 8192, 3).value == est.value);

    int within = 0;
    const int trials = 100;
    for (int s = 0; s < trials; ++s) {
        const auto e = estimate_coefficient(DimerConfig{0, 0}, 1024, 100 + static_cast<std::uint64_t>(s));
        within += std::abs(e.value - 0.5) <= 5.0 / std::sqrt(1024.0);
    }
    CHECK(within >= 99);
}

TEST_CASE("state reconstruction from estimates") {
    const ModelParams p(2, 1.0, 0.5);
    const auto configs = enumerate_active_configs(p);
    std::vector<CoefficientEstimate> noisy;
    for (std::size_t k = 0; k < configs.size(); ++k) {
        noisy.push_back({configs[k], coefficient(configs[k], p) * 0.9});
    }
    const double t = 1.1;
    const auto rec = reconstruct_state_from_estimates(noisy, p, t);
    const auto exact = evolve(build_expansion(p), t);
    for (std::size_t k = 0; k < configs.size(); ++k) {
        CHECK(std::abs(rec.amplitudes()[k] - exact.amplitudes()[k]) < 1e-14);
    }

    std::vector<CoefficientEstimate> flat;
    for (const auto &c : configs) {
        flat.push_back({c, 0.45 * coefficient(c, p) / 0.5});
    }
    const auto r0 = reconstruct_state_from_estimates(flat, p, 0.0);
    for (std::size_t k = 0; k < configs.size(); ++k) {
        CHECK_THAT(r0.amplitudes()[k].real(), WithinAbs(coefficient(configs[k], p), 1e-15));
    }

    auto zeros = flat;
    for (auto &e : zeros) {
        e.value = 0.0;
    }
    CHECK_THROWS_AS(reconstruct_state_from_estimates(zeros, p, 0.0), std::invalid_argument);
    auto missing = flat;
    missing.pop_back();
    CHECK_THROWS_AS(reconstruct_state_from_estimates(missing, p, 0.0), std::invalid_argument);
    auto twice = flat;
    twice.push_back(flat.front());
    CHECK_THROWS_AS(reconstruct_state_from_estimates(twice, p, 0.0), std::invalid_argument);
}
