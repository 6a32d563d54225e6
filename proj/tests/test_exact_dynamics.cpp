#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "dimerquench/closed_forms.hpp"
#include "dimerquench/errors.hpp"
#include "dimerquench/exact_dynamics.hpp"
#include "dimerquench/hermitian_eigen.hpp"
#include "oracles.hpp"

using namespace dimerquench;
using Catch::Matchers::WithinAbs;
using std::numbers::pi;

namespace {

ReducedDensityMatrix diagonal_rdm(std::vector<double> diag) {
    ReducedDensityMatrix rho;
    rho.dim = static_cast<int>(diag.size());
    rho.data.assign(diag.size() * diag.size(), 0.0);
    for (std::size_t i = 0; i < diag.size(); ++i) {
        rho.data[i * diag.size() + i] = diag[i];
    }
    return rho;
}

} // namespace

TEST_CASE("evolution phases") {
    const auto e = build_expansion(ModelParams(2, 1.0, 0.0));
    const auto s0 = evolve(e, 0.0);
    for (std::size_t k = 0; k < e.size(); ++k) {
        CHECK(s0.amplitudes()[k] == cplx(e.coefficient(k), 0.0));
    }
    const auto s = evolve(e, pi);
    // config (0,0) has E = -1, so the phase is exp(i pi) = -1
    CHECK_THAT(s.amplitudes()[0].real(), WithinAbs(-0.5, 1e-15));
    CHECK_THAT(s.amplitudes()[0].imag(), WithinAbs(0.0, 1e-15));

    const auto e6 = build_expansion(ModelParams(6, 1.0, 0.8));
    const double t = 1.7;
    const auto s6 = evolve(e6, t);
    const auto k = static_cast<std::size_t>(
        std::find(e6.configs.begin(), e6.configs.end(), DimerConfig{2, 2, 2, 2, 2, 2}) - e6.configs.begin());
    REQUIRE(k < e6.size());
    const cplx phase = s6.amplitudes()[k] / e6.coefficient(k);
    CHECK(std::abs(phase - std::polar(1.0, -1.5 * 0.8 * t)) < 1e-13);
    CHECK_THAT(s6.norm(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("statevector of the singlet product") {
    const auto psi = to_statevector(evolve(build_expansion(ModelParams(2, 1.0, 0.0)), 0.0));
    // (|0101> - |0110> - |1001> + |1010>)/2 in site order 1..4; bit q = site q+1
    CHECK_THAT(psi[0b1010].real(), WithinAbs(0.5, 1e-15));
    CHECK_THAT(psi[0b0110].real(), WithinAbs(-0.5, 1e-15));
    CHECK_THAT(psi[0b1001].real(), WithinAbs(-0.5, 1e-15));
    CHECK_THAT(psi[0b0101].real(), WithinAbs(0.5, 1e-15));
    CHECK_THAT(psi.norm(), WithinAbs(1.0, 1e-15));

    for (int n = 2; n <= 5; ++n) {
        const auto bell = oracle::to_eigen(to_statevector(evolve(build_expansion(ModelParams(n, 1.0, 0.3)), 0.0)));
        CHECK((bell - oracle::initial_state(n)).norm() < 1e-13);
        CHECK((oracle::to_eigen(initial_state(n)) - oracle::initial_state(n)).norm() < 1e-13);
    }
}

TEST_CASE("n = 2 spin-basis amplitudes at finite t") {
    const double delta = 0.6;
    const double t = 0.9;
    const auto psi = to_statevector(evolve(build_expansion(ModelParams(2, 1.0, delta)), t));
    const cplx e0 = std::polar(1.0, -delta * t / 2);
    const cplx ep = std::polar(1.0, -(1 + delta / 2) * t);
    const cplx em = std::polar(1.0, -(1 - delta / 2) * t);
    // site string s1 s2 s3 s4 maps to index s1 + 2 s2 + 4 s3 + 8 s4
    CHECK(std::abs(psi[0b1001] - (-0.5 * e0)) < 1e-14);
    CHECK(std::abs(psi[0b0110] - (-0.5 * e0)) < 1e-14);
    CHECK(std::abs(psi[0b0101] - 0.25 * (1.0 / ep + em)) < 1e-14);
    CHECK(std::abs(psi[0b0011] - 0.25 * (-1.0 / ep + em)) < 1e-14);
}

TEST_CASE("Bell-expansion dynamics equal dense evolution") {
    for (int n = 2; n <= 5; ++n) {
        for (Boundary b : {Boundary::Periodic, Boundary::Open}) {
            const ModelParams p(n, 1.2, 0.45, b);
            const auto e = build_expansion(p);
            const oracle::DenseEvolution dense(p, oracle::initial_state(n));
            for (double t : {0.3, 1.9, 7.4}) {
                const auto psi = to_statevector(evolve(e, t));
                CHECK_THAT(psi.norm(), WithinAbs(1.0, 1e-12));
                const Eigen::VectorXcd ref = dense.state(t);
                CHECK((oracle::to_eigen(psi) - ref).norm() < 1e-9);

                const auto half = half_chain(n);
                const auto rho_ref = oracle::reduced_density_matrix(ref, 2 * n, half);
                const auto pair = subsystem_entropies(psi, half);
                CHECK_THAT(pair.s1, WithinAbs(oracle::entropy_s1(rho_ref), 1e-8));
                CHECK_THAT(pair.s2, WithinAbs(oracle::entropy_s2(rho_ref), 1e-8));
                if (b == Boundary::Periodic) {
                    const auto hp = half_chain_entropies(e, t);
                    CHECK_THAT(hp.s1, WithinAbs(pair.s1, 1e-12));
                }
                CHECK_THAT(loschmidt_echo(e, t), WithinAbs(oracle::echo(oracle::initial_state(n), ref), 1e-10));
            }
        }
    }
}

TEST_CASE("reduced density matrix of the n = 2 chain") {
    const ModelParams p(2, 1.0, 0.5);
    const auto e = build_expansion(p);

    const auto pure = reduced_density_matrix(to_statevector(evolve(e, 0.0)), half_chain(2));
    auto eig0 = hermitian_eigenvalues(pure);
    CHECK_THAT(eig0[0], WithinAbs(1.0, 1e-12));
    CHECK_THAT(eig0[3], WithinAbs(0.0, 1e-12));

    const double t = 1.3;
    const auto rho = reduced_density_matrix(to_statevector(evolve(e, t)), half_chain(2));
    CHECK_THAT(std::abs(rho.trace() - 1.0), WithinAbs(0.0, 1e-12));
    CHECK(hermiticity_error(rho.data, rho.dim) < 1e-12);
    const double c = std::cos(t);
    CHECK_THAT(rho(0, 0).real(), WithinAbs(std::sin(t) * std::sin(t) / 4, 1e-12));
    CHECK_THAT(rho(1, 1).real(), WithinAbs((1 + c * c) / 4, 1e-12));
    CHECK_THAT(rho(1, 2).real(), WithinAbs(-0.5 * c * std::cos(0.5 * t), 1e-12));
    CHECK_THAT(std::abs(rho(1, 2).imag()), WithinAbs(0.0, 1e-12));

    const auto mixed = reduced_density_matrix(to_statevector(evolve(build_expansion(ModelParams(2, 1.0, 0.0)), pi / 2)),
                                              half_chain(2));
    for (double l : hermitian_eigenvalues(mixed)) {
        CHECK_THAT(l, WithinAbs(0.25, 1e-12));
    }

    std::vector<int> bad{0, 0};
    CHECK_THROWS_AS(reduced_density_matrix(to_statevector(evolve(e, t)), bad), std::invalid_argument);
    std::vector<int> all{0, 1, 2, 3};
    CHECK_THROWS_AS(reduced_density_matrix(to_statevector(evolve(e, t)), all), std::invalid_argument);
    CHECK_THROWS_AS(reduced_density_matrix(to_statevector(evolve(e, t)), std::vector<int>{}),
                    std::invalid_argument);
}

TEST_CASE("spectra against eigenvalue formulas") {
    const double t = 1.0;
    const auto rho = reduced_density_matrix(to_statevector(evolve(build_expansion(ModelParams(2, 1.0, 0.5)), t)),
                                            half_chain(2));
    auto eig = hermitian_eigenvalues(rho);
    auto ref = closed_form::spectrum_n2(1.0, 0.5, t);
    std::sort(ref.rbegin(), ref.rend());
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK_THAT(eig[i], WithinAbs(ref[i], 1e-10));
    }

    // n = 3: four eigenvalues sin^2(Jt/2)/8
    const double t3 = 2.1;
    const auto rho3 = reduced_density_matrix(to_statevector(evolve(build_expansion(ModelParams(3, 1.0, 0.7)), t3)),
                                             half_chain(3));
    auto eig3 = hermitian_eigenvalues(rho3);
    const double target = std::pow(std::sin(t3 / 2), 2) / 8;
    int matches = 0;
    for (double l : eig3) {
        matches += std::abs(l - target) < 1e-10;
    }
    CHECK(matches >= 4);

    // Jacobi agrees with Eigen on the same matrix
    const auto ref_eigen = oracle::spectrum(Eigen::Map<const Eigen::MatrixXcd>(rho3.data.data(), 8, 8).transpose());
    auto ascending = eig3;
    std::sort(ascending.begin(), ascending.end());
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK_THAT(ascending[i], WithinAbs(std::clamp(ref_eigen[i], 0.0, 1.0), 1e-12));
    }
}

TEST_CASE("entropy functions") {
    CHECK(von_neumann_entropy(std::vector<double>{1, 0, 0, 0}) == 0.0);
    CHECK_THAT(von_neumann_entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}), WithinAbs(2.0, 1e-15));
    CHECK(renyi2_entropy(std::vector<double>{1, 0}) == 0.0);
    CHECK_THAT(renyi2_entropy(std::vector<double>{0.5, 0.5}), WithinAbs(1.0, 1e-15));
    CHECK_THROWS_AS(von_neumann_entropy(std::vector<double>{0.5, 0.4}), std::domain_error);

    const auto eig = hermitian_eigenvalues(diagonal_rdm({0.5, 0.5}));
    CHECK(eig == std::vector<double>{0.5, 0.5});
    CHECK_THROWS_AS(hermitian_eigenvalues(diagonal_rdm({1.1, -0.1})), std::domain_error);

    ReducedDensityMatrix skew;
    skew.dim = 2;
    skew.data = {0.5, 0.3, -0.3, 0.5};
    CHECK_THROWS_AS(hermitian_eigenvalues(skew), std::invalid_argument);

    // S1 vanishes at Jt = pi for n = 2, delta = 0
    CHECK_THAT(half_chain_entropies(build_expansion(ModelParams(2, 1.0, 0.0)), pi).s1, WithinAbs(0.0, 1e-10));
}

TEST_CASE("entropy is symmetric under complementing the subsystem") {
    for (int n = 2; n <= 5; ++n) {
        const auto psi = to_statevector(evolve(build_expansion(ModelParams(n, 1.0, 0.8)), 2.3));
        std::vector<int> a = half_chain(n);
        std::vector<int> b;
        for (int q = n; q < 2 * n; ++q) {
            b.push_back(q);
        }
        const auto sa = subsystem_entropies(psi, a);
        const auto sb = subsystem_entropies(psi, b);
        CHECK_THAT(sa.s1, WithinAbs(sb.s1, 1e-10));
        CHECK_THAT(sa.s2, WithinAbs(sb.s2, 1e-10));
    }
}

TEST_CASE("Jacobi solver") {
    std::vector<cplx> m{2.0, cplx(0, 1), cplx(0, -1), 2.0};
    const auto r = jacobi_eigenvalues(m, 2);
    CHECK(r.converged);
    CHECK_THAT(r.eigenvalues[0], WithinAbs(3.0, 1e-14));
    CHECK_THAT(r.eigenvalues[1], WithinAbs(1.0, 1e-14));

    // subnormal off-diagonal entries must not disturb the trace
    std::vector<cplx> tiny{0.25, cplx(1e-318, 1e-318), 0.0, cplx(1e-318, -1e-318), 0.75, 0.0, 0.0, 0.0, 0.0};
    const auto tr = jacobi_eigenvalues(tiny, 3);
    CHECK(tr.eigenvalues[0] + tr.eigenvalues[1] + tr.eigenvalues[2] == 1.0);

    // random Hermitian 12x12 against Eigen
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(12, 12);
    a = (a + a.adjoint()).eval();
    std::vector<cplx> flat(144);
    for (int i = 0; i < 12; ++i) {
        for (int j = 0; j < 12; ++j) {
            flat[static_cast<std::size_t>(i * 12 + j)] = a(i, j);
        }
    }
    const auto jr = jacobi_eigenvalues(flat, 12);
    CHECK(jr.converged);
    CHECK(jr.off_norm < 1e-13 * a.norm());
    auto ref = oracle::spectrum(a);
    std::sort(ref.rbegin(), ref.rend());
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK_THAT(jr.eigenvalues[i], WithinAbs(ref[i], 1e-12));
    }
}

TEST_CASE("Loschmidt echo and return rate") {
    for (int n = 2; n <= 6; ++n) {
        CHECK_THAT(loschmidt_echo(build_expansion(ModelParams(n, 1.0, 0.3)), 0.0), WithinAbs(1.0, 1e-14));
    }
    CHECK_THAT(loschmidt_echo(build_expansion(ModelParams(2, 1.0, 0.0)), pi), WithinAbs(0.0, 1e-14));
    CHECK_THAT(loschmidt_echo(build_expansion(ModelParams(4, 1.0, 0.5)), pi), WithinAbs(0.0, 1e-14));

    const auto e = build_expansion(ModelParams(5, 1.0, 0.25));
    const EchoSpectrum spec(e);
    for (double t : {0.1, 2.0, 9.5}) {
        CHECK_THAT(spec(t), WithinAbs(loschmidt_echo(e, t), 1e-13));
        CHECK_THAT(spec(t), WithinAbs(fidelity(initial_state(5), to_statevector(evolve(e, t))), 1e-10));
    }

    CHECK(return_rate(1.0, 8) == 0.0);
    CHECK_THAT(return_rate(std::exp(-8.0), 8), WithinAbs(1.0, 1e-14));
    CHECK(return_rate(0.0, 8) == std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(return_rate(1.5, 8), std::invalid_argument);
    CHECK_THROWS_AS(return_rate(-0.1, 8), std::invalid_argument);

    // the echo expansion reaches n = 10 without statevectors
    const auto e10 = echo_expansion(ModelParams(10, 1.0, 0.5));
    CHECK(e10.size() == (std::size_t{1} << 18));
    CHECK_THROWS_AS(echo_expansion(ModelParams(11, 1.0, 0.5)), SizeLimitError);
}

TEST_CASE("Loschmidt zeros") {
    auto z = find_loschmidt_zeros(ModelParams(2, 1.0, 0.0), 10.0, 0.01);
    REQUIRE(z.size() == 2);
    CHECK_THAT(z[0], WithinAbs(pi, 1e-6));
    CHECK_THAT(z[1], WithinAbs(3 * pi, 1e-6));

    z = find_loschmidt_zeros(ModelParams(8, 1.0, 1.75), 4.0, 0.01);
    REQUIRE(z.size() == 1);
    CHECK_THAT(z[0], WithinAbs(pi, 1e-6));

    CHECK(find_loschmidt_zeros(ModelParams(3, 1.0, 0.0), 10.0, 0.01).empty());
    CHECK_THROWS_AS(find_loschmidt_zeros(ModelParams(2, 1.0, 0.0), 10.0, 0.0), std::invalid_argument);
}

TEST_CASE("periodicity") {
    const auto r = check_periodicity(ModelParams(4, 1.0, 0.5), Observable::S1, make_rational(1, 2), 40);
    CHECK(r.periodic);
    CHECK_THAT(r.period, WithinAbs(4 * pi, 1e-12));
    CHECK(r.max_deviation < 1e-9);

    const auto r2 = check_periodicity(ModelParams(2, 1.0, 1.0), Observable::S1, make_rational(1, 1), 40);
    CHECK_THAT(r2.period, WithinAbs(pi, 1e-12));
    CHECK(r2.periodic);

    const auto golden = Anisotropy::parse("1.618033988749895");
    CHECK_THROWS_AS(check_periodicity(ModelParams(4, 1.0, golden.value), Observable::Echo, golden, 40),
                    std::invalid_argument);
    const auto exact = Anisotropy::parse("7/4");
    CHECK(check_periodicity(ModelParams(3, 1.0, 1.75), Observable::Echo, exact, 40).periodic);

    // the rational must describe params.delta
    CHECK_THROWS_AS(check_periodicity(ModelParams(4, 1.0, 0.5), Observable::S1, make_rational(1, 3), 40),
                    std::invalid_argument);
}

TEST_CASE("observable names") {
    for (auto o : {Observable::S1, Observable::S2, Observable::Echo, Observable::ReturnRate}) {
        CHECK(parse_observable(to_string(o)) == o);
    }
    CHECK_THROWS_AS(parse_observable("S3"), std::invalid_argument);
}

TEST_CASE("size guard") {
    CHECK_THROWS_AS(to_statevector(evolve(build_expansion(ModelParams(13, 1.0, 0.0)), 0.0)), SizeLimitError);
}
