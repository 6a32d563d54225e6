#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dimerquench::oracle {

namespace {

int bit(std::size_t index, int q) { return static_cast<int>((index >> q) & 1U); }

} // namespace

Eigen::MatrixXd hamiltonian(const ModelParams &params) {
    const int nq = params.num_qubits();
    if (nq > 14) {
        throw std::invalid_argument("dense Hamiltonian limited to 14 qubits");
    }
    const auto dim = static_cast<Eigen::Index>(1) << nq;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    const int bonds = params.periodic() ? params.n : params.n - 1;
    for (Eigen::Index s = 0; s < dim; ++s) {
        const auto idx = static_cast<std::size_t>(s);
        for (int i = 0; i < bonds; ++i) {
            const int a = 2 * i + 1;
            const int b = (2 * i + 2) % nq;
            const bool same = bit(idx, a) == bit(idx, b);
            h(s, s) += params.J * params.delta * (same ? 0.25 : -0.25);
            if (!same) {
                // SxSx + SySy = (S+S- + S-S+)/2 flips an antiparallel pair
                const auto flipped = static_cast<Eigen::Index>(idx ^ ((std::size_t{1} << a) | (std::size_t{1} << b)));
                h(flipped, s) += 0.5 * params.J;
            }
        }
    }
    return h;
}

Eigen::VectorXcd initial_state(int n) {
    // local index of a pair: bit 0 = first qubit; singlet (|01> - |10>)/sqrt2
    Eigen::VectorXcd singlet(4);
    singlet << 0.0, -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
    Eigen::VectorXcd out = singlet;
    for (int i = 1; i < n; ++i) {
        Eigen::VectorXcd next(out.size() * 4);
        for (Eigen::Index hi = 0; hi < 4; ++hi) {
            next.segment(hi * out.size(), out.size()) = singlet(hi) * out;
        }
        out = std::move(next);
    }
    return out;
}

Eigen::VectorXcd bell_product(const DimerConfig &config) {
    const int n = config.size();
    const int nq = 2 * n;
    const auto dim = static_cast<Eigen::Index>(1) << nq;
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::VectorXcd out(dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
        const auto idx = static_cast<std::size_t>(s);
        std::complex<double> amp = 1.0;
        for (int i = 0; i < n && amp != 0.0; ++i) {
            const int a = bit(idx, 2 * i + 1);
            const int b = bit(idx, (2 * i + 2) % nq);
            switch (static_cast<int>(config[i])) {
            case 0:
                amp *= a == b ? 0.0 : (a == 0 ? r : -r);
                break;
            case 1:
                amp *= a == b ? 0.0 : r;
                break;
            case 2:
                amp *= a == b ? r : 0.0;
                break;
            default:
                amp *= a == b ? (a == 0 ? r : -r) : 0.0;
                break;
            }
        }
        out(s) = amp;
    }
    return out;
}

double coefficient(const DimerConfig &config) {
    return bell_product(config).dot(initial_state(config.size())).real();
}

DenseEvolution::DenseEvolution(const ModelParams &params, const Eigen::VectorXcd &psi) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian(params));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("dense diagonalization failed");
    }
    vectors_ = solver.eigenvectors();
    energies_ = solver.eigenvalues();
    weights_ = vectors_.transpose().cast<std::complex<double>>() * psi;
}

Eigen::VectorXcd DenseEvolution::state(double t) const {
    Eigen::VectorXcd phased(weights_.size());
    for (Eigen::Index k = 0; k < weights_.size(); ++k) {
        phased(k) = weights_(k) * std::polar(1.0, -energies_(k) * t);
    }
    return vectors_.cast<std::complex<double>>() * phased;
}

Eigen::MatrixXcd DenseEvolution::unitary(double t) const {
    Eigen::VectorXcd phases(energies_.size());
    for (Eigen::Index k = 0; k < energies_.size(); ++k) {
        phases(k) = std::polar(1.0, -energies_(k) * t);
    }
    const Eigen::MatrixXcd v = vectors_.cast<std::complex<double>>();
    return v * phases.asDiagonal() * v.adjoint();
}

Eigen::VectorXcd to_eigen(const StateVector &psi) {
    const auto amps = psi.amplitudes();
    return Eigen::Map<const Eigen::VectorXcd>(amps.data(), static_cast<Eigen::Index>(amps.size()));
}

StateVector from_eigen(const Eigen::VectorXcd &v) {
    int nq = 0;
    while ((Eigen::Index{1} << nq) < v.size()) {
        ++nq;
    }
    return StateVector(nq, std::vector<cplx>(v.data(), v.data() + v.size()));
}

Eigen::MatrixXcd reduced_density_matrix(const Eigen::VectorXcd &psi, int num_qubits,
                                        std::span<const int> subsystem) {
    const int na = static_cast<int>(subsystem.size());
    const Eigen::Index da = Eigen::Index{1} << na;
    const Eigen::Index db = Eigen::Index{1} << (num_qubits - na);
    std::vector<int> rest;
    for (int q = 0; q < num_qubits; ++q) {
        if (std::find(subsystem.begin(), subsystem.end(), q) == subsystem.end()) {
            rest.push_back(q);
        }
    }
    // psi as a da x db matrix, rho = M M^dagger
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(da, db);
    for (Eigen::Index s = 0; s < psi.size(); ++s) {
        const auto idx = static_cast<std::size_t>(s);
        Eigen::Index row = 0;
        Eigen::Index col = 0;
        for (int j = 0; j < na; ++j) {
            row |= static_cast<Eigen::Index>(bit(idx, subsystem[static_cast<std::size_t>(j)])) << j;
        }
        for (std::size_t j = 0; j < rest.size(); ++j) {
            col |= static_cast<Eigen::Index>(bit(idx, rest[j])) << j;
        }
        m(row, col) = psi(s);
    }
    return m * m.adjoint();
}

std::vector<double> spectrum(const Eigen::MatrixXcd &rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double entropy_s1(const Eigen::MatrixXcd &rho) {
    double s = 0.0;
    for (double l : spectrum(rho)) {
        if (l > 0.0) {
            s -= l * std::log2(l);
        }
    }
    return s;
}

double entropy_s2(const Eigen::MatrixXcd &rho) {
    return -std::log2((rho * rho).trace().real());
}

double echo(const Eigen::VectorXcd &psi0, const Eigen::VectorXcd &psi) {
    return std::norm(psi0.dot(psi));
}

} // namespace dimerquench::oracle
