#include "dimerquench/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace dimerquench {

using cplx = std::complex<double>;

double hermiticity_error(std::span<const cplx> matrix, int dim) {
    if (dim < 0 || matrix.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
        throw std::invalid_argument("matrix storage does not match dimension");
    }
    double err = 0.0;
    const auto d = static_cast<std::size_t>(dim);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            err = std::max(err, std::abs(matrix[i * d + j] - std::conj(matrix[j * d + i])));
        }
    }
    return err;
}

JacobiResult jacobi_eigenvalues(std::span<const cplx> matrix, int dim, double rel_tol,
                                int max_sweeps, double hermitian_tol) {
    if (dim <= 0) {
        throw std::invalid_argument("matrix dimension must be positive");
    }
    const double herm = hermiticity_error(matrix, dim);
    double frob = 0.0;
    for (const auto &v : matrix) {
        frob += std::norm(v);
    }
    frob = std::sqrt(frob);
    if (herm > hermitian_tol * std::max(1.0, frob)) {
        throw std::invalid_argument("matrix is not Hermitian (deviation " + std::to_string(herm) +
                                    ")");
    }

    const auto n = static_cast<std::size_t>(dim);
    std::vector<cplx> a(matrix.begin(), matrix.end());
    // symmetrize and force a real diagonal so round-off in the input cannot drift
    for (std::size_t i = 0; i < n; ++i) {
        a[i * n + i] = a[i * n + i].real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (a[i * n + j] + std::conj(a[j * n + i]));
            a[i * n + j] = v;
            a[j * n + i] = std::conj(v);
        }
    }

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                s += 2.0 * std::norm(a[i * n + j]);
            }
        }
        return std::sqrt(s);
    };

    JacobiResult result;
    const double target = rel_tol * frob;
    double off = off_norm();
    while (off > target && result.sweeps < max_sweeps) {
        ++result.sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a[p * n + q];
                const double mag = std::abs(apq);
                if (mag == 0.0) {
                    continue;
                }
                // Negligible entries are dropped: rotating them gains nothing,
                // and for subnormal values conj(apq)/mag is far from unit modulus.
                const double scale = std::abs(a[p * n + p].real()) + std::abs(a[q * n + q].real());
                if (mag < std::numeric_limits<double>::min() || mag < 1e-18 * scale) {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                // rephase: A <- P^H A P with P = diag(.., e^{-i phi} at q, ..)
                const cplx phase = std::polar(1.0, -std::arg(apq));
                for (std::size_t k = 0; k < n; ++k) {
                    a[k * n + q] *= phase;
                    a[q * n + k] *= std::conj(phase);
                }
                const double app = a[p * n + p].real();
                const double aqq = a[q * n + q].real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = t * c;
                // columns, then rows, of the real rotation [[c, s], [-s, c]]
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx kp = a[k * n + p];
                    const cplx kq = a[k * n + q];
                    a[k * n + p] = c * kp - s * kq;
                    a[k * n + q] = s * kp + c * kq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx pk = a[p * n + k];
                    const cplx qk = a[q * n + k];
                    a[p * n + k] = c * pk - s * qk;
                    a[q * n + k] = s * pk + c * qk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                a[p * n + p] = a[p * n + p].real();
                a[q * n + q] = a[q * n + q].real();
            }
        }
        off = off_norm();
    }
    result.off_norm = off;
    result.converged = off <= target;
    result.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.eigenvalues[i] = a[i * n + i].real();
    }
    std::sort(result.eigenvalues.begin(), result.eigenvalues.end(), std::greater<>());
    return result;
}

} // namespace dimerquench
