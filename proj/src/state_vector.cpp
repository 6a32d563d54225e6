#include "dimerquench/state_vector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dimerquench/errors.hpp"
#include "dimerquench/parallel.hpp"

namespace dimerquench {

namespace {

// below this many amplitude pairs the thread start-up costs more than the work
constexpr std::size_t parallel_threshold = std::size_t{1} << 15;

void check_qubit_count(int n_qubits) {
    if (n_qubits < 0) {
        throw std::invalid_argument("negative qubit count");
    }
    if (n_qubits > StateVector::max_qubits) {
        throw SizeLimitError("statevector limited to " +
                             std::to_string(StateVector::max_qubits) + " qubits, requested " +
                             std::to_string(n_qubits));
    }
}

void check_target(int target, int n_qubits, std::uint64_t control_mask) {
    if (target < 0 || target >= n_qubits) {
        throw std::out_of_range("target qubit " + std::to_string(target) + " out of range");
    }
    if ((control_mask >> target) & 1U) {
        throw std::invalid_argument("target qubit is also a control");
    }
    if (n_qubits < 64 && (control_mask >> n_qubits) != 0) {
        throw std::out_of_range("control qubit out of range");
    }
}

// Index with a zero inserted at bit position `bit`.
inline std::uint64_t insert_zero(std::uint64_t i, int bit) noexcept {
    const std::uint64_t low = i & ((std::uint64_t{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | low;
}

template <class Kernel>
void for_each_pair(std::size_t dim, int target, std::uint64_t control_mask, Kernel &&kernel) {
    const std::size_t pairs = dim / 2;
    const std::uint64_t step = std::uint64_t{1} << target;
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint64_t i0 = insert_zero(i, target);
            if ((i0 & control_mask) != control_mask) {
                continue;
            }
            kernel(i0, i0 | step);
        }
    };
    if (pairs < parallel_threshold) {
        run(0, pairs);
    } else {
        parallel_for(pairs, run);
    }
}

} // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    check_qubit_count(n_qubits);
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude count " + std::to_string(amps_.size()) +
                                    " does not match 2^" + std::to_string(n_qubits));
    }
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.dim()) {
        throw std::out_of_range("basis index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto &a : amps_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

void StateVector::normalize() {
    const double nrm = norm();
    if (nrm == 0.0) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    for (auto &a : amps_) {
        a /= nrm;
    }
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        p[i] = std::norm(amps_[i]);
    }
    return p;
}

void StateVector::apply_1q(const Matrix2 &u, int target, std::uint64_t control_mask) {
    check_target(target, n_qubits_, control_mask);
    cplx *a = amps_.data();
    for_each_pair(amps_.size(), target, control_mask, [&](std::uint64_t i0, std::uint64_t i1) {
        const cplx x = a[i0];
        const cplx y = a[i1];
        a[i0] = u[0] * x + u[1] * y;
        a[i1] = u[2] * x + u[3] * y;
    });
}

void StateVector::apply_diag(cplx d0, cplx d1, int target, std::uint64_t control_mask) {
    check_target(target, n_qubits_, control_mask);
    cplx *a = amps_.data();
    for_each_pair(amps_.size(), target, control_mask, [&](std::uint64_t i0, std::uint64_t i1) {
        a[i0] *= d0;
        a[i1] *= d1;
    });
}

void StateVector::apply_x(int target, std::uint64_t control_mask) {
    check_target(target, n_qubits_, control_mask);
    cplx *a = amps_.data();
    for_each_pair(amps_.size(), target, control_mask,
                  [&](std::uint64_t i0, std::uint64_t i1) { std::swap(a[i0], a[i1]); });
}

cplx inner_product(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("inner product of states with different qubit counts");
    }
    cplx sum{0.0, 0.0};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += std::conj(x[i]) * y[i];
    }
    return sum;
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(inner_product(a, b));
}

} // namespace dimerquench
