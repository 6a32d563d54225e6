#include "dimerquench/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace dimerquench {

namespace {

bool is_pair_gate(GateKind kind) noexcept {
    return kind == GateKind::CNOT || kind == GateKind::ExpZZ || kind == GateKind::ExpXX ||
           kind == GateKind::ExpYY;
}

bool is_exp_gate(GateKind kind) noexcept {
    return kind == GateKind::ExpZZ || kind == GateKind::ExpXX || kind == GateKind::ExpYY;
}

std::uint64_t control_mask(const std::vector<int> &controls) {
    std::uint64_t mask = 0;
    for (int c : controls) {
        mask |= std::uint64_t{1} << c;
    }
    return mask;
}

Gate plain(GateKind kind, int q0, int q1 = -1, double theta = 0.0,
           std::vector<int> controls = {}) {
    Gate g;
    g.kind = kind;
    g.q0 = q0;
    g.q1 = q1;
    g.theta = theta;
    g.controls = std::move(controls);
    return g;
}

std::string format_angle(double theta) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), theta);
    return std::string(buf, res.ptr);
}

} // namespace

std::string_view to_string(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::H:
        return "h";
    case GateKind::X:
        return "x";
    case GateKind::S:
        return "s";
    case GateKind::Sdg:
        return "sdg";
    case GateKind::CNOT:
        return "cx";
    case GateKind::RZ:
        return "rz";
    case GateKind::ExpZZ:
        return "exp_zz";
    case GateKind::ExpXX:
        return "exp_xx";
    case GateKind::ExpYY:
        return "exp_yy";
    }
    return "?";
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > StateVector::max_qubits) {
        throw std::invalid_argument("circuit qubit count out of range: " +
                                    std::to_string(n_qubits));
    }
}

void Circuit::check_qubit(int q) const {
    if (q < 0 || q >= n_qubits_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " outside a " +
                                std::to_string(n_qubits_) + "-qubit circuit");
    }
}

Circuit &Circuit::add(Gate gate) {
    check_qubit(gate.q0);
    std::vector<int> used{gate.q0};
    if (is_pair_gate(gate.kind)) {
        check_qubit(gate.q1);
        used.push_back(gate.q1);
    }
    for (int c : gate.controls) {
        check_qubit(c);
        used.push_back(c);
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end()) {
        throw std::invalid_argument(std::string("gate ") + std::string(to_string(gate.kind)) +
                                    " uses a qubit twice");
    }
    if (!std::isfinite(gate.theta)) {
        throw std::invalid_argument("gate angle must be finite");
    }
    ops_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::h(int q) { return add(plain(GateKind::H, q)); }
Circuit &Circuit::x(int q) { return add(plain(GateKind::X, q)); }
Circuit &Circuit::s(int q) { return add(plain(GateKind::S, q)); }
Circuit &Circuit::sdg(int q) { return add(plain(GateKind::Sdg, q)); }
Circuit &Circuit::cx(int control, int target) {
    return add(plain(GateKind::CNOT, control, target));
}
Circuit &Circuit::rz(double theta, int q) { return add(plain(GateKind::RZ, q, -1, theta)); }
Circuit &Circuit::exp_zz(double theta, int a, int b) {
    return add(plain(GateKind::ExpZZ, a, b, theta));
}
Circuit &Circuit::exp_xx(double theta, int a, int b) {
    return add(plain(GateKind::ExpXX, a, b, theta));
}
Circuit &Circuit::exp_yy(double theta, int a, int b) {
    return add(plain(GateKind::ExpYY, a, b, theta));
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.n_qubits_ > n_qubits_) {
        throw std::invalid_argument("appended circuit has more qubits than the target");
    }
    for (const auto &g : other.ops_) {
        add(g);
    }
    return *this;
}

Circuit &Circuit::append_controlled(const Circuit &other, int ancilla) {
    check_qubit(ancilla);
    if (other.n_qubits_ > n_qubits_) {
        throw std::invalid_argument("controlled circuit has more qubits than the target");
    }
    for (const auto &g : other.ops_) {
        Gate promoted = g;
        promoted.controls.push_back(ancilla);
        add(std::move(promoted));
    }
    return *this;
}

Circuit Circuit::inverse() const {
    Circuit inv(n_qubits_);
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        Gate g = *it;
        switch (g.kind) {
        case GateKind::S:
            g.kind = GateKind::Sdg;
            break;
        case GateKind::Sdg:
            g.kind = GateKind::S;
            break;
        case GateKind::RZ:
        case GateKind::ExpZZ:
        case GateKind::ExpXX:
        case GateKind::ExpYY:
            g.theta = -g.theta;
            break;
        default:
            break;
        }
        inv.ops_.push_back(std::move(g));
    }
    return inv;
}

Circuit Circuit::lower() const {
    Circuit out(n_qubits_);
    for (const auto &g : ops_) {
        if (!is_exp_gate(g.kind)) {
            out.ops_.push_back(g);
            continue;
        }
        const int a = g.q0;
        const int b = g.q1;
        auto basis_in = [&] {
            if (g.kind == GateKind::ExpXX) {
                out.h(a).h(b);
            } else if (g.kind == GateKind::ExpYY) {
                out.sdg(a).h(a).sdg(b).h(b);
            }
        };
        auto basis_out = [&] {
            if (g.kind == GateKind::ExpXX) {
                out.h(a).h(b);
            } else if (g.kind == GateKind::ExpYY) {
                out.h(a).s(a).h(b).s(b);
            }
        };
        basis_in();
        out.cx(a, b);
        out.add(plain(GateKind::RZ, b, -1, 2.0 * g.theta, g.controls));
        out.cx(a, b);
        basis_out();
    }
    return out;
}

Matrix2 gate_matrix(GateKind kind, double theta) {
    const double r = 1.0 / std::sqrt(2.0);
    const cplx i{0.0, 1.0};
    switch (kind) {
    case GateKind::H:
        return {r, r, r, -r};
    case GateKind::X:
        return {0.0, 1.0, 1.0, 0.0};
    case GateKind::S:
        return {1.0, 0.0, 0.0, i};
    case GateKind::Sdg:
        return {1.0, 0.0, 0.0, -i};
    case GateKind::RZ:
        return {std::exp(-0.5 * i * theta), 0.0, 0.0, std::exp(0.5 * i * theta)};
    default:
        break;
    }
    throw std::invalid_argument(std::string("no 2x2 matrix for gate ") +
                                std::string(to_string(kind)));
}

void apply(const Circuit &circuit, StateVector &psi) {
    if (circuit.num_qubits() != psi.num_qubits()) {
        throw std::invalid_argument("circuit has " + std::to_string(circuit.num_qubits()) +
                                    " qubits, state has " + std::to_string(psi.num_qubits()));
    }
    const Circuit lowered = circuit.lower();
    const cplx i{0.0, 1.0};
    for (const auto &g : lowered.ops()) {
        const std::uint64_t mask = control_mask(g.controls);
        switch (g.kind) {
        case GateKind::X:
            psi.apply_x(g.q0, mask);
            break;
        case GateKind::CNOT:
            psi.apply_x(g.q1, mask | (std::uint64_t{1} << g.q0));
            break;
        case GateKind::S:
            psi.apply_diag(1.0, i, g.q0, mask);
            break;
        case GateKind::Sdg:
            psi.apply_diag(1.0, -i, g.q0, mask);
            break;
        case GateKind::RZ:
            psi.apply_diag(std::exp(-0.5 * i * g.theta), std::exp(0.5 * i * g.theta), g.q0, mask);
            break;
        default:
            psi.apply_1q(gate_matrix(g.kind, g.theta), g.q0, mask);
            break;
        }
    }
}

StateVector apply(const Circuit &circuit, const StateVector &psi) {
    StateVector out = psi;
    apply(circuit, out);
    return out;
}

std::string to_qasm3(const Circuit &circuit) {
    std::string out = "OPENQASM 3.0;\ninclude \"stdgates.inc\";\n";
    out += "qubit[" + std::to_string(circuit.num_qubits()) + "] q;\n";
    auto qubit = [](int q) { return "q[" + std::to_string(q) + "]"; };
    const Circuit lowered = circuit.lower();
    for (const auto &g : lowered.ops()) {
        std::string line;
        if (g.controls.size() == 1) {
            line += "ctrl @ ";
        } else if (g.controls.size() > 1) {
            line += "ctrl(" + std::to_string(g.controls.size()) + ") @ ";
        }
        line += to_string(g.kind);
        if (g.kind == GateKind::RZ) {
            line += "(" + format_angle(g.theta) + ")";
        }
        line += " ";
        for (int c : g.controls) {
            line += qubit(c) + ", ";
        }
        line += qubit(g.q0);
        if (g.kind == GateKind::CNOT) {
            line += ", " + qubit(g.q1);
        }
        out += line + ";\n";
    }
    return out;
}

Circuit bell_prep_circuit(BellType mu, int first, int second, int n_qubits) {
    Circuit c(n_qubits);
    switch (mu) {
    case BellType::Psi0:
        c.x(first).x(second).h(first);
        break;
    case BellType::Psi1:
        c.h(first).x(second);
        break;
    case BellType::Psi2:
        c.h(first);
        break;
    case BellType::Psi3:
        c.x(first).h(first);
        break;
    }
    c.cx(first, second);
    return c;
}

Circuit initial_state_circuit(int n, int n_qubits) {
    if (2 * n > n_qubits) {
        throw std::invalid_argument("register too small for the singlet product");
    }
    Circuit c(n_qubits);
    for (int i = 0; i < n; ++i) {
        const auto [a, b] = singlet_qubits(i);
        c.append(bell_prep_circuit(BellType::Psi0, a, b, n_qubits));
    }
    return c;
}

Circuit config_prep_circuit(const DimerConfig &config, int n_qubits) {
    const int n = config.size();
    if (2 * n > n_qubits) {
        throw std::invalid_argument("register too small for the dimer product");
    }
    Circuit c(n_qubits);
    for (int i = 0; i < n; ++i) {
        const auto [a, b] = dimer_qubits(i, n);
        c.append(bell_prep_circuit(config[i], a, b, n_qubits));
    }
    return c;
}

Circuit evolution_circuit(const ModelParams &params, double t) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("evolution time must be finite");
    }
    const int n = params.n;
    Circuit c(params.num_qubits());
    const double theta = 0.25 * params.J * t;
    const int coupled = params.periodic() ? n : n - 1;
    for (int i = 0; i < coupled; ++i) {
        const auto [a, b] = dimer_qubits(i, n);
        c.exp_xx(theta, a, b);
        c.exp_yy(theta, a, b);
        c.exp_zz(theta * params.delta, a, b);
    }
    return c;
}

} // namespace dimerquench
