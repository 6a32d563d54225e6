#include "dimerquench/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "dimerquench/errors.hpp"

namespace dimerquench::closed_form {

namespace {

// x log2 x with the 0 log 0 = 0 convention; tiny negatives from round-off count as 0
double xlog2x(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

void check_order(int order) {
    if (order != 1 && order != 2) {
        throw std::invalid_argument("entropy order must be 1 or 2, got " + std::to_string(order));
    }
}

double sq(double x) { return x * x; }

} // namespace

std::vector<double> spectrum_n2(double J, double delta, double t) {
    const double s2 = sq(std::sin(J * t));
    const double c = std::cos(J * t);
    const double cd = std::cos(J * delta * t);
    return {0.25 * s2, 0.25 * s2, 0.25 * (1.0 + c * c + 2.0 * c * cd),
            0.25 * (1.0 + c * c - 2.0 * c * cd)};
}

double entropy_n2(double J, double delta, double t, int order) {
    check_order(order);
    const double s = std::sin(J * t);
    const double c = std::cos(J * t);
    const double cd = std::cos(J * delta * t);
    if (order == 1) {
        const double plus = 1.0 + c * c + 2.0 * c * cd;
        const double minus = 1.0 + c * c - 2.0 * c * cd;
        return 2.0 - 0.5 * xlog2x(s * s) - 0.25 * xlog2x(plus) - 0.25 * xlog2x(minus);
    }
    return 3.0 - std::log2(1.0 + std::pow(s, 4) + 2.0 * c * c + std::pow(c, 4) +
                           4.0 * c * c * cd * cd);
}

double entropy_n2_xx_s1(double J, double t) {
    const double s = sq(std::sin(0.5 * J * t));
    const double c = sq(std::cos(0.5 * J * t));
    return -2.0 * (xlog2x(s) + xlog2x(c));
}

double entropy_n2_xx_s2(double J, double t) {
    return -2.0 * std::log2(1.0 - 0.5 * sq(std::sin(J * t)));
}

double entropy_odd(double J, double delta, double t, int order) {
    return 1.0 + entropy_n2(J, delta, 0.5 * t, order);
}

double entropy_even(double J, double delta, double t, int order) {
    check_order(order);
    const double s = std::sin(0.5 * J * t);
    const double c = std::cos(0.5 * J * t);
    const double cd = std::cos(0.5 * J * delta * t);
    if (order == 1) {
        const double plus = 1.0 + c * c + 2.0 * c * cd;
        const double minus = 1.0 + c * c - 2.0 * c * cd;
        return 4.0 - xlog2x(s * s) - 0.5 * xlog2x(plus) - 0.5 * xlog2x(minus);
    }
    return 6.0 - 2.0 * std::log2(1.0 + std::pow(s, 4) + 2.0 * c * c + std::pow(c, 4) +
                                 4.0 * c * c * cd * cd);
}

bool entropy_covered(const ModelParams &params) noexcept {
    return params.periodic();
}

double entropy(const ModelParams &params, double t, int order) {
    check_order(order);
    if (!entropy_covered(params)) {
        throw NotCoveredError("entropy closed forms cover periodic chains only");
    }
    if (params.n == 2) {
        return entropy_n2(params.J, params.delta, t, order);
    }
    if (params.n % 2 == 1) {
        return entropy_odd(params.J, params.delta, t, order);
    }
    return entropy_even(params.J, params.delta, t, order);
}

double echo_n2(double J, double delta, double t) {
    const double c = std::cos(J * t);
    return 0.25 * (1.0 + 2.0 * c * std::cos(delta * J * t) + c * c);
}

double echo_n3(double J, double delta, double t) {
    const double jt = J * t;
    return (36.0 * std::cos(delta * jt) + 36.0 * std::cos((1.0 - delta) * jt) +
            12.0 * std::cos((1.0 + delta) * jt) + 72.0 * std::cos(jt) + 6.0 * std::cos(2.0 * jt) +
            12.0 * std::cos((2.0 + delta) * jt) + 82.0) /
           256.0;
}

double echo_n4(double J, double delta, double t) {
    const double jt = J * t;
    const double a = 12.0 * sq(std::cos(0.5 * jt)) + std::cos(delta * jt) * (3.0 + sq(std::cos(jt)));
    return (a * a + sq(std::sin(delta * jt)) * std::pow(std::sin(jt), 4)) / 256.0;
}

double echo_n4_xx(double J, double t) {
    return sq(0.25 * sq(1.0 + sq(std::cos(0.5 * J * t))));
}

double echo_n4_xxx(double J, double t) {
    const double x = sq(std::cos(0.5 * J * t));
    return (1.0 - 12.0 * x + 42.0 * x * x - 36.0 * x * x * x + 21.0 * x * x * x * x) / 16.0;
}

double echo_n6_xx(double J, double t) {
    const double x = sq(std::cos(0.5 * J * t));
    return sq(x * sq(x + 3.0) / 16.0);
}

double echo_n6(double J, double delta, double t) {
    const double d = delta * J;
    // (weight of cos, weight of sin, frequency) per group of equal 2E_k
    struct Term {
        double wc;
        double ws;
        double freq;
    };
    const Term terms[] = {
        {1.0, 1.0, -(6.0 * J + 3.0 * d)}, {1.0, 1.0, 6.0 * J - 3.0 * d},
        {15.0, 15.0, -(2.0 * J + 3.0 * d)}, {30.0, 30.0, -(4.0 * J + d)},
        {15.0, 15.0, 2.0 * J - 3.0 * d}, {420.0, 60.0, d},
        {120.0, 120.0, 2.0 * J + d}, {120.0, 120.0, 2.0 * J - d},
        {120.0, 120.0, -(2.0 * J + d)}, {120.0, 120.0, -(2.0 * J - d)},
        {30.0, 30.0, 4.0 * J - d}, {32.0, 32.0, 3.0 * d},
    };
    double cs = 0.0;
    double si = 0.0;
    for (const auto &term : terms) {
        cs += term.wc * std::cos(0.5 * term.freq * t);
        si += term.ws * std::sin(0.5 * term.freq * t);
    }
    return (cs * cs + si * si) / std::pow(4.0, 10);
}

double echo_n8_xx(double J, double t) {
    const double jt = J * t;
    const double x = sq(std::cos(0.5 * jt));
    const double inner = sq((1.0 + 7.0 * x) / 8.0) - sq(std::sin(2.0 * jt)) / 4096.0 -
                         7.0 / 1024.0 * (5.0 * sq(std::sin(jt)) + std::cos(jt) - std::cos(3.0 * jt));
    return inner * inner;
}

bool echo_covered(const ModelParams &params) noexcept {
    if (!params.periodic()) {
        return false;
    }
    switch (params.n) {
    case 2:
    case 3:
    case 4:
    case 6:
        return true;
    case 8:
        return params.delta == 0.0;
    default:
        return false;
    }
}

double echo(const ModelParams &params, double t) {
    if (!echo_covered(params)) {
        throw NotCoveredError("no closed-form echo for n=" + std::to_string(params.n) +
                              ", delta=" + std::to_string(params.delta) + ", " +
                              std::string(to_string(params.boundary)));
    }
    switch (params.n) {
    case 2:
        return echo_n2(params.J, params.delta, t);
    case 3:
        return echo_n3(params.J, params.delta, t);
    case 4:
        return echo_n4(params.J, params.delta, t);
    case 6:
        return echo_n6(params.J, params.delta, t);
    default:
        return echo_n8_xx(params.J, t);
    }
}

std::vector<double> N4Spectrum::expanded() const {
    std::vector<double> out;
    for (const auto &l : levels) {
        out.insert(out.end(), static_cast<std::size_t>(l.degeneracy), l.value);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

N4Spectrum n4_spectrum(double t, double J, N4Model model) {
    N4Spectrum out;
    const double s2 = sq(std::sin(0.5 * J * t));
    const double c2 = sq(std::cos(0.5 * J * t));
    if (model == N4Model::XX) {
        const double c4 = c2 * c2;
        const double c8 = c4 * c4;
        const double s8 = sq(s2 * s2);
        const double root = std::sqrt(std::max(0.0, 1.0 - 2.0 * c4 + c8 - s8));
        out.levels = {{std::pow(std::cos(0.25 * J * t), 8), 1},
                      {std::pow(std::sin(0.25 * J * t), 8), 1},
                      {(1.0 - c4 + root) / 16.0, 4},
                      {(1.0 - c4 - root) / 16.0, 4},
                      {s2 * s2 / 16.0, 6}};
        const double u = sq(std::sin(0.25 * J * t));
        const double v = sq(std::cos(0.25 * J * t));
        out.s1 = -4.0 * (xlog2x(u) + xlog2x(v));
    } else {
        const double b = 1.0 + 3.0 * c2;
        out.levels = {{s2 * s2 / 16.0, 9}, {s2 * b / 16.0, 6}, {b * b / 16.0, 1}};
        out.s1 = -1.5 * xlog2x(s2) - 0.5 * xlog2x(b) + 4.0;
    }
    return out;
}

} // namespace dimerquench::closed_form
