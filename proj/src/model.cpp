#include "dimerquench/model.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dimerquench {

std::string_view to_string(Boundary boundary) noexcept {
    return boundary == Boundary::Periodic ? "pbc" : "obc";
}

Boundary parse_boundary(std::string_view text) {
    if (text == "pbc") {
        return Boundary::Periodic;
    }
    if (text == "obc") {
        return Boundary::Open;
    }
    throw std::invalid_argument("boundary must be 'pbc' or 'obc', got '" +
                                std::string(text) + "'");
}

ModelParams::ModelParams(int n_, double J_, double delta_, Boundary boundary_)
    : n(n_), J(J_), delta(delta_), boundary(boundary_) {
    // n = 1 is rejected: for a single periodic dimer the pre- and postquench
    // Hamiltonians coincide.
    if (n < 2) {
        throw std::invalid_argument("number of dimers must be at least 2");
    }
    if (!(J > 0.0) || !std::isfinite(J)) {
        throw std::invalid_argument("bond strength J must be positive and finite");
    }
    if (!std::isfinite(delta)) {
        throw std::invalid_argument("anisotropy must be finite");
    }
}

std::string Rational::to_string() const {
    if (den == 1) {
        return std::to_string(num);
    }
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

namespace {

std::optional<std::int64_t> parse_int(std::string_view text) {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    std::int64_t value = 0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        return std::nullopt;
    }
    return value;
}

} // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (auto v = parse_int(text)) {
            return Rational{*v, 1};
        }
        return std::nullopt;
    }
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (!num || !den || *den == 0) {
        return std::nullopt;
    }
    return make_rational(*num, *den);
}

Anisotropy Anisotropy::parse(std::string_view text) {
    Anisotropy a;
    a.text = std::string(text);
    if (auto r = parse_rational(text)) {
        a.exact = r;
        a.value = r->value();
        return a;
    }
    double value = 0.0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty() || !std::isfinite(value)) {
        throw std::invalid_argument("cannot parse anisotropy '" + std::string(text) +
                                    "' as p/q or a decimal");
    }
    a.value = value;
    return a;
}

} // namespace dimerquench
