#pragma once

#include <string>
#include <vector>

namespace dimerquench::cli {

struct CheckResult {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;

    [[nodiscard]] bool passed() const noexcept { return max_deviation <= tolerance; }
};

/**
 * Oracle-equivalence and closed-form checks for chains of up to five
 * dimers. With `inject_fault` one coefficient of every expansion is scaled by
 * 1.01 before the checks run.
 */
[[nodiscard]] std::vector<CheckResult> run_verification(bool inject_fault);

} // namespace dimerquench::cli
