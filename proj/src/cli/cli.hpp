#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace dimerquench::cli {

enum ExitCode : int { Ok = 0, Failure = 1, ConfigError = 2, SizeError = 3, VerifyFailure = 4 };

struct RunConfig {
    std::string command;
    int n = 2; // dimers; the chain has 2n qubits
    double J = 1.0;
    std::string delta = "0";
    std::string boundary = "pbc";
    std::optional<double> t_max; // default 4 pi / J
    std::optional<int> steps;    // default 400, or 10 for randomized
    int nu = 64;
    int nm = 8192;
    std::uint64_t shots = 8192;
    std::uint64_t seed = 2024;
    std::string out;
    std::string format = "csv";
    std::string dataset_dir;
    bool inject_fault = false;
};

[[nodiscard]] std::string version();

/// Parses arguments and runs one command. Tables go to --out or to `out`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace dimerquench::cli
