#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "dimerquench/dataset_io.hpp"
#include "dimerquench/table_io.hpp"

using namespace dimerquench;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "dimerquench");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("coefficients for two dimers") {
    const auto r = run_cli({"coefficients", "--n", "2", "--delta", "1/2"});
    REQUIRE(r.code == cli::Ok);
    const auto table = parse_table(r.out);
    REQUIRE(table.rows.size() == 4);
    const auto a = table.real_column("a_exact");
    const auto h = table.real_column("a_hadamard_exact");
    const auto s = table.real_column("a_hadamard_sampled");
    const auto sigma = table.real_column("sigma");
    int negative = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(std::abs(std::abs(a[k]) - 0.5) < 1e-15);
        CHECK(std::abs(h[k] - a[k]) < 1e-12);
        CHECK(std::abs(s[k] - a[k]) < 5.0 * sigma[k] + 1e-12);
        negative += a[k] < 0 ? 1 : 0;
    }
    CHECK(negative == 1);
    CHECK(table.metadata.at("command") == "coefficients");
    CHECK(table.metadata.at("version") == cli::version());
}

TEST_CASE("entropy starts at one bit for an odd number of dimers") {
    const auto r = run_cli({"entropy", "--n", "3", "--delta", "1/2", "--steps", "21"});
    REQUIRE(r.code == cli::Ok);
    const auto table = parse_table(r.out);
    REQUIRE(table.rows.size() == 21);
    const auto s1 = table.real_column("S1");
    const auto closed = table.real_column("S1_closed");
    CHECK(std::abs(s1.front() - 1.0) < 1e-12);
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(std::abs(s1[i] - closed[i]) < 1e-10);
    }
    CHECK(table.metadata.at("periodicity").at("periodic") == true);
}

TEST_CASE("echo zeros are reported in metadata") {
    const auto r = run_cli({"echo", "--n", "4", "--delta", "1/2", "--steps", "50", "--format", "json"});
    REQUIRE(r.code == cli::Ok);
    const auto table = parse_table(r.out);
    const auto zeros = table.metadata.at("zeros").get<std::vector<double>>();
    REQUIRE(zeros.size() == 2);
    CHECK(std::abs(zeros[0] - std::numbers::pi) < 1e-6);
    CHECK(std::abs(zeros[1] - 3.0 * std::numbers::pi) < 1e-6);
}

TEST_CASE("echo for an irrational anisotropy has no zeros and skips the period check") {
    const auto r = run_cli({"echo", "--n", "2", "--delta", "0.6180339887498949", "--tmax",
                            std::to_string(8.0 * std::numbers::pi), "--steps", "100"});
    REQUIRE(r.code == cli::Ok);
    const auto table = parse_table(r.out);
    CHECK(table.metadata.at("zeros").empty());
    CHECK(table.metadata.at("periodicity").is_string());
}

TEST_CASE("emitted tables round-trip byte for byte") {
    for (const std::string format : {"csv", "json"}) {
        const auto r = run_cli({"echo", "--n", "3", "--delta", "1/3", "--steps", "30", "--format", format});
        REQUIRE(r.code == cli::Ok);
        const auto table = parse_table(r.out);
        CHECK(emit(table, parse_table_format(format)) == r.out);
    }
}

TEST_CASE("output is deterministic for a fixed seed") {
    const std::vector<std::string> args{"coefficients", "--n", "3", "--shots", "500", "--seed", "7"};
    CHECK(run_cli(args).out == run_cli(args).out);
    auto other = args;
    other.back() = "8";
    CHECK(run_cli(args).out != run_cli(other).out);
}

TEST_CASE("configuration errors exit with code 2") {
    CHECK(run_cli({"entropy", "--n", "1"}).code == cli::ConfigError);
    CHECK(run_cli({"entropy", "--n", "2", "--delta", "abc"}).code == cli::ConfigError);
    CHECK(run_cli({"entropy", "--n", "2", "--boundary", "ring"}).code == cli::ConfigError);
    CHECK(run_cli({"frobnicate"}).code == cli::ConfigError);
    CHECK(run_cli({"randomized", "--n", "2", "--nu", "1"}).code == cli::ConfigError);
}

TEST_CASE("oversized requests exit with code 3") {
    CHECK(run_cli({"coefficients", "--n", "7"}).code == cli::SizeError);
    CHECK(run_cli({"randomized", "--n", "8"}).code == cli::SizeError);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli({"--help"}).code == cli::Ok);
    CHECK(run_cli({"--version"}).code == cli::Ok);
}

TEST_CASE("randomized run writes estimates and datasets") {
    const auto dir = std::filesystem::temp_directory_path() / "dimerquench_test_cli_datasets";
    std::filesystem::remove_all(dir);
    const auto r = run_cli({"randomized", "--n", "2", "--steps", "3", "--nu", "16", "--nm", "512",
                            "--save-datasets", dir.string()});
    REQUIRE(r.code == cli::Ok);
    const auto table = parse_table(r.out);
    REQUIRE(table.rows.size() == 3);
    const auto exact = table.real_column("S2_exact");
    const auto ham = table.real_column("S2_hamming");
    const auto sigma = table.real_column("S2_hamming_sigma");
    for (std::size_t i = 0; i < exact.size(); ++i) {
        CHECK(std::abs(ham[i] - exact[i]) < 5.0 * sigma[i] + 0.05);
    }
    const auto d = read_dataset(dir / "t1.dqmd");
    CHECK(d.num_unitaries() == 16);
    CHECK(d.shots_per_unitary == 512);
    CHECK(std::filesystem::exists(dir / "t1.json"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("verify passes, and fails with an injected fault") {
    const auto ok = run_cli({"verify"});
    CHECK(ok.code == cli::Ok);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    const auto bad = run_cli({"verify", "--inject-fault"});
    CHECK(bad.code == cli::VerifyFailure);
    CHECK(bad.out.find("FAIL coefficients: normalization") != std::string::npos);
}
