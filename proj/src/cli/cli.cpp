#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>

#include "dimerquench/closed_forms.hpp"
#include "dimerquench/dataset_io.hpp"
#include "dimerquench/errors.hpp"
#include "dimerquench/exact_dynamics.hpp"
#include "dimerquench/hadamard_test.hpp"
#include "dimerquench/parallel.hpp"
#include "dimerquench/randomized_measurement.hpp"
#include "dimerquench/sampling.hpp"
#include "dimerquench/table_io.hpp"
#include "verify.hpp"

namespace dimerquench::cli {

namespace {

constexpr int max_coefficient_dimers = 6;
constexpr int max_randomized_qubits = 14;

struct Context {
    RunConfig config;
    ModelParams params;
    Anisotropy delta;
    std::vector<double> grid;
};

nlohmann::json config_echo(const RunConfig &c) {
    nlohmann::json j = {{"command", c.command},   {"n", c.n},         {"J", c.J},
                        {"delta", c.delta},       {"boundary", c.boundary},
                        {"nu", c.nu},             {"nm", c.nm},       {"shots", c.shots},
                        {"seed", c.seed},         {"format", c.format}};
    j["tmax"] = c.t_max ? nlohmann::json(*c.t_max) : nlohmann::json(nullptr);
    j["steps"] = c.steps ? nlohmann::json(*c.steps) : nlohmann::json(nullptr);
    return j;
}

DataTable new_table(const Context &ctx) {
    DataTable t;
    t.metadata = params_metadata(ctx.params);
    t.metadata["version"] = version();
    t.metadata["command"] = ctx.config.command;
    t.metadata["config"] = config_echo(ctx.config);
    return t;
}

void write_output(const Context &ctx, const DataTable &table, std::ostream &out) {
    const auto text = emit(table, parse_table_format(ctx.config.format));
    if (ctx.config.out.empty()) {
        out << text;
    } else {
        write_text_file(ctx.config.out, text);
    }
}

Context make_context(const RunConfig &config, int default_steps) {
    Context ctx{config, {}, Anisotropy::parse(config.delta), {}};
    ctx.params = ModelParams(config.n, config.J, ctx.delta.value, parse_boundary(config.boundary));
    if (config.command != "coefficients" && config.command != "verify") {
        const double t_max = config.t_max.value_or(4.0 * std::numbers::pi / config.J);
        ctx.grid = linear_grid(t_max, config.steps.value_or(default_steps));
    }
    return ctx;
}

nlohmann::json periodicity_json(const Context &ctx, Observable observable) {
    if (!ctx.params.periodic()) {
        return "not checked: open chain";
    }
    if (!ctx.delta.exact) {
        return "not checked: anisotropy has no exact rational form";
    }
    const auto r = check_periodicity(ctx.params, observable, ctx.delta, 40);
    return {{"period", r.period}, {"max_deviation", r.max_deviation}, {"periodic", r.periodic}};
}

int cmd_coefficients(const Context &ctx, std::ostream &out) {
    if (ctx.params.n > max_coefficient_dimers) {
        throw SizeLimitError("coefficients limited to n <= " + std::to_string(max_coefficient_dimers) +
                             " dimers");
    }
    const auto e = build_expansion(ctx.params);
    std::vector<HadamardEstimate> exact(e.size());
    std::vector<HadamardEstimate> sampled(e.size());
    parallel_for(e.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            exact[k] = estimate_coefficient(e.configs[k]);
            sampled[k] = estimate_coefficient(e.configs[k], ctx.config.shots, ctx.config.seed, k);
        }
    });
    auto table = new_table(ctx);
    table.columns = {{"k", ColumnType::Integer},          {"config", ColumnType::Text},
                     {"a_exact", ColumnType::Real},       {"a_hadamard_exact", ColumnType::Real},
                     {"a_hadamard_sampled", ColumnType::Real}, {"sigma", ColumnType::Real}};
    for (std::size_t k = 0; k < e.size(); ++k) {
        table.add_row({static_cast<std::int64_t>(k), e.configs[k].to_string(), e.coefficient(k), exact[k].value,
                       sampled[k].value, sampled[k].std_error});
    }
    write_output(ctx, table, out);
    return Ok;
}

int cmd_entropy(const Context &ctx, std::ostream &out) {
    const auto e = build_expansion(ctx.params);
    const bool closed = closed_form::entropy_covered(ctx.params);
    const auto &g = ctx.grid;
    std::vector<EntropyPair> num(g.size());
    parallel_for(g.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            num[i] = half_chain_entropies(e, g[i]);
        }
    });
    auto table = new_table(ctx);
    table.columns = {{"t", ColumnType::Real}, {"S1", ColumnType::Real}, {"S2", ColumnType::Real}};
    if (closed) {
        table.columns.push_back({"S1_closed", ColumnType::Real});
        table.columns.push_back({"S2_closed", ColumnType::Real});
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::vector<Cell> row{g[i], num[i].s1, num[i].s2};
        if (closed) {
            row.emplace_back(closed_form::entropy(ctx.params, g[i], 1));
            row.emplace_back(closed_form::entropy(ctx.params, g[i], 2));
        }
        table.add_row(std::move(row));
    }
    table.metadata["periodicity"] = periodicity_json(ctx, Observable::S1);
    write_output(ctx, table, out);
    return Ok;
}

int cmd_echo(const Context &ctx, std::ostream &out) {
    const BellExpansion e = ctx.params.periodic() ? echo_expansion(ctx.params) : build_expansion(ctx.params);
    const EchoSpectrum echo(e);
    const bool closed = closed_form::echo_covered(ctx.params);
    auto table = new_table(ctx);
    table.columns = {{"t", ColumnType::Real}, {"echo", ColumnType::Real}, {"return_rate", ColumnType::Real}};
    if (closed) {
        table.columns.push_back({"echo_closed", ColumnType::Real});
    }
    for (double t : ctx.grid) {
        const double l = echo(t);
        std::vector<Cell> row{t, l, return_rate(std::min(1.0, l), ctx.params.num_qubits())};
        if (closed) {
            row.emplace_back(closed_form::echo(ctx.params, t));
        }
        table.add_row(std::move(row));
    }
    const double t_max = ctx.grid.back();
    const double step = std::min(0.01, t_max / static_cast<double>(ctx.grid.size()));
    table.metadata["zeros"] = find_loschmidt_zeros(echo, t_max, step);
    table.metadata["zero_tolerance"] = 1e-12;
    table.metadata["periodicity"] = periodicity_json(ctx, Observable::Echo);
    write_output(ctx, table, out);
    return Ok;
}

// Half chain for periodic chains; the centered N/2 qubits for open chains.
std::vector<int> randomized_subsystem(const ModelParams &params) {
    const int nq = params.num_qubits();
    const int start = params.periodic() ? 0 : nq / 4;
    std::vector<int> a;
    for (int q = start; q < start + nq / 2; ++q) {
        a.push_back(q);
    }
    return a;
}

int cmd_randomized(const Context &ctx, std::ostream &out) {
    const int nq = ctx.params.num_qubits();
    if (nq > max_randomized_qubits) {
        throw SizeLimitError("randomized measurements limited to " + std::to_string(max_randomized_qubits) +
                             " qubits");
    }
    if (ctx.config.nu < 2 || ctx.config.nm < 2) {
        throw std::invalid_argument("--nu and --nm must be at least 2");
    }
    const auto e = std::make_shared<const BellExpansion>(build_expansion(ctx.params));
    const auto a = randomized_subsystem(ctx.params);
    const auto psi0 = initial_state(ctx.params.n);
    const std::filesystem::path dir = ctx.config.dataset_dir;
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
    }

    auto table = new_table(ctx);
    table.metadata["subsystem"] = a;
    table.columns = {{"t", ColumnType::Real},
                     {"S2_exact", ColumnType::Real},
                     {"S2_hamming", ColumnType::Real},
                     {"S2_hamming_sigma", ColumnType::Real},
                     {"S2_shadow", ColumnType::Real},
                     {"S2_shadow_sigma", ColumnType::Real},
                     {"purity_exact", ColumnType::Real},
                     {"purity_hamming", ColumnType::Real},
                     {"purity_hamming_sigma", ColumnType::Real},
                     {"purity_shadow", ColumnType::Real},
                     {"purity_shadow_sigma", ColumnType::Real},
                     {"echo_exact", ColumnType::Real},
                     {"echo_shadow", ColumnType::Real},
                     {"echo_shadow_sigma", ColumnType::Real}};
    for (std::size_t i = 0; i < ctx.grid.size(); ++i) {
        const double t = ctx.grid[i];
        const auto psi = to_statevector(evolve(e, t));
        const std::uint64_t seed = splitmix64(ctx.config.seed + i);
        auto d = collect(psi, sample_unitaries(nq, ctx.config.nu, seed), ctx.config.nm, seed);
        d.params = ctx.params;
        d.t = t;
        if (!dir.empty()) {
            const auto stem = dir / ("t" + std::to_string(i));
            write_dataset(stem.string() + ".dqmd", d);
            write_text_file(stem.string() + ".json", dataset_sidecar(d).dump(2) + "\n");
        }
        const double s2 = subsystem_entropies(psi, a).s2;
        const auto ham = purity_hamming(d, a);
        const auto sh = shadow_purity(d, a);
        const auto rh = renyi_from_purity(ham);
        const auto rs = renyi_from_purity(sh);
        const auto el = shadow_loschmidt(d, psi0);
        table.add_row({t, s2, rh.value, rh.sigma, rs.value, rs.sigma, std::exp2(-s2), ham.value, ham.sigma,
                       sh.value, sh.sigma, fidelity(psi0, psi), el.value, el.sigma});
    }
    write_output(ctx, table, out);
    return Ok;
}

int cmd_verify(const Context &ctx, std::ostream &out) {
    const auto results = run_verification(ctx.config.inject_fault);
    bool ok = true;
    nlohmann::json report = nlohmann::json::array();
    for (const auto &r : results) {
        ok = ok && r.passed();
        out << (r.passed() ? "PASS " : "FAIL ") << r.name << "  max_dev=" << format_real(r.max_deviation)
            << "  tol=" << format_real(r.tolerance) << "\n";
        report.push_back({{"name", r.name},
                          {"max_deviation", format_real(r.max_deviation)},
                          {"tolerance", r.tolerance},
                          {"passed", r.passed()}});
    }
    out << (ok ? "all checks passed" : "verification FAILED") << "\n";
    if (!ctx.config.out.empty()) {
        const nlohmann::json doc = {{"version", version()}, {"inject_fault", ctx.config.inject_fault},
                                    {"checks", report}};
        write_text_file(ctx.config.out, doc.dump(2) + "\n");
    }
    return ok ? Ok : VerifyFailure;
}

void add_model_options(CLI::App *app, RunConfig &c) {
    app->add_option("--n", c.n, "Number of dimers (the chain has 2n qubits)");
    app->add_option("--j", c.J, "Bond strength J");
    app->add_option("--delta", c.delta, "Anisotropy as p/q or a decimal");
    app->add_option("--boundary", c.boundary, "pbc or obc")->check(CLI::IsMember({"pbc", "obc"}));
    app->add_option("--out", c.out, "Output file (default: stdout)");
    app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_grid_options(CLI::App *app, RunConfig &c) {
    app->add_option("--tmax", c.t_max, "Last time of the grid (default 4 pi / J)");
    app->add_option("--steps", c.steps, "Number of grid points");
}

} // namespace

std::string version() { return PROJECT_VERSION; }

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quench dynamics of the fully dimerized XXZ chain", "dimerquench"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);
    RunConfig c;

    auto *coeff = app.add_subcommand("coefficients", "Expansion coefficients with Hadamard-test estimates");
    add_model_options(coeff, c);
    coeff->add_option("--shots", c.shots, "Shots per Hadamard test");
    coeff->add_option("--seed", c.seed, "Random seed");

    auto *entropy = app.add_subcommand("entropy", "Half-chain S1 and S2 over a time grid");
    add_model_options(entropy, c);
    add_grid_options(entropy, c);

    auto *echo = app.add_subcommand("echo", "Loschmidt echo, return rate and echo zeros");
    add_model_options(echo, c);
    add_grid_options(echo, c);

    auto *randomized = app.add_subcommand("randomized", "Randomized Pauli measurement estimates");
    add_model_options(randomized, c);
    add_grid_options(randomized, c);
    randomized->add_option("--nu", c.nu, "Random unitaries per time");
    randomized->add_option("--nm", c.nm, "Shots per unitary");
    randomized->add_option("--seed", c.seed, "Random seed");
    randomized->add_option("--save-datasets", c.dataset_dir, "Directory for binary measurement datasets");

    auto *verify = app.add_subcommand("verify", "Oracle and closed-form self checks");
    verify->add_option("--out", c.out, "JSON report file");
    verify->add_flag("--inject-fault", c.inject_fault, "Perturb one coefficient (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : ConfigError;
    }
    c.command = app.get_subcommands().front()->get_name();

    try {
        if (c.steps && *c.steps < 2) {
            throw std::invalid_argument("--steps must be at least 2");
        }
        if (c.t_max && !(*c.t_max > 0.0)) {
            throw std::invalid_argument("--tmax must be positive");
        }
        const Context ctx = make_context(c, c.command == "randomized" ? 10 : 400);
        if (c.command == "coefficients") {
            return cmd_coefficients(ctx, out);
        }
        if (c.command == "entropy") {
            return cmd_entropy(ctx, out);
        }
        if (c.command == "echo") {
            return cmd_echo(ctx, out);
        }
        if (c.command == "randomized") {
            return cmd_randomized(ctx, out);
        }
        return cmd_verify(ctx, out);
    } catch (const SizeLimitError &e) {
        err << "size limit: " << e.what() << "\n";
        return SizeError;
    } catch (const std::invalid_argument &e) {
        err << "invalid configuration: " << e.what() << "\n";
        return ConfigError;
    } catch (const NotCoveredError &e) {
        err << "invalid configuration: " << e.what() << "\n";
        return ConfigError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return Failure;
    }
}

} // namespace dimerquench::cli
