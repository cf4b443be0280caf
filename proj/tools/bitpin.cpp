// bitpin: generate one-bit problems, solve them, and run Monte-Carlo experiments.

#include "bitpin/harness.hpp"
#include "bitpin/problem_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>

namespace {

using namespace bitpin;

struct RunOptions {
    std::string preset;
    std::string config;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::string out;
    std::string format = "csv";
    bool no_timing = false;
    bool list = false;
};

struct SolveOptions {
    std::string input;
    std::string solver = "epsvm";
    std::optional<double> tau;
    std::optional<double> c;
    std::optional<double> mu;
    std::optional<double> C;
    std::optional<Eigen::Index> k;
    std::optional<double> alpha;
    std::optional<int> l_max;
    std::optional<double> L_ratio;
    std::string out;
};

struct GenOptions {
    Eigen::Index n = 1000;
    Eigen::Index m = 500;
    Eigen::Index k = 20;
    double rf = 0.1;
    std::string rn = "inf";
    std::uint64_t seed = 1;
    std::string out;
};

int do_run(const RunOptions& o)
{
    if (o.list) {
        for (const auto& name : preset_names()) {
            std::cout << name << '\n';
        }
        return 0;
    }
    if (o.preset.empty() == o.config.empty()) {
        throw CLI::ValidationError("run", "exactly one of --preset or --config is required");
    }
    ExperimentConfig config = o.config.empty() ? preset(o.preset) : load_config(o.config);
    if (o.trials) config.trials = *o.trials;
    if (o.seed) config.base_seed.value = *o.seed;
    if (o.threads) config.threads = *o.threads;
    if (o.no_timing) config.record_time = false;

    const auto format = output_format_from_string(o.format);
    const auto result = run_experiment(config);
    if (o.out.empty()) {
        emit_results(result, std::cout, format);
    } else {
        emit_results(result, std::filesystem::path(o.out), format);
    }
    return 0;
}

int do_solve(const SolveOptions& o)
{
    const auto problem = read_problem(o.input);
    SolverSpec spec;
    spec.kind = solver_kind_from_string(o.solver);
    spec.tau = o.tau;
    spec.c = o.c;
    spec.mu = o.mu;
    spec.C = o.C;
    spec.k_est = o.k;
    spec.alpha = o.alpha;
    spec.l_max = o.l_max;
    spec.L_ratio = o.L_ratio;

    GridPoint point;
    point.m = problem.m;
    point.K = problem.K;
    point.r_f = problem.flips.ratio;
    point.r_n = problem.noise.snr;
    const auto settings = resolve(spec, point, problem.n);
    const auto outcome = run_solver(problem.data(), settings);

    if (o.out.empty()) {
        for (Eigen::Index j = 0; j < outcome.x.size(); ++j) {
            std::cout << format_double(outcome.x[j]) << '\n';
        }
    } else {
        write_vector(o.out, outcome.x);
    }
    std::cerr << "status " << outcome.status << '\n';
    if (problem.signal.x.size() == outcome.x.size() && problem.signal.x.squaredNorm() > 0.0) {
        std::cerr << "recovery_error " << format_double(recovery_error(outcome.x, problem.signal.x)) << '\n';
    }
    return 0;
}

int do_gen(const GenOptions& o)
{
    const auto problem =
        generate_problem(o.n, o.m, o.k, NoiseSpec{parse_double(o.rn)}, FlipSpec{o.rf}, Seed{o.seed});
    write_problem(o.out, problem);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"One-bit compressive sensing with pinball loss solvers"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run a Monte-Carlo experiment and write aggregated results");
    run_cmd->add_option("--preset", run.preset, "Named experiment preset");
    run_cmd->add_option("--config", run.config, "JSON experiment description")->check(CLI::ExistingFile);
    run_cmd->add_option("--trials", run.trials, "Trials per grid point")->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", run.seed, "Base seed");
    run_cmd->add_option("--threads", run.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    run_cmd->add_option("--out", run.out, "Output file (stdout when omitted)");
    run_cmd->add_option("--format", run.format, "csv, trials or plotdata")
        ->check(CLI::IsMember({"csv", "trials", "plotdata"}));
    run_cmd->add_flag("--no-timing", run.no_timing, "Record wall times as 0 for reproducible output");
    run_cmd->add_flag("--list-presets", run.list, "Print preset names and exit");

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "Recover a signal from a problem file");
    solve_cmd->add_option("--input", solve.input, "Problem file written by 'gen'")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--solver", solve.solver, "biht, piht, aop_biht, aop_piht, passive or epsvm")
        ->check(CLI::IsMember({"biht", "piht", "aop_biht", "aop_piht", "passive", "epsvm"}));
    solve_cmd->add_option("--tau", solve.tau, "Pinball slope in [-1, 0]");
    solve_cmd->add_option("--c", solve.c, "Margin bias");
    solve_cmd->add_option("--mu", solve.mu, "l1 weight (ep-SVM / passive)");
    solve_cmd->add_option("--C", solve.C, "mu = C sqrt(log n / m) (ep-SVM / passive)");
    solve_cmd->add_option("--k", solve.k, "Sparsity for hard thresholding");
    solve_cmd->add_option("--alpha", solve.alpha, "PIHT step size");
    solve_cmd->add_option("--lmax", solve.l_max, "Iteration / sweep limit");
    solve_cmd->add_option("--L-ratio", solve.L_ratio, "AOP flip budget as a fraction of m");
    solve_cmd->add_option("--out", solve.out, "Write the estimate here, one value per line");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic problem file");
    gen_cmd->add_option("--n", gen.n, "Signal dimension")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--m", gen.m, "Number of measurements")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--k", gen.k, "True sparsity")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--rf", gen.rf, "Sign flip ratio")->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--rn", gen.rn, "SNR as a linear power ratio, or inf");
    gen_cmd->add_option("--seed", gen.seed, "Seed");
    gen_cmd->add_option("--out", gen.out, "Output problem file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return do_run(run);
        if (*solve_cmd) return do_solve(solve);
        if (*gen_cmd) return do_gen(gen);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "bitpin: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
