#include "nspso/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

using namespace nspso;

void print_run_result(const Problem& problem, const RunConfig& config, const RunResult& result)
{
    std::cout << "problem: " << to_string(problem.id) << "\n"
              << "dim: " << problem.dimension << "\n"
              << "seed: " << config.seed << "\n"
              << "best_fitness: " << format_g17(result.best_fitness) << "\n"
              << "best_position:";
    for (Eigen::Index i = 0; i < result.best_position.size(); ++i)
        std::cout << ' ' << format_g17(result.best_position[i]);
    std::cout << "\n"
              << "evaluations_used: " << result.evaluations_used << "\n"
              << "outer_iterations: " << result.outer_iterations << "\n"
              << "archive_size: " << result.archive_size << "\n"
              << "stop_reason: " << to_string(result.stop_reason) << "\n";
}

struct SolveOptions {
    std::string problem;
    int dim = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string config_path;
    std::string trace_path;
};

RunConfig load_config(const SolveOptions& opt)
{
    RunConfig config;
    if (!opt.config_path.empty())
        config = parse_run_config_file(opt.config_path);
    if (opt.seed_given)
        config.seed = opt.seed;
    return config;
}

int do_solve(const SolveOptions& opt, bool baseline)
{
    const Problem problem = make_problem(parse_function_id(opt.problem), opt.dim);
    const RunConfig config = load_config(opt);
    const RunResult result
        = baseline ? run_baseline_bbpso(problem, config) : run(problem, config);
    print_run_result(problem, config, result);
    if (!opt.trace_path.empty()) {
        write_gbest_trace_csv(result.gbest_trace, opt.trace_path);
        std::cout << "trace: " << opt.trace_path << "\n";
    }
    return 0;
}

int do_run(const std::string& spec_path, int threads)
{
    const ExperimentSpec spec = parse_experiment_spec_file(spec_path);
    if (spec.output_path.empty())
        throw ConfigError("the spec sets no output_path");
    const auto rows = run_experiment(spec, threads);
    for (const auto& row : rows) {
        std::cout << to_string(row.problem) << " d" << row.dim << " " << row.config_name
                  << ": mean=" << format_g17(row.mean_final)
                  << " std=" << format_g17(row.std_final)
                  << " median=" << format_g17(row.median_final);
        if (row.h_vs_reference)
            std::cout << " h=" << *row.h_vs_reference;
        std::cout << "\n";
    }
    emit_csv(rows, spec.output_path);
    std::cout << "results: " << spec.output_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Novelty-search-controlled particle swarm optimization"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "Run a batch experiment from a spec file");
    std::string spec_path;
    int threads = 0;
    run_cmd->add_option("--spec", spec_path, "Experiment spec file")->required();
    run_cmd->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

    SolveOptions solve_opt;
    auto* solve_cmd = app.add_subcommand("solve", "Single novelty-controlled run");
    solve_cmd->add_option("--problem", solve_opt.problem, "Benchmark id, f1..f17")->required();
    solve_cmd->add_option("--dim", solve_opt.dim, "Problem dimension")->required();
    auto* seed_opt = solve_cmd->add_option("--seed", solve_opt.seed, "Run seed");
    solve_cmd->add_option("--config", solve_opt.config_path, "Run-config file");
    solve_cmd->add_option("--trace", solve_opt.trace_path, "Write the gbest trace CSV here");

    SolveOptions baseline_opt;
    auto* baseline_cmd = app.add_subcommand("baseline", "Single plain whole-domain BBPSO run");
    baseline_cmd->add_option("--problem", baseline_opt.problem, "Benchmark id, f1..f17")
        ->required();
    baseline_cmd->add_option("--dim", baseline_opt.dim, "Problem dimension")->required();
    auto* baseline_seed_opt = baseline_cmd->add_option("--seed", baseline_opt.seed, "Run seed");
    baseline_cmd->add_option("--config", baseline_opt.config_path, "Run-config file");
    baseline_cmd->add_option("--trace", baseline_opt.trace_path, "Write the gbest trace CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    solve_opt.seed_given = seed_opt->count() > 0;
    baseline_opt.seed_given = baseline_seed_opt->count() > 0;

    try {
        if (run_cmd->parsed())
            return do_run(spec_path, threads);
        if (solve_cmd->parsed())
            return do_solve(solve_opt, false);
        return do_solve(baseline_opt, true);
    } catch (const nspso::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const nspso::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
