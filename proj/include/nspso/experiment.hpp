#pragma once

#include "nspso/engine.hpp"
#include "nspso/stats.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nspso {

/// A config with this name runs as a plain whole-domain BBPSO instead of the
/// novelty-controlled engine.
inline constexpr const char* kBaselineConfigName = "baseline-bbpso";

/// A batch experiment: every config runs `repetitions` times on every
/// problem cell, run k seeded with base_seed + k.
struct ExperimentSpec {
    std::vector<std::pair<FunctionId, int>> problems; // (function, dimension)
    int repetitions = 25;
    std::uint64_t base_seed = 1;
    std::vector<std::pair<std::string, RunConfig>> configs; // named variants
    std::string output_path;
};

/// Per-(problem, config) summary over the repetitions. h_vs_reference
/// compares the config's final fitness sample against the first config's
/// (empty for the reference itself, or when repetitions < 5).
struct SummaryRow {
    FunctionId problem = FunctionId::f1;
    int dim = 0;
    std::string config_name;
    double mean_final = 0.0;
    double std_final = 0.0;
    double median_final = 0.0;
    double mean_evals = 0.0;
    std::optional<int> h_vs_reference;
};

/// Executes the whole spec. Runs are independent and dispatched to
/// `threads` workers (0 = hardware concurrency); results are keyed by run
/// index, so the outcome does not depend on the worker count.
std::vector<SummaryRow> run_experiment(const ExperimentSpec& spec, int threads = 0);

/// CSV with header `problem,dim,config,mean,std,median,mean_evals,h`,
/// rows sorted by (problem, dim, config), 17 significant digits.
void emit_csv(const std::vector<SummaryRow>& rows, std::ostream& out);
void emit_csv(const std::vector<SummaryRow>& rows, const std::string& path);

/// Key-value run-config file: one `key = value` per line, `#` comments,
/// keys named exactly after the RunConfig fields. Unknown keys are errors.
RunConfig parse_run_config(std::istream& in);
RunConfig parse_run_config_file(const std::string& path);

/// Experiment spec file: top-level `key = value` lines for the
/// ExperimentSpec fields (`problems` is a comma list of id:dim pairs,
/// e.g. `f1:10, f8:10`), followed by one `[config NAME]` section per run
/// configuration. Unknown keys are errors.
ExperimentSpec parse_experiment_spec(std::istream& in);
ExperimentSpec parse_experiment_spec_file(const std::string& path);

/// Shortest representation with 17 significant digits (round-trips doubles).
std::string format_g17(double value);

} // namespace nspso
