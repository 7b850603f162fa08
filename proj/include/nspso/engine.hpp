#pragma once

#include "nspso/bbpso.hpp"
#include "nspso/bench.hpp"
#include "nspso/novelty.hpp"
#include "nspso/rng.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nspso {

/// All tunables of one run. max_fes == 0 means the experimental budget
/// 5000 * D * 60; every other field is used as given.
struct RunConfig {
    int leader_count = 7;
    int swarm_size = 25;
    double radius_initial = 1.0;
    double radius_increment = 0.0; // added to the radius after each epoch
    double novelty_threshold = 50.0; // Th_N, in (0, 100]
    double threshold_decay = 0.0; // Th_N multiplier per epoch is (1 - decay)
    double fitness_threshold = 1e-8; // Th_f for the inner searches
    long long max_iterations_outer = 1000000000;
    int inner_max_iterations = 200;
    long long max_fes = 0;
    std::uint64_t seed = 1;
};

/// Budget for `dimension`, resolving the max_fes == 0 default.
long long resolved_max_fes(const RunConfig& config, int dimension);

/// Throws ConfigError on any out-of-range field. Performs no evaluations.
void validate(const RunConfig& config, const Problem& problem);

enum class StopReason {
    BudgetExhausted,
    AllLowNovel,
    MaxOuterIterations,
};

std::string to_string(StopReason reason);

struct TraceEntry {
    long long evaluations = 0;
    double best_fitness = 0.0;
    int leader_index = -1;
};

struct RunResult {
    double best_fitness = 0.0;
    Vector best_position;
    long long evaluations_used = 0;
    long long outer_iterations = 0;
    std::size_t archive_size = 0;
    std::vector<TraceEntry> gbest_trace; // one entry per inner search
    StopReason stop_reason = StopReason::BudgetExhausted;
};

/// Uniform draw inside the [lower, upper] box.
Vector recompute_position(const Vector& lower, const Vector& upper, Rng& rng);

/// Stop rule, consulted after each epoch with freshly computed novelties.
/// Priority: budget exhaustion, then the all-low-novel rule (every leader
/// classified LowNovel or NotNovel), then the outer iteration cap.
/// config.max_fes must already be resolved (nonzero).
std::optional<StopReason> should_stop(const std::vector<LeaderParticle>& leaders,
                                      long long evaluations_used, long long outer_iteration,
                                      const RunConfig& config);

/// Optional instrumentation, used by tests and tracing. on_evaluation sees
/// every objective call; on_archive_append sees (center, threshold, radius)
/// at the moment a region enters the archive.
struct EngineHooks {
    std::function<void(const Vector&, double)> on_evaluation;
    std::function<void(const Vector&, double, double)> on_archive_append;
};

/// One full novelty-controlled run.
///
/// Initialization places leader_count leaders uniformly in the problem's
/// initialization box and evaluates each once. Each epoch then walks the
/// leaders in order: the leader's novelty is computed against the archive
/// and the peers; a flagged or insufficiently novel leader just redraws its
/// position, while a novel one archives its region, runs an inner BBPSO
/// there with the remaining budget, and redraws afterwards. After every
/// epoch all novelties are re-derived for the stop rule, and the radius /
/// threshold schedules advance. Deterministic given config.seed.
RunResult run(const Problem& problem, const RunConfig& config, const EngineHooks& hooks = {});

/// Plain whole-domain bare-bones PSO under the same budget: one swarm of
/// swarm_size particles initialized uniformly in the initialization box,
/// iterated until the budget or fitness threshold is hit. The comparison
/// baseline for the novelty-controlled runs. stop_reason is BudgetExhausted
/// when the budget was spent and MaxOuterIterations otherwise.
RunResult run_baseline_bbpso(const Problem& problem, const RunConfig& config,
                             const EngineHooks& hooks = {});

/// CSV with header `evals,best_fitness,leader_index`, one row per trace entry.
void write_gbest_trace_csv(const std::vector<TraceEntry>& trace, std::ostream& out);
void write_gbest_trace_csv(const std::vector<TraceEntry>& trace, const std::string& path);

} // namespace nspso
