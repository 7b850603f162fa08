#include "nspso/engine.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace nspso {

namespace {

    std::vector<LeaderParticle*> peers_of(std::vector<LeaderParticle>& leaders, int self)
    {
        std::vector<LeaderParticle*> peers;
        peers.reserve(leaders.size() - 1);
        for (int j = 0; j < static_cast<int>(leaders.size()); ++j)
            if (j != self)
                peers.push_back(&leaders[j]);
        return peers;
    }

} // namespace

long long resolved_max_fes(const RunConfig& config, int dimension)
{
    if (config.max_fes != 0)
        return config.max_fes;
    return 5000ll * dimension * 60ll;
}

void validate(const RunConfig& config, const Problem& problem)
{
    if (config.leader_count < 1)
        throw ConfigError("leader_count must be positive");
    if (config.swarm_size < 2)
        throw ConfigError("swarm_size must be at least 2");
    if (!(config.radius_initial > 0.0))
        throw ConfigError("radius_initial must be positive");
    if (config.radius_increment < 0.0)
        throw ConfigError("radius_increment must be non-negative");
    if (!(config.novelty_threshold > 0.0 && config.novelty_threshold <= 100.0))
        throw ConfigError("novelty_threshold must lie in (0, 100]");
    if (!(config.threshold_decay >= 0.0 && config.threshold_decay <= 1.0))
        throw ConfigError("threshold_decay must lie in [0, 1]");
    if (config.max_iterations_outer < 1)
        throw ConfigError("max_iterations_outer must be positive");
    if (config.inner_max_iterations < 1)
        throw ConfigError("inner_max_iterations must be positive");
    if (config.max_fes < 0)
        throw ConfigError("max_fes must be non-negative");
    const long long budget = resolved_max_fes(config, problem.dimension);
    if (budget < static_cast<long long>(config.leader_count) * config.swarm_size)
        throw ConfigError("max_fes must cover at least leader_count * swarm_size evaluations");
}

std::string to_string(StopReason reason)
{
    switch (reason) {
    case StopReason::BudgetExhausted:
        return "budget_exhausted";
    case StopReason::AllLowNovel:
        return "all_low_novel";
    case StopReason::MaxOuterIterations:
        return "max_outer_iterations";
    }
    return "?";
}

Vector recompute_position(const Vector& lower, const Vector& upper, Rng& rng)
{
    if (lower.size() != upper.size())
        throw std::invalid_argument("recompute_position: bounds dimension mismatch");
    Vector out(lower.size());
    for (Eigen::Index i = 0; i < lower.size(); ++i)
        out[i] = rng.uniform(lower[i], upper[i]);
    return out;
}

std::optional<StopReason> should_stop(const std::vector<LeaderParticle>& leaders,
                                      long long evaluations_used, long long outer_iteration,
                                      const RunConfig& config)
{
    if (evaluations_used >= config.max_fes)
        return StopReason::BudgetExhausted;
    bool all_low = !leaders.empty();
    for (const auto& leader : leaders) {
        const NoveltyCategory c = classify(leader.novelty);
        if (c != NoveltyCategory::LowNovel && c != NoveltyCategory::NotNovel) {
            all_low = false;
            break;
        }
    }
    if (all_low)
        return StopReason::AllLowNovel;
    if (outer_iteration >= config.max_iterations_outer)
        return StopReason::MaxOuterIterations;
    return std::nullopt;
}

RunResult run(const Problem& problem, const RunConfig& config, const EngineHooks& hooks)
{
    validate(config, problem);
    const long long max_fes = resolved_max_fes(config, problem.dimension);
    RunConfig resolved = config;
    resolved.max_fes = max_fes;

    Rng rng(config.seed);
    auto base = scalar_objective(problem);
    long long fes = 0;
    auto objective = [&](const Vector& x) {
        const double f = base(x);
        ++fes;
        if (hooks.on_evaluation)
            hooks.on_evaluation(x, f);
        return f;
    };

    RunResult result;
    result.best_fitness = std::numeric_limits<double>::infinity();

    double radius = config.radius_initial;
    double threshold = config.novelty_threshold;

    std::vector<LeaderParticle> leaders(config.leader_count);
    for (int i = 0; i < config.leader_count; ++i) {
        leaders[i].index = i;
        leaders[i].radius = radius;
        leaders[i].position = recompute_position(problem.init_lower, problem.init_upper, rng);
        const double f = objective(leaders[i].position);
        if (f < result.best_fitness) {
            result.best_fitness = f;
            result.best_position = leaders[i].position;
        }
    }

    NoveltyArchive archive;
    std::optional<StopReason> reason;
    long long epoch = 0;
    while (!reason) {
        ++epoch;
        for (int i = 0; i < config.leader_count; ++i) {
            if (fes >= max_fes) {
                reason = StopReason::BudgetExhausted;
                break;
            }
            const auto peers = peers_of(leaders, i);
            const NoveltyResult nov = compute_novelty(leaders[i], peers, archive, threshold);
            leaders[i].novelty = nov.novelty;
            const bool flagged = leaders[i].recompute_flag || nov.recompute;
            if (!flagged && nov.novelty >= threshold) {
                if (max_fes - fes < config.swarm_size) {
                    // Not even a swarm initialization fits anymore.
                    reason = StopReason::BudgetExhausted;
                    break;
                }
                archive.append(leaders[i].position);
                if (hooks.on_archive_append)
                    hooks.on_archive_append(leaders[i].position, threshold, radius);
                auto init = init_swarm(leaders[i].position, radius, config.swarm_size,
                                       problem.search_lower, problem.search_upper, rng);
                const BbpsoResult inner = run_bbpso(objective, std::move(init),
                                                    problem.search_lower, problem.search_upper,
                                                    config.fitness_threshold,
                                                    config.inner_max_iterations, max_fes - fes, rng);
                if (inner.best_fitness < result.best_fitness) {
                    result.best_fitness = inner.best_fitness;
                    result.best_position = inner.best_position;
                }
                result.gbest_trace.push_back({fes, result.best_fitness, i});
            }
            // The leader moves on either way; a consumed message is cleared.
            leaders[i].position
                = recompute_position(problem.init_lower, problem.init_upper, rng);
            leaders[i].recompute_flag = false;
        }
        if (reason)
            break;

        // Fresh novelties for the new positions feed the stop rule.
        for (int i = 0; i < config.leader_count; ++i) {
            const auto peers = peers_of(leaders, i);
            leaders[i].novelty = compute_novelty(leaders[i], peers, archive, threshold).novelty;
        }
        radius += config.radius_increment;
        for (auto& leader : leaders)
            leader.radius = radius;
        threshold = std::max(threshold * (1.0 - config.threshold_decay),
                             std::numeric_limits<double>::min());
        reason = should_stop(leaders, fes, epoch, resolved);
    }

    result.stop_reason = *reason;
    result.evaluations_used = fes;
    result.outer_iterations = epoch;
    result.archive_size = archive.size();
    return result;
}

RunResult run_baseline_bbpso(const Problem& problem, const RunConfig& config,
                             const EngineHooks& hooks)
{
    validate(config, problem);
    const long long max_fes = resolved_max_fes(config, problem.dimension);

    Rng rng(config.seed);
    auto base = scalar_objective(problem);
    long long fes = 0;
    auto objective = [&](const Vector& x) {
        const double f = base(x);
        ++fes;
        if (hooks.on_evaluation)
            hooks.on_evaluation(x, f);
        return f;
    };

    std::vector<Vector> init(config.swarm_size);
    for (auto& position : init)
        position = recompute_position(problem.init_lower, problem.init_upper, rng);
    const long long sweeps = max_fes / config.swarm_size + 1;
    const int max_iterations
        = static_cast<int>(std::min<long long>(sweeps, std::numeric_limits<int>::max()));
    const BbpsoResult inner
        = run_bbpso(objective, std::move(init), problem.search_lower, problem.search_upper,
                    config.fitness_threshold, max_iterations, max_fes, rng);

    RunResult result;
    result.best_fitness = inner.best_fitness;
    result.best_position = inner.best_position;
    result.evaluations_used = fes;
    result.outer_iterations = inner.iterations_used;
    result.archive_size = 0;
    result.gbest_trace.push_back({fes, inner.best_fitness, -1});
    result.stop_reason
        = fes >= max_fes ? StopReason::BudgetExhausted : StopReason::MaxOuterIterations;
    return result;
}

void write_gbest_trace_csv(const std::vector<TraceEntry>& trace, std::ostream& out)
{
    out << "evals,best_fitness,leader_index\n";
    char buf[64];
    for (const auto& entry : trace) {
        std::snprintf(buf, sizeof(buf), "%.17g", entry.best_fitness);
        out << entry.evaluations << ',' << buf << ',' << entry.leader_index << '\n';
    }
}

void write_gbest_trace_csv(const std::vector<TraceEntry>& trace, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    write_gbest_trace_csv(trace, out);
    if (!out)
        throw IoError("failed writing trace to '" + path + "'");
}

} // namespace nspso
