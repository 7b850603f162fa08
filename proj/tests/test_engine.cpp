#include "nspso/engine.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

using namespace nspso;

namespace {

LeaderParticle leader_with_novelty(double novelty)
{
    LeaderParticle leader;
    leader.novelty = novelty;
    return leader;
}

} // namespace

TEST_CASE("recompute_position samples the box uniformly")
{
    Rng rng(4);

    SUBCASE("degenerate bounds")
    {
        const Vector a = Vector::Constant(5, 3.5);
        CHECK(recompute_position(a, a, rng) == a);
    }

    SUBCASE("respects per-dimension bounds")
    {
        const Vector lo = Vector::Constant(10, -100.0);
        const Vector hi = Vector::Constant(10, 50.0);
        for (int i = 0; i < 200; ++i) {
            const Vector x = recompute_position(lo, hi, rng);
            CHECK((x.array() >= lo.array()).all());
            CHECK((x.array() <= hi.array()).all());
        }
    }

    SUBCASE("empirical mean on [0, 1]")
    {
        const Vector lo = Vector::Zero(1);
        const Vector hi = Vector::Ones(1);
        double sum = 0.0;
        for (int i = 0; i < 10000; ++i)
            sum += recompute_position(lo, hi, rng)[0];
        CHECK(std::abs(sum / 10000.0 - 0.5) <= 0.01);
    }

    SUBCASE("bounds mismatch")
    {
        CHECK_THROWS_AS(recompute_position(Vector::Zero(2), Vector::Ones(3), rng),
                        std::invalid_argument);
    }
}

TEST_CASE("should_stop priorities")
{
    RunConfig config;
    config.max_fes = 1000;
    config.max_iterations_outer = 50;

    std::vector<LeaderParticle> low(7, leader_with_novelty(10.0));
    std::vector<LeaderParticle> mixed(7, leader_with_novelty(10.0));
    mixed[3].novelty = 100.0;

    CHECK(should_stop(low, 10, 1, config) == StopReason::AllLowNovel);
    CHECK(should_stop(mixed, 10, 1, config) == std::nullopt);
    CHECK(should_stop(mixed, 1000, 1, config) == StopReason::BudgetExhausted);
    // Budget outranks the all-low-novel rule.
    CHECK(should_stop(low, 1000, 1, config) == StopReason::BudgetExhausted);
    CHECK(should_stop(mixed, 10, 50, config) == StopReason::MaxOuterIterations);
    // The all-low-novel rule outranks the iteration cap.
    CHECK(should_stop(low, 10, 50, config) == StopReason::AllLowNovel);

    // A score of exactly 50 is TypicallyNovel, not low.
    std::vector<LeaderParticle> boundary(3, leader_with_novelty(49.999));
    CHECK(should_stop(boundary, 10, 1, config) == StopReason::AllLowNovel);
    boundary[0].novelty = 50.0;
    CHECK(should_stop(boundary, 10, 1, config) == std::nullopt);
}

TEST_CASE("run validates the config before evaluating")
{
    const Problem f1 = make_problem(FunctionId::f1, 4);
    long long evaluations = 0;
    EngineHooks hooks;
    hooks.on_evaluation = [&](const Vector&, double) { ++evaluations; };

    RunConfig config;
    config.leader_count = 0;
    CHECK_THROWS_AS(run(f1, config, hooks), ConfigError);

    config = RunConfig{};
    config.novelty_threshold = 0.0;
    CHECK_THROWS_AS(run(f1, config, hooks), ConfigError);

    config = RunConfig{};
    config.max_fes = 10; // below leader_count * swarm_size
    CHECK_THROWS_AS(run(f1, config, hooks), ConfigError);

    config = RunConfig{};
    config.threshold_decay = 1.5;
    CHECK_THROWS_AS(run(f1, config, hooks), ConfigError);

    CHECK(evaluations == 0);
}

TEST_CASE("an epsilon threshold makes every leader search every epoch")
{
    const Problem f1 = make_problem(FunctionId::f1, 10);
    RunConfig config;
    config.leader_count = 3;
    config.swarm_size = 5;
    config.inner_max_iterations = 1;
    config.novelty_threshold = 1e-9;
    config.fitness_threshold = -1.0; // inner searches always use their budget
    // init (3) + three epochs of 3 searches at 10 evaluations each
    config.max_fes = 3 + 3 * 3 * 10;
    config.seed = 5;

    const RunResult result = run(f1, config);
    CHECK(result.stop_reason == StopReason::BudgetExhausted);
    CHECK(result.evaluations_used <= config.max_fes);
    CHECK(result.archive_size == 9); // grows by leader_count per epoch
    CHECK(result.gbest_trace.size() == 9);
}

TEST_CASE("budget arithmetic on a minimal allowance")
{
    const Problem f1 = make_problem(FunctionId::f1, 10);
    RunConfig config;
    config.leader_count = 7;
    config.swarm_size = 25;
    config.max_fes = 7 * 25 + 7;
    config.seed = 2;

    const RunResult result = run(f1, config);
    CHECK(result.stop_reason == StopReason::BudgetExhausted);
    CHECK(result.evaluations_used <= config.max_fes);
}

TEST_CASE("a single leader with an empty archive searches immediately")
{
    const Problem f6 = make_problem(FunctionId::f6, 3);
    RunConfig config;
    config.leader_count = 1;
    config.swarm_size = 5;
    config.inner_max_iterations = 2;
    config.max_fes = 200;
    config.seed = 8;

    const RunResult result = run(f6, config);
    CHECK(result.archive_size >= 1);
    CHECK(!result.gbest_trace.empty());
}

TEST_CASE("instrumented run: accounting, trace, archive and replay")
{
    const Problem f6 = make_problem(FunctionId::f6, 10);
    RunConfig config;
    config.max_fes = 20000;
    config.seed = 31;

    long long observed = 0;
    double best_seen = std::numeric_limits<double>::infinity();
    struct Append {
        Vector center;
        double threshold;
        double radius;
    };
    std::vector<Append> appends;
    EngineHooks hooks;
    hooks.on_evaluation = [&](const Vector&, double f) {
        ++observed;
        best_seen = std::min(best_seen, f);
    };
    hooks.on_archive_append
        = [&](const Vector& center, double th, double r) { appends.push_back({center, th, r}); };

    const RunResult result = run(f6, config, hooks);

    // Exact FES accounting.
    CHECK(result.evaluations_used == observed);
    CHECK(result.evaluations_used <= config.max_fes);

    // Gbest equals the minimum over every evaluation performed anywhere.
    CHECK(result.best_fitness == best_seen);
    CHECK(evaluate(f6, result.best_position) == result.best_fitness);

    // The trace is non-increasing and consistent with the final result.
    for (std::size_t i = 1; i < result.gbest_trace.size(); ++i) {
        CHECK(result.gbest_trace[i].best_fitness <= result.gbest_trace[i - 1].best_fitness);
        CHECK(result.gbest_trace[i].evaluations >= result.gbest_trace[i - 1].evaluations);
    }
    if (!result.gbest_trace.empty())
        CHECK(result.gbest_trace.back().best_fitness == result.best_fitness);

    // Every archived center scored at least the threshold in effect against
    // every earlier entry.
    CHECK(appends.size() == result.archive_size);
    for (std::size_t i = 0; i < appends.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const double ns = novelty_score(
                distance(appends[i].center, appends[j].center), appends[i].radius);
            CHECK(ns >= appends[i].threshold);
        }

    // Bit-exact replay from the same seed.
    const RunResult replay = run(f6, config);
    CHECK(replay.best_fitness == result.best_fitness);
    CHECK(replay.best_position == result.best_position);
    CHECK(replay.evaluations_used == result.evaluations_used);
    CHECK(replay.outer_iterations == result.outer_iterations);
    CHECK(replay.archive_size == result.archive_size);
    REQUIRE(replay.gbest_trace.size() == result.gbest_trace.size());
    for (std::size_t i = 0; i < replay.gbest_trace.size(); ++i) {
        CHECK(replay.gbest_trace[i].evaluations == result.gbest_trace[i].evaluations);
        CHECK(replay.gbest_trace[i].best_fitness == result.gbest_trace[i].best_fitness);
        CHECK(replay.gbest_trace[i].leader_index == result.gbest_trace[i].leader_index);
    }
}

TEST_CASE("trace csv format")
{
    std::vector<TraceEntry> trace{{25, 1.5, 0}, {60, 0.25, 3}};
    std::ostringstream out;
    write_gbest_trace_csv(trace, out);
    CHECK(out.str() == "evals,best_fitness,leader_index\n25,1.5,0\n60,0.25,3\n");
    CHECK_THROWS_AS(write_gbest_trace_csv(trace, "/nonexistent/dir/trace.csv"), IoError);
}

TEST_CASE("baseline bbpso runs the whole domain under the same budget")
{
    const Problem f6 = make_problem(FunctionId::f6, 5);
    RunConfig config;
    config.swarm_size = 20;
    config.max_fes = 5000;
    config.fitness_threshold = -1.0;
    config.seed = 12;

    long long observed = 0;
    EngineHooks hooks;
    hooks.on_evaluation = [&](const Vector&, double) { ++observed; };
    const RunResult result = run_baseline_bbpso(f6, config, hooks);
    CHECK(result.evaluations_used == observed);
    CHECK(result.evaluations_used == config.max_fes);
    CHECK(result.stop_reason == StopReason::BudgetExhausted);
    CHECK(result.archive_size == 0);

    // Deterministic as well.
    const RunResult replay = run_baseline_bbpso(f6, config);
    CHECK(replay.best_fitness == result.best_fitness);
    CHECK(replay.best_position == result.best_position);
}

TEST_CASE("resolved_max_fes uses the experimental default")
{
    RunConfig config;
    CHECK(resolved_max_fes(config, 10) == 5000ll * 10 * 60);
    config.max_fes = 1234;
    CHECK(resolved_max_fes(config, 10) == 1234);
}
