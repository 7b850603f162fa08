#include "nspso/bbpso.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace nspso;

TEST_CASE("init_swarm stays inside sphere and bounds")
{
    Rng rng(1);

    SUBCASE("unit disk in 2-D")
    {
        const Vector center = Vector::Zero(2);
        const auto points = init_swarm(center, 1.0, 100, Vector::Constant(2, -5.0),
                                       Vector::Constant(2, 5.0), rng);
        REQUIRE(points.size() == 100);
        for (const auto& p : points)
            CHECK((p - center).norm() <= 1.0);
    }

    SUBCASE("tiny radius collapses onto the center")
    {
        const Vector center = Vector::Constant(3, 0.25);
        const auto points = init_swarm(center, 1e-12, 20, Vector::Constant(3, -1.0),
                                       Vector::Constant(3, 1.0), rng);
        for (const auto& p : points)
            CHECK((p - center).norm() <= 1e-12);
    }

    SUBCASE("center at a bounds corner keeps every point feasible")
    {
        const Vector lower = Vector::Constant(10, -5.0);
        const Vector upper = Vector::Constant(10, 5.0);
        const Vector center = upper; // exactly on the corner
        const auto points = init_swarm(center, 1.0, 50, lower, upper, rng);
        REQUIRE(points.size() == 50);
        for (const auto& p : points) {
            CHECK((p.array() >= lower.array()).all());
            CHECK((p.array() <= upper.array()).all());
            CHECK((p - center).norm() <= 1.0);
        }
    }

    SUBCASE("sphere outside the box is infeasible")
    {
        const Vector center = Vector::Constant(2, 100.0);
        CHECK_THROWS_AS(init_swarm(center, 1.0, 5, Vector::Constant(2, -1.0),
                                   Vector::Constant(2, 1.0), rng),
                        InfeasibleRegionError);
    }

    SUBCASE("argument errors")
    {
        const Vector center = Vector::Zero(2);
        const Vector lo = Vector::Constant(2, -1.0);
        const Vector hi = Vector::Constant(2, 1.0);
        CHECK_THROWS_AS(init_swarm(center, 1.0, 0, lo, hi, rng), std::invalid_argument);
        CHECK_THROWS_AS(init_swarm(center, 0.0, 5, lo, hi, rng), std::invalid_argument);
        CHECK_THROWS_AS(init_swarm(center, 1.0, 5, Vector::Zero(3), hi, rng),
                        std::invalid_argument);
    }
}

TEST_CASE("sample_position follows the per-dimension gaussian rule")
{
    Rng rng(2);

    SUBCASE("identical pbest and gbest reproduce the point exactly")
    {
        const Vector v = Vector{{0.5, -3.25, 7.0}};
        CHECK(sample_position(v, v, rng) == v);
    }

    SUBCASE("zero-spread coordinates stay put while others move")
    {
        const Vector pbest{{0.0, 5.0}};
        const Vector gbest{{2.0, 5.0}};
        for (int i = 0; i < 100; ++i) {
            const Vector s = sample_position(pbest, gbest, rng);
            CHECK(s[1] == 5.0);
        }
    }

    SUBCASE("empirical mean and spread match the rule")
    {
        const Vector pbest{{0.0}};
        const Vector gbest{{2.0}};
        const int samples = 100000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double v = sample_position(pbest, gbest, rng)[0];
            sum += v;
            sum_sq += v * v;
        }
        const double mean = sum / samples;
        const double sd = std::sqrt(sum_sq / samples - mean * mean);
        CHECK(std::abs(mean - 1.0) <= 2.0 * (2.0 / std::sqrt(samples)));
        CHECK(std::abs(sd - 2.0) <= 0.04);
    }

    SUBCASE("length mismatch")
    {
        CHECK_THROWS_AS(sample_position(Vector::Zero(2), Vector::Zero(3), rng),
                        std::invalid_argument);
    }
}

TEST_CASE("run_bbpso converges on the sphere near the optimum")
{
    const Problem f1 = make_problem(FunctionId::f1, 2);
    const Vector center{{0.1, 0.1}};
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Rng rng(seed);
        const auto result = run_bbpso(f1, center, 1.0, 25, 1e-6, 500, 1000000, rng);
        CAPTURE(seed);
        CHECK(result.best_fitness <= 1e-6);
    }
}

TEST_CASE("run_bbpso respects the evaluation budget")
{
    const Problem f6 = make_problem(FunctionId::f6, 5);

    SUBCASE("budget equal to the swarm returns the best initial sample")
    {
        Rng rng(9);
        long long calls = 0;
        double best_seen = std::numeric_limits<double>::infinity();
        auto objective = [&](const Vector& x) {
            ++calls;
            const double f = evaluate(f6, x);
            best_seen = std::min(best_seen, f);
            return f;
        };
        auto init = init_swarm(Vector::Zero(5), 2.0, 25, f6.search_lower, f6.search_upper, rng);
        const auto result = run_bbpso(objective, std::move(init), f6.search_lower,
                                      f6.search_upper, 1e-8, 100, 25, rng);
        CHECK(result.evaluations_used == 25);
        CHECK(calls == 25);
        CHECK(result.iterations_used == 0);
        CHECK(result.best_fitness == best_seen);
    }

    SUBCASE("evaluations never exceed the budget and gbest is the running minimum")
    {
        for (const long long budget : {25ll, 60ll, 113ll, 500ll}) {
            Rng rng(33);
            long long calls = 0;
            double best_seen = std::numeric_limits<double>::infinity();
            auto objective = [&](const Vector& x) {
                ++calls;
                const double f = evaluate(f6, x);
                best_seen = std::min(best_seen, f);
                return f;
            };
            auto init
                = init_swarm(Vector::Ones(5), 1.0, 25, f6.search_lower, f6.search_upper, rng);
            const auto result = run_bbpso(objective, std::move(init), f6.search_lower,
                                          f6.search_upper, -1.0, 1000, budget, rng);
            CHECK(result.evaluations_used == calls);
            CHECK(result.evaluations_used <= budget);
            CHECK(result.best_fitness == best_seen);
            CHECK(evaluate(f6, result.best_position) == result.best_fitness);
        }
    }

    SUBCASE("preconditions")
    {
        Rng rng(3);
        auto objective = [&](const Vector&) { return 0.0; };
        std::vector<Vector> one{Vector::Zero(2)};
        CHECK_THROWS_AS(run_bbpso(objective, one, Vector::Constant(2, -1.0),
                                  Vector::Constant(2, 1.0), 0.0, 10, 100, rng),
                        std::invalid_argument);
        std::vector<Vector> two{Vector::Zero(2), Vector::Ones(2)};
        CHECK_THROWS_AS(run_bbpso(objective, two, Vector::Constant(2, -1.0),
                                  Vector::Constant(2, 1.0), 0.0, 10, 1, rng),
                        std::invalid_argument);
    }
}

TEST_CASE("ties keep the old personal best")
{
    // On a constant objective no sample strictly improves, so the reported
    // best must stay at the very first initial position.
    Rng rng(44);
    auto objective = [](const Vector&) { return 1.0; };
    std::vector<Vector> init{Vector{{0.0, 0.0}}, Vector{{1.0, 1.0}}, Vector{{2.0, 2.0}}};
    const Vector first = init[0];
    const auto result = run_bbpso(objective, std::move(init), Vector::Constant(2, -10.0),
                                  Vector::Constant(2, 10.0), 0.5, 20, 1000, rng);
    CHECK(result.best_fitness == 1.0);
    CHECK(result.best_position == first);
}

TEST_CASE("run_bbpso keeps sampled positions inside the search bounds")
{
    const Problem f5 = make_problem(FunctionId::f5, 4); // narrow box, clamping matters
    Rng rng(17);
    bool out_of_bounds = false;
    auto objective = [&](const Vector& x) {
        if ((x.array() < f5.search_lower.array()).any()
            || (x.array() > f5.search_upper.array()).any())
            out_of_bounds = true;
        return evaluate(f5, x);
    };
    auto init = init_swarm(Vector::Constant(4, 0.45), 0.3, 10, f5.search_lower,
                           f5.search_upper, rng);
    run_bbpso(objective, std::move(init), f5.search_lower, f5.search_upper, -1.0, 50, 400, rng);
    CHECK_FALSE(out_of_bounds);
}

TEST_CASE("run_bbpso is deterministic given the seed")
{
    const Problem f3 = make_problem(FunctionId::f3, 6);
    const Vector center = Vector::Constant(6, 1.0);
    Rng a(123), b(123);
    const auto ra = run_bbpso(f3, center, 1.5, 10, 1e-10, 40, 2000, a);
    const auto rb = run_bbpso(f3, center, 1.5, 10, 1e-10, 40, 2000, b);
    CHECK(ra.best_fitness == rb.best_fitness);
    CHECK(ra.best_position == rb.best_position);
    CHECK(ra.evaluations_used == rb.evaluations_used);
    CHECK(ra.iterations_used == rb.iterations_used);
}
