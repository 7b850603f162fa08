#pragma once

#include "nspso/bench.hpp"
#include "nspso/rng.hpp"
#include "nspso/types.hpp"

#include <functional>
#include <vector>

namespace nspso {

/// One swarm member. pbest_* track the best position this particle has ever
/// evaluated (strict improvement only, ties keep the old best).
struct SwarmParticle {
    Vector position;
    double fitness = 0.0;
    Vector pbest_position;
    double pbest_fitness = 0.0;
};

struct SwarmState {
    std::vector<SwarmParticle> particles;
    Vector gbest_position;
    double gbest_fitness = 0.0;
    int iterations_used = 0;
    long long evaluations_used = 0;
};

struct BbpsoResult {
    Vector best_position;
    double best_fitness = 0.0;
    long long evaluations_used = 0;
    int iterations_used = 0;
};

using Objective = std::function<double(const Vector&)>;

/// `count` positions distributed uniformly over the intersection of the
/// hypersphere around `center` and the [lower, upper] box. Candidates
/// falling outside are rejected; 10000 * count consecutive rejections
/// without a single acceptance raise InfeasibleRegionError.
std::vector<Vector> init_swarm(const Vector& center, double radius, int count,
                               const Vector& lower, const Vector& upper, Rng& rng);

/// Gaussian per-dimension resampling: coordinate j is drawn from
/// N((pbest_j + gbest_j) / 2, |pbest_j - gbest_j|). Coordinates with zero
/// spread stay at the mean exactly.
Vector sample_position(const Vector& pbest, const Vector& gbest, Rng& rng);

/// Bare-bones PSO over caller-provided initial positions. Evaluates the
/// initial swarm, then sweeps sample_position / evaluate / pbest updates
/// with a synchronous gbest refresh per sweep. Stops as soon as the best
/// fitness reaches `fitness_threshold`, `max_iterations` sweeps are done, or
/// the budget is spent; the budget is checked before every evaluation and is
/// never exceeded. Sampled positions are clamped to [lower, upper].
BbpsoResult run_bbpso(const Objective& objective, std::vector<Vector> initial_positions,
                      const Vector& lower, const Vector& upper, double fitness_threshold,
                      int max_iterations, long long evaluation_budget, Rng& rng);

/// Bare-bones PSO on a benchmark problem, with the swarm initialized inside
/// the hypersphere around `center`. Requires swarm_size >= 2 and
/// evaluation_budget >= swarm_size.
BbpsoResult run_bbpso(const Problem& problem, const Vector& center, double radius,
                      int swarm_size, double fitness_threshold, int max_iterations,
                      long long evaluation_budget, Rng& rng);

} // namespace nspso
