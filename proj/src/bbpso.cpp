#include "nspso/bbpso.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace nspso {

namespace {

    // gbest is refreshed synchronously, after a full sweep over the swarm.
    void refresh_gbest(SwarmState& s)
    {
        const SwarmParticle* best = nullptr;
        for (const auto& p : s.particles)
            if (!best || p.pbest_fitness < best->pbest_fitness)
                best = &p;
        s.gbest_position = best->pbest_position;
        s.gbest_fitness = best->pbest_fitness;
    }

} // namespace

std::vector<Vector> init_swarm(const Vector& center, double radius, int count,
                               const Vector& lower, const Vector& upper, Rng& rng)
{
    if (count < 1)
        throw std::invalid_argument("init_swarm: count must be positive");
    if (!(radius > 0.0))
        throw std::invalid_argument("init_swarm: radius must be positive");
    if (lower.size() != center.size() || upper.size() != center.size())
        throw std::invalid_argument("init_swarm: bounds dimension mismatch");

    const Eigen::Index d = center.size();
    const long long rejection_limit = 10000ll * count;
    long long consecutive_rejections = 0;

    std::vector<Vector> out;
    out.reserve(count);
    Vector direction(d);
    while (static_cast<int>(out.size()) < count) {
        double norm = 0.0;
        do {
            for (Eigen::Index i = 0; i < d; ++i)
                direction[i] = rng.gaussian();
            norm = direction.norm();
        } while (norm == 0.0);
        // Uniform radius within the ball, then rejection against the box, so
        // accepted points are uniform over the sphere/box intersection.
        const double scale
            = radius * std::pow(rng.uniform01(), 1.0 / static_cast<double>(d)) / norm;
        Vector candidate = center + scale * direction;
        const bool inside = (candidate - center).norm() <= radius
            && (candidate.array() >= lower.array()).all()
            && (candidate.array() <= upper.array()).all();
        if (inside) {
            out.push_back(std::move(candidate));
            consecutive_rejections = 0;
        } else if (++consecutive_rejections >= rejection_limit) {
            throw InfeasibleRegionError(
                "init_swarm: no acceptable position found; the sphere does not "
                "intersect the feasible box");
        }
    }
    return out;
}

Vector sample_position(const Vector& pbest, const Vector& gbest, Rng& rng)
{
    if (pbest.size() != gbest.size())
        throw std::invalid_argument("sample_position: dimension mismatch");
    Vector out(pbest.size());
    for (Eigen::Index i = 0; i < pbest.size(); ++i) {
        const double mean = 0.5 * (pbest[i] + gbest[i]);
        const double sd = std::abs(pbest[i] - gbest[i]);
        out[i] = sd == 0.0 ? mean : rng.gaussian(mean, sd);
    }
    return out;
}

BbpsoResult run_bbpso(const Objective& objective, std::vector<Vector> initial_positions,
                      const Vector& lower, const Vector& upper, double fitness_threshold,
                      int max_iterations, long long evaluation_budget, Rng& rng)
{
    const int n = static_cast<int>(initial_positions.size());
    if (n < 2)
        throw std::invalid_argument("run_bbpso: swarm size must be at least 2");
    if (evaluation_budget < n)
        throw std::invalid_argument("run_bbpso: budget must cover the initial swarm");

    SwarmState s;
    s.particles.resize(n);
    for (int i = 0; i < n; ++i) {
        auto& p = s.particles[i];
        p.position = std::move(initial_positions[i]);
        p.fitness = objective(p.position);
        ++s.evaluations_used;
        p.pbest_position = p.position;
        p.pbest_fitness = p.fitness;
    }
    refresh_gbest(s);

    while (s.gbest_fitness > fitness_threshold && s.iterations_used < max_iterations
           && s.evaluations_used < evaluation_budget) {
        ++s.iterations_used;
        for (auto& p : s.particles) {
            if (s.evaluations_used >= evaluation_budget)
                break;
            Vector candidate = sample_position(p.pbest_position, s.gbest_position, rng);
            candidate = candidate.cwiseMax(lower).cwiseMin(upper);
            const double f = objective(candidate);
            ++s.evaluations_used;
            if (f < p.pbest_fitness) {
                p.pbest_fitness = f;
                p.pbest_position = candidate;
            }
            p.position = std::move(candidate);
            p.fitness = f;
        }
        refresh_gbest(s);
    }
    return {s.gbest_position, s.gbest_fitness, s.evaluations_used, s.iterations_used};
}

BbpsoResult run_bbpso(const Problem& problem, const Vector& center, double radius,
                      int swarm_size, double fitness_threshold, int max_iterations,
                      long long evaluation_budget, Rng& rng)
{
    auto objective = scalar_objective(problem);
    auto init = init_swarm(center, radius, swarm_size, problem.search_lower,
                           problem.search_upper, rng);
    return run_bbpso(objective, std::move(init), problem.search_lower, problem.search_upper,
                     fitness_threshold, max_iterations, evaluation_budget, rng);
}

} // namespace nspso
