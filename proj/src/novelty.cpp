#include "nspso/novelty.hpp"

#include <stdexcept>

namespace nspso {

std::string to_string(NoveltyCategory category)
{
    switch (category) {
    case NoveltyCategory::HighlyNovel:
        return "highly_novel";
    case NoveltyCategory::ModeratelyNovel:
        return "moderately_novel";
    case NoveltyCategory::TypicallyNovel:
        return "typically_novel";
    case NoveltyCategory::LowNovel:
        return "low_novel";
    case NoveltyCategory::NotNovel:
        return "not_novel";
    }
    return "?";
}

double distance(const Vector& a, const Vector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("distance: dimension mismatch ("
            + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    return (a - b).norm();
}

double novelty_score(double d, double r)
{
    if (d < 0.0)
        throw std::invalid_argument("novelty_score: distance must be non-negative");
    if (!(r > 0.0))
        throw std::invalid_argument("novelty_score: radius must be positive");
    if (d >= 2.0 * r)
        return 100.0;
    return d / (2.0 * r) * 100.0;
}

NoveltyCategory classify(double ns)
{
    if (!(ns >= 0.0 && ns <= 100.0))
        throw std::invalid_argument("classify: score must lie in [0, 100]");
    if (ns == 100.0)
        return NoveltyCategory::HighlyNovel;
    if (ns > 50.0)
        return NoveltyCategory::ModeratelyNovel;
    if (ns == 50.0)
        return NoveltyCategory::TypicallyNovel;
    if (ns > 0.0)
        return NoveltyCategory::LowNovel;
    return NoveltyCategory::NotNovel;
}

NoveltyResult compute_novelty(const LeaderParticle& leader,
                              std::span<LeaderParticle* const> peers,
                              const NoveltyArchive& archive,
                              double threshold)
{
    if (!(threshold > 0.0 && threshold <= 100.0))
        throw std::invalid_argument("compute_novelty: threshold must lie in (0, 100]");

    // Phase 1: positions searched before. Any hit ends the computation.
    for (const Vector& entry : archive.entries()) {
        if (novelty_score(distance(leader.position, entry), leader.radius) < threshold)
            return {0.0, true};
    }

    // Phase 2: overlap with the other leaders' current regions.
    if (peers.empty())
        return {100.0, false};
    double sum = 0.0;
    for (LeaderParticle* peer : peers) {
        const double ns = novelty_score(distance(leader.position, peer->position), leader.radius);
        if (ns < threshold)
            peer->recompute_flag = true;
        sum += ns;
    }
    return {sum / static_cast<double>(peers.size()), false};
}

} // namespace nspso
