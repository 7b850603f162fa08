#pragma once

#include "nspso/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace nspso {

/// Overlap categories between two region centers, from fully disjoint
/// (d >= 2r, score 100) down to exact coincidence (d == 0, score 0).
enum class NoveltyCategory {
    HighlyNovel,
    ModeratelyNovel,
    TypicallyNovel,
    LowNovel,
    NotNovel,
};

std::string to_string(NoveltyCategory category);

/// Euclidean distance between two points of equal dimension.
double distance(const Vector& a, const Vector& b);

/// Pairwise novelty score in percent: min(100, 100 * d / (2r)).
/// Monotone non-decreasing in d; requires d >= 0 and r > 0.
double novelty_score(double d, double r);

/// Category of a score in [0, 100]. Exactly 100 is HighlyNovel, exactly 50
/// TypicallyNovel, exactly 0 NotNovel; the open intervals in between map to
/// ModeratelyNovel and LowNovel.
NoveltyCategory classify(double ns);

/// A region owner: `position` is the center of a hypersphere of radius
/// `radius`, `novelty` the mean pairwise score against the peers, and
/// `recompute_flag` a pending relocation message from another leader.
struct LeaderParticle {
    int index = 0;
    Vector position;
    double radius = 1.0;
    double novelty = 100.0;
    bool recompute_flag = false;
};

/// Append-only record of region centers where an inner PSO search was
/// actually launched.
class NoveltyArchive {
public:
    void append(Vector center) { entries_.push_back(std::move(center)); }
    const std::vector<Vector>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<Vector> entries_;
};

struct NoveltyResult {
    double novelty = 0.0;
    bool recompute = false;
};

/// Novelty of `leader` against the archive, then its peers.
///
/// Archive entries are scanned in order; any entry scoring below `threshold`
/// means the region was searched before and the result is (0, true)
/// immediately. Otherwise every peer's current position is scored with the
/// leader's radius, peers scoring below `threshold` get their recompute_flag
/// set, and the mean peer score is returned. With no peers the leader is
/// novel by default: (100, false).
NoveltyResult compute_novelty(const LeaderParticle& leader,
                              std::span<LeaderParticle* const> peers,
                              const NoveltyArchive& archive,
                              double threshold);

} // namespace nspso
