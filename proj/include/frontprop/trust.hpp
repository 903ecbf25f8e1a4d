#pragma once

#include <span>
#include <vector>

#include "frontprop/graph.hpp"

namespace fprop {

/// Directed trust network: edge (i,j) means i trusts j with rating
/// omega(i,j) in (0, 1]. Stored on a Graph whose weights are the ratings.
class TrustGraph {
public:
    TrustGraph(int node_count, std::span<const EdgeSpec> ratings);

    int node_count() const { return ratings_.node_count(); }
    const Graph& ratings() const { return ratings_; }
    /// Incoming trust arcs {i, omega(i, candidate)}.
    std::span<const Graph::Arc> raters_of(int candidate) const {
        return ratings_.in_neighbors(candidate);
    }

private:
    Graph ratings_;
};

/// Same edges, weight 1/omega: low trust becomes high resistance.
Graph distrust_graph(const TrustGraph& tg);

struct RankedCandidate {
    int node = 0;
    double score = 0.0;  // arrival time of distrust; +inf when unreachable
    int rank = 0;        // 1-based, shared within a tie group (1e-9)
    bool unreachable = false;
};

using Ranking = std::vector<RankedCandidate>;

/// Propagates distrust from the team (boundary 0, s = 1, model p) and ranks
/// candidates by ascending arrival time. Unreachable candidates score +inf
/// and rank last; ties inside a group are ordered by node id.
Ranking rank_candidates(const TrustGraph& tg, std::span<const int> team,
                        std::span<const int> candidates, double p);

/// Baseline: mean of 1/omega over the users trusting the candidate.
/// Throws when nobody rates the candidate.
double neighbor_average(const TrustGraph& tg, int candidate);

/// Returns a copy with `size` new nodes appended, fully mutually connected
/// and tied to `target` in both directions, all at `rating`. No other edge
/// is touched.
TrustGraph inject_sybil_cluster(const TrustGraph& tg, int target, int size, double rating);

}  // namespace fprop
