#include "frontprop/trust.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "frontprop/front_solver.hpp"

namespace fprop {

namespace {
constexpr double kRankTieTol = 1e-9;
}

TrustGraph::TrustGraph(int node_count, std::span<const EdgeSpec> ratings) {
    for (const EdgeSpec& e : ratings)
        if (!(e.weight > 0.0) || e.weight > 1.0)
            throw std::invalid_argument("trust rating must lie in (0, 1]");
    ratings_ = Graph::from_edges(ratings, node_count);
}

Graph distrust_graph(const TrustGraph& tg) {
    std::vector<EdgeSpec> edges;
    edges.reserve(static_cast<std::size_t>(tg.ratings().edge_count()));
    for (int i = 0; i < tg.node_count(); ++i)
        for (const Graph::Arc& a : tg.raters_of(i))
            edges.push_back({a.node, i, 1.0 / a.weight});
    return Graph::from_edges(edges, tg.node_count());
}

Ranking rank_candidates(const TrustGraph& tg, std::span<const int> team,
                        std::span<const int> candidates, double p) {
    if (team.empty()) throw std::invalid_argument("rank_candidates: empty team");
    const Graph distrust = distrust_graph(tg);
    ProblemSpec spec(tg.node_count(), std::vector<int>(team.begin(), team.end()), p);
    const ArrivalField field = solve(distrust, spec);

    Ranking ranking;
    ranking.reserve(candidates.size());
    for (int c : candidates) {
        RankedCandidate rc;
        rc.node = c;
        rc.score = field.time[c];
        rc.unreachable = !field.reached(c);
        ranking.push_back(rc);
    }
    std::sort(ranking.begin(), ranking.end(), [](const RankedCandidate& a,
                                                 const RankedCandidate& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.node < b.node;
    });
    for (std::size_t k = 0; k < ranking.size(); ++k) {
        const bool tied =
            k > 0 && (ranking[k].score == ranking[k - 1].score ||
                      ranking[k].score - ranking[k - 1].score <= kRankTieTol);
        ranking[k].rank = tied ? ranking[k - 1].rank : static_cast<int>(k) + 1;
    }
    return ranking;
}

double neighbor_average(const TrustGraph& tg, int candidate) {
    const auto raters = tg.raters_of(candidate);
    if (raters.empty())
        throw std::invalid_argument("neighbor_average: node " + std::to_string(candidate) +
                                    " has no incoming trust edges");
    double sum = 0.0;
    for (const Graph::Arc& a : raters) sum += 1.0 / a.weight;
    return sum / static_cast<double>(raters.size());
}

TrustGraph inject_sybil_cluster(const TrustGraph& tg, int target, int size, double rating) {
    if (size < 1) throw std::invalid_argument("inject_sybil_cluster: size must be >= 1");
    if (target < 0 || target >= tg.node_count())
        throw std::invalid_argument("inject_sybil_cluster: target out of range");

    std::vector<EdgeSpec> edges;
    for (int i = 0; i < tg.node_count(); ++i)
        for (const Graph::Arc& a : tg.raters_of(i)) edges.push_back({a.node, i, a.weight});

    const int base = tg.node_count();
    for (int a = 0; a < size; ++a) {
        for (int b = 0; b < size; ++b)
            if (a != b) edges.push_back({base + a, base + b, rating});
        edges.push_back({base + a, target, rating});
        edges.push_back({target, base + a, rating});
    }
    return TrustGraph(base + size, edges);
}

}  // namespace fprop
