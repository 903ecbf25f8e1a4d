#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frontprop/front_solver.hpp"
#include "frontprop/trust.hpp"
#include "testutil.hpp"

using namespace fprop;

namespace {

const double kInfP = ProblemSpec::infinite_p;

/// Random trust graph over advogato-style ratings where every node is
/// reachable from node 0.
TrustGraph random_trust_graph(int n, double extra_edge_prob, std::uint64_t& state) {
    static const double kRatings[] = {0.4, 0.6, 0.8, 1.0};
    std::vector<EdgeSpec> edges;
    std::set<std::pair<int, int>> used;
    auto rating = [&] { return kRatings[testutil::uint_below(state, 4)]; };
    for (int i = 1; i < n; ++i) {
        const int parent = testutil::uint_below(state, i);
        edges.push_back({parent, i, rating()});
        used.emplace(parent, i);
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && !used.count({a, b}) && testutil::urand(state) < extra_edge_prob)
                edges.push_back({a, b, rating()});
    return TrustGraph(n, edges);
}

}  // namespace

TEST_CASE("distrust weights are reciprocals") {
    const std::vector<EdgeSpec> ratings = {{0, 1, 1.0}, {0, 2, 0.4}, {1, 2, 0.8}};
    const TrustGraph tg(3, ratings);
    const Graph d = distrust_graph(tg);
    CHECK(d.weight(0, 1) == doctest::Approx(1.0));
    CHECK(d.weight(0, 2) == doctest::Approx(2.5));
    CHECK(d.weight(1, 2) == doctest::Approx(1.25));
    CHECK_THROWS_AS(TrustGraph(2, std::vector<EdgeSpec>{{0, 1, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(TrustGraph(2, std::vector<EdgeSpec>{{0, 1, 1.4}}), std::invalid_argument);
}

TEST_CASE("rank_candidates on small fixtures") {
    // candidate 1 adjacent to the team via full trust: score 1 at p=inf
    const TrustGraph direct(2, std::vector<EdgeSpec>{{0, 1, 1.0}});
    const Ranking r1 = rank_candidates(direct, std::vector<int>{0}, std::vector<int>{1}, kInfP);
    REQUIRE(r1.size() == 1);
    CHECK(r1[0].score == doctest::Approx(1.0));
    CHECK(r1[0].rank == 1);

    // diamond: team -> a, team -> b, a -> G, b -> G at full trust
    const TrustGraph dia(4, std::vector<EdgeSpec>{{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0},
                                                  {2, 3, 1.0}});
    const Ranking rl1 = rank_candidates(dia, std::vector<int>{0}, std::vector<int>{3}, 1.0);
    CHECK(rl1[0].score == doctest::Approx(1.5));
    const Ranking rl2 = rank_candidates(dia, std::vector<int>{0}, std::vector<int>{3}, 2.0);
    CHECK(rl2[0].score == doctest::Approx(1.0 + 1.0 / std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("unreachable candidates rank last and are flagged") {
    const TrustGraph tg(4, std::vector<EdgeSpec>{{0, 1, 1.0}, {3, 2, 1.0}});
    const Ranking r = rank_candidates(tg, std::vector<int>{0}, std::vector<int>{2, 1, 3}, kInfP);
    REQUIRE(r.size() == 3);
    CHECK(r[0].node == 1);
    CHECK(!r[0].unreachable);
    CHECK(std::isinf(r[1].score));
    CHECK(r[1].unreachable);
    CHECK(r[1].node == 2);  // inf ties break by node id
    CHECK(r[2].node == 3);
    CHECK(r[1].rank == r[2].rank);  // equal scores share a rank
}

TEST_CASE("neighbor average") {
    const TrustGraph tg(5, std::vector<EdgeSpec>{{0, 4, 1.0}, {1, 4, 1.0}, {2, 4, 1.0},
                                                 {0, 3, 0.8}, {1, 3, 0.8}, {2, 3, 1.0}});
    CHECK(neighbor_average(tg, 4) == doctest::Approx(1.0));
    CHECK(neighbor_average(tg, 3) == doctest::Approx((1.25 + 1.25 + 1.0) / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(neighbor_average(tg, 0), std::invalid_argument);

    const TrustGraph single(2, std::vector<EdgeSpec>{{0, 1, 0.4}});
    CHECK(neighbor_average(single, 1) == doctest::Approx(2.5));
}

TEST_CASE("sybil cluster injection counts") {
    const TrustGraph tg(3, std::vector<EdgeSpec>{{0, 1, 0.8}, {1, 2, 0.6}});
    const TrustGraph big = inject_sybil_cluster(tg, 2, 50, 1.0);
    CHECK(big.node_count() == 53);
    CHECK(big.ratings().edge_count() == 2 + 50 * 49 + 2 * 50);

    const TrustGraph one = inject_sybil_cluster(tg, 2, 1, 1.0);
    CHECK(one.node_count() == 4);
    CHECK(one.ratings().edge_count() == 2 + 0 + 2);

    // original edges untouched
    CHECK(big.ratings().weight(0, 1) == doctest::Approx(0.8));
    CHECK(big.ratings().weight(1, 2) == doctest::Approx(0.6));
}

TEST_CASE("sybil cluster lowers the neighbor average of a distrusted target") {
    // target rated 0.6 twice: prior average 1/0.6 = 1.667 > 1
    const TrustGraph tg(3, std::vector<EdgeSpec>{{0, 2, 0.6}, {1, 2, 0.6}});
    const double before = neighbor_average(tg, 2);
    const TrustGraph after_tg = inject_sybil_cluster(tg, 2, 50, 1.0);
    const double after = neighbor_average(after_tg, 2);
    CHECK(before > 1.0);
    CHECK(after < before);
}

TEST_CASE("sybil invariance: arrival times on original nodes are bitwise unchanged") {
    std::uint64_t state = seed_state(4242);
    for (int round = 0; round < 12; ++round) {
        const int n = 8 + testutil::uint_below(state, 10);
        const TrustGraph tg = random_trust_graph(n, 0.15, state);
        const int target = 1 + testutil::uint_below(state, n - 1);
        const TrustGraph attacked = inject_sybil_cluster(tg, target, 50, 1.0);

        const Graph base = distrust_graph(tg);
        const Graph modified = distrust_graph(attacked);
        for (double p : {1.0, 2.0, kInfP}) {
            const ArrivalField fb = solve(base, ProblemSpec(n, std::vector<int>{0}, p));
            const ArrivalField fm =
                solve(modified, ProblemSpec(attacked.node_count(), std::vector<int>{0}, p));
            for (int i = 0; i < n; ++i) CHECK(fb.time[i] == fm.time[i]);
        }
    }
}

TEST_CASE("uniform rating rescale preserves ranking order") {
    std::uint64_t state = seed_state(9001);
    const int n = 14;
    const TrustGraph tg = random_trust_graph(n, 0.2, state);
    const std::vector<int> team = {0};
    std::vector<int> candidates;
    for (int i = n / 2; i < n; ++i) candidates.push_back(i);

    // scale all ratings by c in (0,1]; distrust weights scale by 1/c, so
    // every arrival time scales by c and the order is unchanged
    const double c = 0.5;
    std::vector<EdgeSpec> scaled;
    for (int i = 0; i < n; ++i)
        for (const Graph::Arc& a : tg.raters_of(i)) scaled.push_back({a.node, i, c * a.weight});
    const TrustGraph tg2(n, scaled);

    for (double p : {1.0, 2.0, kInfP}) {
        const Ranking r1 = rank_candidates(tg, team, candidates, p);
        const Ranking r2 = rank_candidates(tg2, team, candidates, p);
        REQUIRE(r1.size() == r2.size());
        for (std::size_t k = 0; k < r1.size(); ++k) {
            CHECK(r1[k].node == r2[k].node);
            CHECK(r1[k].rank == r2[k].rank);
            if (!r1[k].unreachable)
                CHECK(r2[k].score == doctest::Approx(c * r1[k].score).epsilon(1e-11));
        }
    }
}
