#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frontprop/front_solver.hpp"
#include "frontprop/local_update.hpp"
#include "testutil.hpp"

using namespace fprop;

namespace {
const double kInfP = ProblemSpec::infinite_p;
}

TEST_CASE("path graph solves to its cumulative edge times") {
    const Graph g = testutil::path3();
    for (double p : {1.0, 1.5, 2.0, 3.0, kInfP}) {
        const ArrivalField f = solve(g, ProblemSpec(3, std::vector<int>{0}, p));
        CHECK(f.time[0] == 0.0);
        CHECK(f.time[1] == doctest::Approx(1.0));
        CHECK(f.time[2] == doctest::Approx(2.0));
    }
}

TEST_CASE("diamond fixture hits the three closed forms") {
    const Graph g = testutil::diamond();
    auto u_i = [&](double p) {
        return solve(g, ProblemSpec(4, std::vector<int>{0}, p)).time[3];
    };
    CHECK(u_i(kInfP) == doctest::Approx(2.0));
    CHECK(u_i(2.0) == doctest::Approx(1.0 + 1.0 / std::sqrt(2.0)).epsilon(1e-13));
    CHECK(u_i(1.0) == doctest::Approx(1.5));
}

TEST_CASE("square grid at p=inf carries the Manhattan distance") {
    // 5x5 grid, unit spacing and weights, source at the center
    std::vector<EdgeSpec> edges;
    auto id = [](int x, int y) { return y * 5 + x; };
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) {
            if (x + 1 < 5) {
                edges.push_back({id(x, y), id(x + 1, y), 1.0});
                edges.push_back({id(x + 1, y), id(x, y), 1.0});
            }
            if (y + 1 < 5) {
                edges.push_back({id(x, y), id(x, y + 1), 1.0});
                edges.push_back({id(x, y + 1), id(x, y), 1.0});
            }
        }
    const Graph g = Graph::from_edges(edges, 25);
    const ArrivalField f = solve(g, ProblemSpec(25, std::vector<int>{id(2, 2)}, kInfP));

    // independent oracle: Dijkstra with edge cost s/w
    const std::vector<double> ref = testutil::dijkstra_reference(
        g, {{id(2, 2), 0.0}}, std::vector<double>(25, 1.0));
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) {
            CHECK(f.time[id(x, y)] == ref[id(x, y)]);
            CHECK(f.time[id(x, y)] == doctest::Approx(std::abs(x - 2) + std::abs(y - 2)));
        }
}

TEST_CASE("solve_with_trace on the named fixtures") {
    const Graph path = testutil::path3();
    const auto [pf, pt] = solve_with_trace(path, ProblemSpec(3, std::vector<int>{0}, kInfP));
    REQUIRE(pt.values.size() == 3);
    CHECK(pt.values[0] == 0.0);
    CHECK(pt.values[1] == doctest::Approx(1.0));
    CHECK(pt.values[2] == doctest::Approx(2.0));
    CHECK(pt.fronts[0] == std::vector<int>{0});
    CHECK(pt.fronts[1] == std::vector<int>{1});
    CHECK(pt.fronts[2] == std::vector<int>{2});

    // star: simultaneous acceptance into one front
    std::vector<EdgeSpec> spokes;
    for (int i = 1; i <= 4; ++i) spokes.push_back({0, i, 1.0});
    const Graph star = Graph::from_edges(spokes, 5);
    const auto [sf, st] = solve_with_trace(star, ProblemSpec(5, std::vector<int>{0}, kInfP));
    REQUIRE(st.values.size() == 2);
    CHECK(st.values[1] == doctest::Approx(1.0));
    CHECK(st.fronts[1] == std::vector<int>{1, 2, 3, 4});

    const Graph dia = testutil::diamond();
    const auto [df, dt] = solve_with_trace(dia, ProblemSpec(4, std::vector<int>{0}, 2.0));
    REQUIRE(dt.values.size() == 3);
    CHECK(dt.values[0] == 0.0);
    CHECK(dt.values[1] == doctest::Approx(1.0));
    CHECK(dt.values[2] == doctest::Approx(1.0 + 1.0 / std::sqrt(2.0)));
    CHECK(dt.fronts[1] == std::vector<int>{1, 2});
    CHECK(dt.fronts[2] == std::vector<int>{3});
}

TEST_CASE("trace sets satisfy the known/candidate invariants") {
    std::uint64_t state = seed_state(42);
    const Graph g = testutil::random_connected_digraph(25, 0.1, 0.5, 2.0, state);
    const auto [field, trace] = solve_with_trace(g, ProblemSpec(25, std::vector<int>{0}, 2.0));
    std::vector<int> acc;
    for (std::size_t l = 0; l < trace.fronts.size(); ++l) {
        acc.insert(acc.end(), trace.fronts[l].begin(), trace.fronts[l].end());
        std::sort(acc.begin(), acc.end());
        CHECK(trace.known_set(static_cast<int>(l)) == acc);
        // candidate set: out-neighbors of the known set, minus the known set
        const std::vector<int> cand = trace.candidate_set(g, static_cast<int>(l));
        for (int c : cand) CHECK(!std::binary_search(acc.begin(), acc.end(), c));
        // the next front is always drawn from the current candidates
        if (l + 1 < trace.fronts.size())
            for (int nxt : trace.fronts[l + 1])
                CHECK(std::binary_search(cand.begin(), cand.end(), nxt));
    }
    // field and trace agree
    for (int i = 0; i < 25; ++i) {
        if (!field.reached(i)) continue;
        const int k = field.front_index[i];
        CHECK(std::abs(field.time[i] - field.front_values[k]) <= 1e-12);
        const auto& vk = trace.fronts[k];
        CHECK(std::find(vk.begin(), vk.end(), i) != vk.end());
    }
}

TEST_CASE("front values strictly increase and match the field") {
    std::uint64_t state = seed_state(77);
    for (int round = 0; round < 20; ++round) {
        const Graph g = testutil::random_connected_digraph(40, 0.08, 0.2, 4.0, state);
        for (double p : {1.0, 2.0, kInfP}) {
            const ArrivalField f = solve(g, ProblemSpec(40, std::vector<int>{0}, p));
            for (std::size_t k = 1; k < f.front_values.size(); ++k)
                CHECK(f.front_values[k] > f.front_values[k - 1]);
            for (int i = 0; i < 40; ++i)
                if (f.reached(i))
                    CHECK(std::abs(f.time[i] - f.front_values[f.front_index[i]]) <= 1e-12);
        }
    }
}

TEST_CASE("residual vanishes at reached interior nodes for all p") {
    std::uint64_t state = seed_state(99);
    for (int round = 0; round < 10; ++round) {
        const int n = 30;
        const Graph g = testutil::random_connected_digraph(n, 0.1, 0.1, 10.0, state);
        std::vector<double> s(n);
        for (double& v : s) v = 0.1 + 4.9 * testutil::urand(state);
        for (double p : {1.0, 1.5, 2.0, 3.0, kInfP}) {
            ProblemSpec spec(n, {{0, 0.0}}, s, p);
            const ArrivalField f = solve(g, spec);
            const double tol = 1e-9 * std::max(1.0, f.front_values.back());
            for (int i = 1; i < n; ++i)
                if (f.reached(i)) CHECK(std::abs(residual(g, spec, f.time, i)) <= tol);
        }
    }
}

TEST_CASE("dijkstra equivalence at p=inf is bitwise on dyadic instances") {
    std::uint64_t state = seed_state(123);
    for (int round = 0; round < 20; ++round) {
        const int n = 20 + testutil::uint_below(state, 30);
        const Graph g = testutil::random_dyadic_digraph(n, 0.1, state);
        std::vector<double> s(n, 1.0);
        for (double& v : s) v = (testutil::urand(state) < 0.5) ? 1.0 : 2.0;
        ProblemSpec spec(n, {{0, 0.0}}, s, kInfP);
        const ArrivalField f = solve(g, spec);
        const std::vector<double> ref = testutil::dijkstra_reference(g, {{0, 0.0}}, s);
        for (int i = 0; i < n; ++i) CHECK(f.time[i] == ref[i]);
    }
}

TEST_CASE("comparison principle under slowness increase and edge removal") {
    std::uint64_t state = seed_state(321);
    for (int round = 0; round < 10; ++round) {
        const int n = 25;
        const Graph g = testutil::random_connected_digraph(n, 0.12, 0.3, 3.0, state);
        for (double p : {1.0, 2.0, kInfP}) {
            ProblemSpec spec(n, std::vector<int>{0}, p);
            const ArrivalField base = solve(g, spec);
            const ArrivalField slower = solve(g, spec.with_scaled_slowness(1.7));
            for (int i = 0; i < n; ++i)
                if (base.reached(i)) CHECK(slower.time[i] >= base.time[i] - 1e-12);

            // randomly drop some non-essential edges and re-solve
            std::vector<EdgeSpec> kept;
            for (int i = 0; i < n; ++i)
                for (const Graph::Arc& a : g.in_neighbors(i)) {
                    if (testutil::urand(state) < 0.15) continue;
                    kept.push_back({a.node, i, a.weight});
                }
            if (kept.empty()) continue;
            const Graph g2 = Graph::from_edges(kept, n);
            const ArrivalField pruned = solve(g2, spec);
            for (int i = 0; i < n; ++i)
                if (base.reached(i) && pruned.reached(i))
                    CHECK(pruned.time[i] >= base.time[i] - 1e-12);
        }
    }
}

TEST_CASE("homogeneity in slowness and weights") {
    std::uint64_t state = seed_state(654);
    const int n = 20;
    const Graph g = testutil::random_connected_digraph(n, 0.15, 0.4, 2.5, state);
    const double c = 1.75;
    std::vector<EdgeSpec> scaled_edges;
    for (int i = 0; i < n; ++i)
        for (const Graph::Arc& a : g.in_neighbors(i))
            scaled_edges.push_back({a.node, i, c * a.weight});
    const Graph gw = Graph::from_edges(scaled_edges, n);
    for (double p : {1.0, 1.5, 2.0, kInfP}) {
        ProblemSpec spec(n, std::vector<int>{0}, p);
        const ArrivalField base = solve(g, spec);
        const ArrivalField su = solve(g, spec.with_scaled_slowness(c));
        const ArrivalField wu = solve(gw, spec);
        for (int i = 0; i < n; ++i) {
            if (!base.reached(i)) continue;
            CHECK(su.time[i] == doctest::Approx(c * base.time[i]).epsilon(1e-11));
            CHECK(wu.time[i] == doctest::Approx(base.time[i] / c).epsilon(1e-11));
        }
    }
}

TEST_CASE("single-path graphs accumulate edge travel times") {
    std::uint64_t state = seed_state(88);
    for (int round = 0; round < 10; ++round) {
        const int n = 6;
        std::vector<EdgeSpec> edges;
        std::vector<double> s(n);
        for (double& v : s) v = 0.2 + 2.0 * testutil::urand(state);
        double expect = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            const double w = 0.3 + 2.0 * testutil::urand(state);
            edges.push_back({i, i + 1, w});
            expect += s[i + 1] / w;
        }
        const Graph g = Graph::from_edges(edges, n);
        for (double p : {1.0, 2.0, kInfP}) {
            ProblemSpec spec(n, {{0, 0.0}}, s, p);
            CHECK(solve(g, spec).time[n - 1] == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("boundary values are Dirichlet data") {
    // path 0 -> 1 -> 2 with an expensive prescribed value at node 2
    const Graph g = testutil::path3();
    ProblemSpec spec(3, {{0, 0.0}, {2, 9.0}}, {1.0, 1.0, 1.0}, kInfP);
    const ArrivalField f = solve(g, spec);
    CHECK(f.time[2] == 9.0);  // never relaxed to 2.0
    CHECK(f.time[1] == doctest::Approx(1.0));
}

TEST_CASE("unreachable nodes stay at infinity") {
    const Graph g = Graph::from_edges(std::vector<EdgeSpec>{{0, 1, 1.0}, {2, 3, 1.0}}, 4);
    const ArrivalField f = solve(g, ProblemSpec(4, std::vector<int>{0}, 2.0));
    CHECK(std::isinf(f.time[2]));
    CHECK(std::isinf(f.time[3]));
    CHECK(f.front_index[2] == -1);
    CHECK(!f.reached(3));
}

TEST_CASE("empty boundary is rejected") {
    const Graph g = testutil::path3();
    CHECK_THROWS_AS(solve(g, ProblemSpec(3, std::vector<int>{}, 2.0)), std::invalid_argument);
}

TEST_CASE("multi_source_solve equals mapped solve") {
    // path with reverse edges
    const std::vector<EdgeSpec> edges = {{0, 1, 1.0}, {1, 2, 1.0}, {2, 1, 1.0}, {1, 0, 1.0}};
    const Graph g = Graph::from_edges(edges, 3);
    std::vector<ProblemSpec> specs = {ProblemSpec(3, std::vector<int>{0}, kInfP),
                                      ProblemSpec(3, std::vector<int>{2}, kInfP)};
    const std::vector<ArrivalField> fields = multi_source_solve(g, specs);
    REQUIRE(fields.size() == 2);
    CHECK(fields[0].time == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(fields[1].time == std::vector<double>{2.0, 1.0, 0.0});

    // single spec behaves like solve
    const std::vector<ArrivalField> single =
        multi_source_solve(g, std::vector<ProblemSpec>{specs[0]});
    CHECK(single[0].time == solve(g, specs[0]).time);
}

TEST_CASE("multi_source_solve matches sequential runs on random graphs") {
    std::uint64_t state = seed_state(2024);
    const int n = 60;
    const Graph g = testutil::random_connected_digraph(n, 0.08, 0.3, 3.0, state);
    std::vector<ProblemSpec> specs;
    for (int l = 0; l < 7; ++l)
        specs.emplace_back(n, std::vector<int>{testutil::uint_below(state, n)}, 2.0);
    const std::vector<ArrivalField> parallel = multi_source_solve(g, specs);
    for (int l = 0; l < 7; ++l) {
        const ArrivalField seq = solve(g, specs[l]);
        CHECK(parallel[l].time == seq.time);
        CHECK(parallel[l].front_index == seq.front_index);
    }
}
