#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frontprop/front_solver.hpp"
#include "frontprop/local_update.hpp"
#include "testutil.hpp"

using namespace fprop;
using KV = std::vector<KnownArrival>;

namespace {

/// Independent root finder: plain bisection on the positive-part equation,
/// written without reference to the implementation under test.
double bisect_reference(std::vector<KnownArrival> known, double s, double p) {
    double lo = known[0].time, hi = known[0].time + s / known[0].weight;
    for (const KnownArrival& k : known) {
        lo = std::min(lo, k.time);
        hi = std::min(hi, k.time + s / k.weight);
    }
    auto f = [&](double u) {
        double sum = 0.0;
        for (const KnownArrival& k : known)
            if (u > k.time) sum += std::pow(k.weight * (u - k.time), p);
        return sum - std::pow(s, p);
    };
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<KnownArrival> random_known(std::uint64_t& state, int max_size = 6) {
    const int m = 1 + testutil::uint_below(state, max_size);
    std::vector<KnownArrival> known(m);
    for (KnownArrival& k : known) {
        k.time = 3.0 * testutil::urand(state);
        k.weight = 0.2 + 2.0 * testutil::urand(state);
    }
    return known;
}

}  // namespace

TEST_CASE("candidate_inf examples") {
    CHECK(candidate_inf(KV{{0.0, 2.0}}, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(candidate_inf(KV{{0.0, 1.0}, {0.3, 1.0}}, 1.0) == doctest::Approx(1.0));
    CHECK(candidate_inf(KV{{0.2, 0.5}, {0.1, 2.0}}, 1.0) == doctest::Approx(0.6));
    CHECK_THROWS_AS(candidate_inf(KV{}, 1.0), std::invalid_argument);
}

TEST_CASE("candidate_l2 examples") {
    CHECK(candidate_l2(KV{{0.0, 1.0}, {0.0, 1.0}}, 1.0) ==
          doctest::Approx(0.7071067811865475).epsilon(1e-13));
    CHECK(candidate_l2(KV{{0.3, 2.0}}, 1.0) == doctest::Approx(0.8));
    // full-set formula has negative discriminant; active set is the first node
    CHECK(candidate_l2(KV{{0.0, 1.0}, {10.0, 1.0}}, 1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(candidate_l2(KV{}, 1.0), std::invalid_argument);
}

TEST_CASE("candidate_l1 examples") {
    CHECK(candidate_l1(KV{{0.0, 1.0}, {0.0, 1.0}}, 1.0) == doctest::Approx(0.5));
    CHECK(candidate_l1(KV{{0.3, 2.0}}, 1.0) == doctest::Approx(0.8));
    // full-set value 3.0 violates the positive-part equation
    CHECK(candidate_l1(KV{{0.0, 1.0}, {5.0, 1.0}}, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("candidate_lp examples") {
    // 2u^3 = 1
    CHECK(candidate_lp(KV{{0.0, 1.0}, {0.0, 1.0}}, 1.0, 3.0) ==
          doctest::Approx(0.7937005259840997).epsilon(1e-12));
    CHECK(candidate_lp(KV{{0.0, 1.0}, {0.0, 1.0}}, 1.0, 2.0) ==
          doctest::Approx(0.7071067811865475).epsilon(1e-12));
    // golden value from an independent high-precision bisection oracle
    CHECK(candidate_lp(KV{{0.0, 1.0}, {0.2, 0.7}}, 1.0, 1.5) ==
          doctest::Approx(0.8060537590651210).epsilon(1e-11));
    CHECK_THROWS_AS(candidate_lp(KV{}, 1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(candidate_lp(KV{{0.0, 1.0}}, 1.0, ProblemSpec::infinite_p),
                    std::invalid_argument);
}

TEST_CASE("agreement of closed forms with the general-p root on random inputs") {
    std::uint64_t state = seed_state(101);
    for (int round = 0; round < 1000; ++round) {
        const std::vector<KnownArrival> known = random_known(state);
        const double s = 0.1 + 2.0 * testutil::urand(state);
        CHECK(candidate_lp(known, s, 1.0) == doctest::Approx(candidate_l1(known, s)).epsilon(1e-10));
        CHECK(candidate_lp(known, s, 2.0) == doctest::Approx(candidate_l2(known, s)).epsilon(1e-10));
    }
}

TEST_CASE("candidates match an independent bisection oracle") {
    std::uint64_t state = seed_state(202);
    for (int round = 0; round < 200; ++round) {
        const std::vector<KnownArrival> known = random_known(state);
        const double s = 0.1 + 2.0 * testutil::urand(state);
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            const double expect = bisect_reference(known, s, p);
            CHECK(local_solve(known, s, p) == doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("active-set consistency") {
    std::uint64_t state = seed_state(303);
    for (int round = 0; round < 400; ++round) {
        const std::vector<KnownArrival> known = random_known(state);
        const double s = 0.05 + 2.0 * testutil::urand(state);
        for (double p : {1.0, 1.5, 2.0, 3.0, ProblemSpec::infinite_p}) {
            const double value = local_solve(known, s, p);
            // the defining equation must balance: residual of the local
            // positive-part equation is zero at the returned value
            if (!std::isinf(p)) {
                double sum = 0.0;
                for (const KnownArrival& k : known)
                    if (value > k.time) sum += std::pow(k.weight * (value - k.time), p);
                CHECK(std::abs(sum - std::pow(s, p)) < 1e-8);
            } else {
                double mx = 0.0;
                for (const KnownArrival& k : known)
                    mx = std::max(mx, k.weight * std::max(value - k.time, 0.0));
                CHECK(mx == doctest::Approx(s).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("monotonicity in inputs") {
    std::uint64_t state = seed_state(404);
    for (int round = 0; round < 300; ++round) {
        std::vector<KnownArrival> known = random_known(state);
        const double s = 0.1 + testutil::urand(state);
        for (double p : {1.0, 1.5, 2.0, 3.0, ProblemSpec::infinite_p}) {
            const double base = local_solve(known, s, p);
            CHECK(local_solve(known, s * 1.1, p) >= base - 1e-12);

            std::vector<KnownArrival> bumped = known;
            const int pick = testutil::uint_below(state, static_cast<int>(known.size()));
            bumped[pick].time += 0.5;
            CHECK(local_solve(bumped, s, p) >= base - 1e-12);

            std::vector<KnownArrival> weaker = known;
            weaker[pick].weight *= 0.7;
            CHECK(local_solve(weaker, s, p) >= base - 1e-12);
        }
    }
}

TEST_CASE("candidate value is nondecreasing in p") {
    std::uint64_t state = seed_state(505);
    const double ps[] = {1.0, 1.5, 2.0, 3.0, ProblemSpec::infinite_p};
    for (int round = 0; round < 300; ++round) {
        const std::vector<KnownArrival> known = random_known(state);
        const double s = 0.1 + testutil::urand(state);
        double prev = -1.0;
        for (double p : ps) {
            const double value = local_solve(known, s, p);
            CHECK(value >= prev - 1e-10);
            prev = value;
        }
    }
}

TEST_CASE("homogeneity with zero base times") {
    std::uint64_t state = seed_state(606);
    for (int round = 0; round < 200; ++round) {
        std::vector<KnownArrival> known = random_known(state);
        for (KnownArrival& k : known) k.time = 0.0;
        const double s = 0.1 + testutil::urand(state);
        const double c = 0.5 + 2.0 * testutil::urand(state);
        for (double p : {1.0, 1.5, 2.0, 3.0, ProblemSpec::infinite_p}) {
            const double base = local_solve(known, s, p);
            CHECK(local_solve(known, c * s, p) == doctest::Approx(c * base).epsilon(1e-10));
            std::vector<KnownArrival> scaled = known;
            for (KnownArrival& k : scaled) k.weight *= c;
            CHECK(local_solve(scaled, s, p) == doctest::Approx(base / c).epsilon(1e-10));
        }
    }
}

TEST_CASE("zero slowness degenerates to the smallest known time") {
    const std::vector<KnownArrival> known = {{0.4, 1.0}, {0.9, 2.0}};
    for (double p : {1.0, 1.5, 2.0, ProblemSpec::infinite_p})
        CHECK(local_solve(known, 0.0, p) == doctest::Approx(0.4));
}

TEST_CASE("residual examples") {
    const Graph g = Graph::from_edges(std::vector<EdgeSpec>{{0, 1, 2.0}});
    for (double p : {1.0, 2.0, ProblemSpec::infinite_p}) {
        ProblemSpec spec(2, std::vector<int>{0}, p);
        const std::vector<double> u = {0.0, 0.5};
        CHECK(residual(g, spec, u, 1) == doctest::Approx(0.0).epsilon(1e-14));
    }
    ProblemSpec spec(2, std::vector<int>{0}, ProblemSpec::infinite_p);
    const std::vector<double> u = {0.0, 0.4};
    CHECK(residual(g, spec, u, 1) == doctest::Approx(-0.2));
}

TEST_CASE("residual vanishes on solved random instances") {
    std::uint64_t state = seed_state(707);
    for (int round = 0; round < 10; ++round) {
        const Graph g = testutil::random_connected_digraph(30, 0.12, 0.3, 3.0, state);
        ProblemSpec spec(30, std::vector<int>{0}, 2.0);
        const ArrivalField field = solve(g, spec);
        for (int i = 1; i < 30; ++i)
            if (field.reached(i)) CHECK(std::abs(residual(g, spec, field.time, i)) <= 1e-9);
    }
}
