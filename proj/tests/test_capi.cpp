// Exercises the shared-library surface exactly as an external C consumer
// would: opaque handles, status codes, last-error reporting.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <frontprop.h>

TEST_CASE("graph handle lifecycle and queries") {
    const int src[] = {0, 1};
    const int dst[] = {1, 2};
    const double w[] = {1.0, 1.0};
    fpg_graph* g = nullptr;
    REQUIRE(fpg_graph_create(0, src, dst, w, 2, &g) == FPG_OK);
    REQUIRE(g != nullptr);
    CHECK(fpg_graph_node_count(g) == 3);
    CHECK(fpg_graph_edge_count(g) == 2);
    CHECK(fpg_graph_weight(g, 0, 1) == 1.0);
    CHECK(fpg_graph_weight(g, 1, 0) == 0.0);
    CHECK(fpg_graph_weight(g, 5, 0) == 0.0);
    fpg_graph_destroy(g);
}

TEST_CASE("invalid graphs set an error message") {
    const int src[] = {0, 0};
    const int dst[] = {1, 1};
    const double w[] = {1.0, 2.0};
    fpg_graph* g = nullptr;
    CHECK(fpg_graph_create(0, src, dst, w, 2, &g) == FPG_ERROR_INVALID_ARGUMENT);
    CHECK(g == nullptr);
    CHECK(std::strlen(fpg_last_error()) > 0);
    CHECK(std::string(fpg_last_error()).find("duplicate") != std::string::npos);
}

TEST_CASE("parse, solve, inspect, residual") {
    fpg_graph* g = nullptr;
    REQUIRE(fpg_graph_parse("0,1,1.0\n1,2,1.0\n", &g) == FPG_OK);

    const int boundary[] = {0};
    fpg_problem* prob = nullptr;
    REQUIRE(fpg_problem_create(g, boundary, nullptr, 1, nullptr, INFINITY, &prob) == FPG_OK);

    fpg_solution* sol = nullptr;
    REQUIRE(fpg_solve(g, prob, &sol) == FPG_OK);
    CHECK(fpg_solution_time(sol, 0) == 0.0);
    CHECK(fpg_solution_time(sol, 1) == doctest::Approx(1.0));
    CHECK(fpg_solution_time(sol, 2) == doctest::Approx(2.0));
    CHECK(fpg_solution_front_index(sol, 2) == 2);
    CHECK(std::isnan(fpg_solution_time(sol, 99)));

    double times[3] = {0, 0, 0};
    CHECK(fpg_solution_times(sol, times, 3) == 3);
    CHECK(times[1] == doctest::Approx(1.0));

    CHECK(std::abs(fpg_residual(g, prob, sol, 1)) <= 1e-12);
    CHECK(std::abs(fpg_residual(g, prob, sol, 2)) <= 1e-12);

    fpg_solution_destroy(sol);
    fpg_problem_destroy(prob);
    fpg_graph_destroy(g);
}

TEST_CASE("boundary values, slowness and finite p cross the ABI") {
    fpg_graph* g = nullptr;
    REQUIRE(fpg_graph_parse("0,1,1.0\n0,2,1.0\n1,3,1.0\n2,3,1.0\n", &g) == FPG_OK);
    const int boundary[] = {0};
    const double bvals[] = {0.0};
    const double slowness[] = {1.0, 1.0, 1.0, 1.0};
    fpg_problem* prob = nullptr;
    REQUIRE(fpg_problem_create(g, boundary, bvals, 1, slowness, 2.0, &prob) == FPG_OK);
    fpg_solution* sol = nullptr;
    REQUIRE(fpg_solve(g, prob, &sol) == FPG_OK);
    CHECK(fpg_solution_time(sol, 3) == doctest::Approx(1.0 + 1.0 / std::sqrt(2.0)));
    fpg_solution_destroy(sol);
    fpg_problem_destroy(prob);
    fpg_graph_destroy(g);
}

TEST_CASE("problem validation surfaces as status codes") {
    fpg_graph* g = nullptr;
    REQUIRE(fpg_graph_parse("0,1,1.0\n", &g) == FPG_OK);
    fpg_problem* prob = nullptr;

    const int bad_boundary[] = {7};
    CHECK(fpg_problem_create(g, bad_boundary, nullptr, 1, nullptr, 2.0, &prob) ==
          FPG_ERROR_INVALID_ARGUMENT);
    CHECK(prob == nullptr);

    const int boundary[] = {0};
    CHECK(fpg_problem_create(g, boundary, nullptr, 1, nullptr, 0.25, &prob) ==
          FPG_ERROR_INVALID_ARGUMENT);

    // empty boundary passes construction but fails to solve
    REQUIRE(fpg_problem_create(g, nullptr, nullptr, 0, nullptr, 2.0, &prob) == FPG_OK);
    fpg_solution* sol = nullptr;
    CHECK(fpg_solve(g, prob, &sol) == FPG_ERROR_INVALID_ARGUMENT);
    CHECK(sol == nullptr);
    fpg_problem_destroy(prob);
    fpg_graph_destroy(g);
}

TEST_CASE("null arguments are rejected without crashing") {
    CHECK(fpg_graph_parse(nullptr, nullptr) == FPG_ERROR_INVALID_ARGUMENT);
    fpg_graph_destroy(nullptr);
    fpg_problem_destroy(nullptr);
    fpg_solution_destroy(nullptr);
    CHECK(fpg_graph_node_count(nullptr) == 0);
    CHECK(std::isnan(fpg_solution_time(nullptr, 0)));
}

TEST_CASE("run_command is reachable through the shared library") {
    const char* argv[] = {"frontprop", "--help"};
    CHECK(fpg_run_command(2, argv) == 0);
}
