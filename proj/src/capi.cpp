#include "frontprop.h"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "frontprop/cli.hpp"
#include "frontprop/front_solver.hpp"
#include "frontprop/graph.hpp"
#include "frontprop/io.hpp"
#include "frontprop/local_update.hpp"

struct fpg_graph {
    fprop::Graph graph;
};

struct fpg_problem {
    fprop::ProblemSpec spec;
};

struct fpg_solution {
    fprop::ArrivalField field;
};

namespace {

thread_local std::string g_last_error = "";

fpg_status fail(fpg_status code, const char* what) {
    g_last_error = what;
    return code;
}

template <typename Fn>
fpg_status guarded(Fn&& fn) {
    try {
        fn();
        return FPG_OK;
    } catch (const std::invalid_argument& e) {
        return fail(FPG_ERROR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(FPG_ERROR_RUNTIME, e.what());
    }
}

bool node_in_range(const fprop::ArrivalField& field, int node) {
    return node >= 0 && node < field.node_count();
}

}  // namespace

extern "C" {

const char* fpg_last_error(void) { return g_last_error.c_str(); }

fpg_status fpg_graph_create(int node_count, const int* src, const int* dst,
                            const double* weight, size_t edge_count, fpg_graph** out) {
    if (!out || (edge_count > 0 && (!src || !dst || !weight)))
        return fail(FPG_ERROR_INVALID_ARGUMENT, "fpg_graph_create: null argument");
    *out = nullptr;
    return guarded([&] {
        std::vector<fprop::EdgeSpec> edges(edge_count);
        for (size_t k = 0; k < edge_count; ++k) edges[k] = {src[k], dst[k], weight[k]};
        *out = new fpg_graph{fprop::Graph::from_edges(edges, node_count)};
    });
}

fpg_status fpg_graph_parse(const char* text, fpg_graph** out) {
    if (!out || !text) return fail(FPG_ERROR_INVALID_ARGUMENT, "fpg_graph_parse: null argument");
    *out = nullptr;
    return guarded([&] { *out = new fpg_graph{fprop::parse_edge_list(text).graph}; });
}

void fpg_graph_destroy(fpg_graph* graph) { delete graph; }

int fpg_graph_node_count(const fpg_graph* graph) { return graph ? graph->graph.node_count() : 0; }

size_t fpg_graph_edge_count(const fpg_graph* graph) {
    return graph ? static_cast<size_t>(graph->graph.edge_count()) : 0;
}

double fpg_graph_weight(const fpg_graph* graph, int src, int dst) {
    if (!graph || src < 0 || dst < 0 || src >= graph->graph.node_count() ||
        dst >= graph->graph.node_count())
        return 0.0;
    return graph->graph.weight(src, dst);
}

fpg_status fpg_problem_create(const fpg_graph* graph, const int* boundary,
                              const double* boundary_values, size_t boundary_count,
                              const double* slowness, double p, fpg_problem** out) {
    if (!out || !graph || (boundary_count > 0 && !boundary))
        return fail(FPG_ERROR_INVALID_ARGUMENT, "fpg_problem_create: null argument");
    *out = nullptr;
    return guarded([&] {
        const int n = graph->graph.node_count();
        std::vector<std::pair<int, double>> b(boundary_count);
        for (size_t k = 0; k < boundary_count; ++k)
            b[k] = {boundary[k], boundary_values ? boundary_values[k] : 0.0};
        std::vector<double> s =
            slowness ? std::vector<double>(slowness, slowness + n) : std::vector<double>(n, 1.0);
        *out = new fpg_problem{fprop::ProblemSpec(n, std::move(b), std::move(s), p)};
    });
}

void fpg_problem_destroy(fpg_problem* problem) { delete problem; }

fpg_status fpg_solve(const fpg_graph* graph, const fpg_problem* problem, fpg_solution** out) {
    if (!out || !graph || !problem)
        return fail(FPG_ERROR_INVALID_ARGUMENT, "fpg_solve: null argument");
    *out = nullptr;
    return guarded(
        [&] { *out = new fpg_solution{fprop::solve(graph->graph, problem->spec)}; });
}

void fpg_solution_destroy(fpg_solution* solution) { delete solution; }

double fpg_solution_time(const fpg_solution* solution, int node) {
    if (!solution || !node_in_range(solution->field, node)) return NAN;
    return solution->field.time[node];
}

int fpg_solution_front_index(const fpg_solution* solution, int node) {
    if (!solution || !node_in_range(solution->field, node)) return -1;
    return solution->field.front_index[node];
}

size_t fpg_solution_times(const fpg_solution* solution, double* out, size_t cap) {
    if (!solution) return 0;
    const size_t n = static_cast<size_t>(solution->field.node_count());
    if (out) {
        const size_t m = cap < n ? cap : n;
        std::memcpy(out, solution->field.time.data(), m * sizeof(double));
    }
    return n;
}

double fpg_residual(const fpg_graph* graph, const fpg_problem* problem,
                    const fpg_solution* solution, int node) {
    if (!graph || !problem || !solution || !node_in_range(solution->field, node)) return NAN;
    try {
        return fprop::residual(graph->graph, problem->spec, solution->field.time, node);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return NAN;
    }
}

int fpg_run_command(int argc, const char* const* argv) {
    return fprop::run_command(argc, argv);
}

}  // extern "C"
