/*
 * frontprop  -  information propagation on weighted directed graphs.
 *
 * C interface to the solver core: opaque handles, status codes, and the
 * command-line entry point. Every object returned through an out-parameter
 * is owned by the caller and released with the matching *_destroy call.
 * Functions returning fpg_status set a thread-local message readable via
 * fpg_last_error() on failure.
 */
#ifndef FRONTPROP_H
#define FRONTPROP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fpg_graph fpg_graph;
typedef struct fpg_problem fpg_problem;
typedef struct fpg_solution fpg_solution;

typedef enum fpg_status {
    FPG_OK = 0,
    FPG_ERROR_INVALID_ARGUMENT = 1,
    FPG_ERROR_RUNTIME = 2
} fpg_status;

/* Message for the most recent failure on this thread; never NULL. */
const char* fpg_last_error(void);

/*
 * Directed graph from parallel edge arrays: edge k runs src[k] -> dst[k]
 * with weight[k] > 0. node_count 0 infers max id + 1. Rejects duplicate
 * ordered pairs, self-loops and nonpositive weights.
 */
fpg_status fpg_graph_create(int node_count, const int* src, const int* dst,
                            const double* weight, size_t edge_count, fpg_graph** out);

/* Graph from edge-list CSV text ("src,dst,weight" lines, '#' comments).
 * String ids are mapped to dense ints in first-appearance order. */
fpg_status fpg_graph_parse(const char* text, fpg_graph** out);

void fpg_graph_destroy(fpg_graph* graph);

int fpg_graph_node_count(const fpg_graph* graph);
size_t fpg_graph_edge_count(const fpg_graph* graph);
/* w(src, dst), or 0 when absent. */
double fpg_graph_weight(const fpg_graph* graph, int src, int dst);

/*
 * Boundary conditions, slowness and exponent p (use INFINITY for p = inf).
 * boundary_values NULL prescribes 0 everywhere; slowness NULL (length
 * node_count otherwise) means s = 1.
 */
fpg_status fpg_problem_create(const fpg_graph* graph, const int* boundary,
                              const double* boundary_values, size_t boundary_count,
                              const double* slowness, double p, fpg_problem** out);

void fpg_problem_destroy(fpg_problem* problem);

/* Front propagation. The solution holds arrival times and the front
 * decomposition for every node. */
fpg_status fpg_solve(const fpg_graph* graph, const fpg_problem* problem, fpg_solution** out);

void fpg_solution_destroy(fpg_solution* solution);

/* Arrival time of a node; +inf when unreached. */
double fpg_solution_time(const fpg_solution* solution, int node);
/* Index of the front the node joined; -1 when unreached. */
int fpg_solution_front_index(const fpg_solution* solution, int node);
/* Copies min(cap, node_count) arrival times into out; returns node_count. */
size_t fpg_solution_times(const fpg_solution* solution, double* out, size_t cap);

/* ||grad_w^+ u||_p - s at a node; 0 at every reached interior node of a
 * valid solution. */
double fpg_residual(const fpg_graph* graph, const fpg_problem* problem,
                    const fpg_solution* solution, int node);

/* The frontprop CLI (solve, oracle-check, grid-bench, trust-rank, classify).
 * Returns the process exit status. */
int fpg_run_command(int argc, const char* const* argv);

#ifdef __cplusplus
}
#endif

#endif /* FRONTPROP_H */
