#pragma once

#include <utility>
#include <vector>

#include "frontprop/graph.hpp"

namespace fprop {

/// Arrival times plus the front decomposition. Reached nodes carry the index
/// of the front V_k they joined; front_values is strictly increasing and
/// time[i] agrees with front_values[front_index[i]] up to the 1e-12 grouping
/// tolerance. Unreached nodes have time = +inf and front_index = -1.
struct ArrivalField {
    std::vector<double> time;
    std::vector<int> front_index;
    std::vector<double> front_values;

    int node_count() const { return static_cast<int>(time.size()); }
    bool reached(int i) const { return front_index[i] >= 0; }
};

/// Snapshots of the propagation: values U_k with their acceptance sets V_k.
/// K_l and C_l are derived: K_l is the union of V_0..V_l, C_l the out-star
/// of K_l minus K_l.
struct FrontTrace {
    std::vector<double> values;
    std::vector<std::vector<int>> fronts;

    std::vector<int> known_set(int l) const;
    std::vector<int> candidate_set(const Graph& graph, int l) const;
};

/// Label-setting front propagation for any p in [1, inf]. Candidates are
/// recomputed from the full known in-neighbor set whenever an in-neighbor is
/// accepted; stale heap entries are skipped on pop. Boundary values are
/// Dirichlet data and never relaxed. Throws on an empty boundary or a
/// graph/spec node-count mismatch.
ArrivalField solve(const Graph& graph, const ProblemSpec& spec);

std::pair<ArrivalField, FrontTrace> solve_with_trace(const Graph& graph, const ProblemSpec& spec);

/// Element-wise identical to mapping solve over specs; member solves may run
/// concurrently over the shared graph (cap with env FRONTPROP_THREADS).
/// Per-spec errors are rethrown, lowest spec index first.
std::vector<ArrivalField> multi_source_solve(const Graph& graph,
                                             std::span<const ProblemSpec> specs);

/// Thread budget used by multi_source_solve and benchmark sweeps:
/// FRONTPROP_THREADS when set (>= 1), hardware concurrency otherwise.
int solver_thread_budget();

}  // namespace fprop
