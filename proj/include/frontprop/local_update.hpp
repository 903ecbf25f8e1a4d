#pragma once

#include <span>

#include "frontprop/graph.hpp"

namespace fprop {

/// One known in-neighbor contribution: its arrival time u_j and the edge
/// weight w(j,i) into the node being updated.
struct KnownArrival {
    double time;
    double weight;
};

/// Candidate arrival time from the smallest single-edge continuation:
/// min_j (u_j + s / w_j). Equals the l-inf local solve restricted to the
/// known set. Throws on an empty known list.
double candidate_inf(std::span<const KnownArrival> known, double slowness);

/// l1 candidate: (sum_j w_j u_j + s) / sum_j w_j over the active subset.
/// Active subset: known neighbors sorted by time ascending are included while
/// the resulting value stays >= the last included time, so that every
/// included j satisfies u_j <= result and every excluded j satisfies
/// u_j >= result.
double candidate_l1(std::span<const KnownArrival> known, double slowness);

/// l2 candidate: mu + sqrt(s^2/z^2 - sigma^2) over the active subset, where
/// z^2 = sum w^2, mu = sum w^2 u / z^2 and sigma^2 is the w^2-weighted
/// variance of the active times. A discriminant in [-1e-12, 0) is clamped
/// to 0; structurally negative discriminants terminate the inclusion sweep.
double candidate_l2(std::span<const KnownArrival> known, double slowness);

/// General-p candidate for 1 <= p < inf: the unique root of
///   F(u) = sum_j (w_j (u - u_j)^+)^p - s^p
/// over the full known list, found by bisection on
/// [min_j u_j, min_j (u_j + s/w_j)] to absolute tolerance 1e-12
/// (max 200 iterations). The positive part realizes the active subset.
double candidate_lp(std::span<const KnownArrival> known, double slowness, double p);

/// Dispatch on p: 1 -> candidate_l1, 2 -> candidate_l2, inf -> candidate_inf,
/// otherwise candidate_lp.
double local_solve(std::span<const KnownArrival> known, double slowness, double p);

/// ||grad_w^+ u_i||_p - s_i at node i: for finite p
/// (sum_{j in N(i)} (w_ji (u_i - u_j)^+)^p)^(1/p) - s_i, for p = inf the max
/// form. Terms with unreached neighbors (u_j = +inf) vanish; an unreached i
/// yields +inf.
double residual(const Graph& graph, const ProblemSpec& spec, std::span<const double> u, int node);

}  // namespace fprop
