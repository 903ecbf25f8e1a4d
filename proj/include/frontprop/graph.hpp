#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace fprop {

/// One directed edge (src, dst) with weight w(src, dst) > 0. By convention
/// src is an in-neighbor of dst: information known at src can propagate to dst.
struct EdgeSpec {
    int src = 0;
    int dst = 0;
    double weight = 0.0;
};

/// Immutable directed weighted graph over dense node ids [0, n).
///
/// Simple by construction: at most one edge per ordered pair, no self-loops,
/// all stored weights strictly positive. Both adjacency directions are
/// indexed: in_neighbors(i) = {j : (j,i) in E} feeds the local updates, and
/// out_neighbors(j) pushes candidates forward when j is accepted.
/// Safe to share across concurrent solver runs once built.
class Graph {
public:
    struct Arc {
        int node;       // the other endpoint
        double weight;  // w(j,i) of the underlying edge
    };

    Graph() = default;

    /// Builds from an edge list. node_count = 0 infers n = max id + 1;
    /// a larger explicit node_count permits trailing isolated nodes.
    /// Throws std::invalid_argument on duplicate ordered pairs, self-loops,
    /// nonpositive or non-finite weights, or ids out of range.
    static Graph from_edges(std::span<const EdgeSpec> edges, int node_count = 0);

    int node_count() const noexcept { return n_; }
    std::int64_t edge_count() const noexcept { return static_cast<std::int64_t>(in_arcs_.size()); }

    /// N(i): arcs {j, w(j,i)} for every edge (j,i).
    std::span<const Arc> in_neighbors(int i) const;
    /// Arcs {i, w(j,i)} for every edge (j,i) leaving j.
    std::span<const Arc> out_neighbors(int j) const;

    /// w(j,i), or 0 when the edge is absent.
    double weight(int src, int dst) const;
    bool has_edge(int src, int dst) const { return weight(src, dst) > 0.0; }

private:
    int n_ = 0;
    std::vector<std::int64_t> in_offsets_;   // size n+1
    std::vector<Arc> in_arcs_;
    std::vector<std::int64_t> out_offsets_;  // size n+1
    std::vector<Arc> out_arcs_;
};

/// Nodes reachable from `sources` along edge direction (j known -> i).
/// Returned sorted ascending. Throws on empty sources or ids out of range.
std::vector<int> reachable_from(const Graph& graph, std::span<const int> sources);

/// Boundary set with prescribed values, per-node slowness and the model
/// exponent p in [1, inf]. Construction validates ids, duplicate boundary
/// nodes, negative slowness and p < 1; an empty boundary is representable
/// (validate() reports it, solve() rejects it).
class ProblemSpec {
public:
    static constexpr double infinite_p = std::numeric_limits<double>::infinity();

    /// Boundary at value 0, slowness 1 everywhere.
    ProblemSpec(int node_count, std::vector<int> boundary_nodes, double p);

    ProblemSpec(int node_count, std::vector<std::pair<int, double>> boundary,
                std::vector<double> slowness, double p);

    int node_count() const noexcept { return n_; }
    double p() const noexcept { return p_; }

    bool is_boundary(int i) const;
    /// Prescribed value; only meaningful when is_boundary(i).
    double boundary_value(int i) const;
    /// Sorted by node id.
    std::span<const std::pair<int, double>> boundary() const { return boundary_; }

    double slowness(int i) const;
    std::span<const double> slowness() const { return slowness_; }

    /// Copy with slowness scaled by c > 0 (homogeneity experiments).
    ProblemSpec with_scaled_slowness(double c) const;

private:
    int n_ = 0;
    double p_ = infinite_p;
    std::vector<std::pair<int, double>> boundary_;  // sorted by node
    std::vector<char> is_boundary_;
    std::vector<double> slowness_;
};

/// Report-only diagnostics ahead of a solve.
struct ValidationReport {
    std::vector<int> unreachable_interior;    // arrival time will be +inf
    std::vector<int> zero_slowness_interior;  // breaks strict front monotonicity
    bool empty_boundary = false;

    bool ok() const {
        return unreachable_interior.empty() && zero_slowness_interior.empty() && !empty_boundary;
    }
};

ValidationReport validate(const Graph& graph, const ProblemSpec& spec);

}  // namespace fprop
