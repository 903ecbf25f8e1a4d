#include "frontprop/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace fprop {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

void check_node(int id, int n, const char* what) {
    if (id < 0 || id >= n)
        bad(std::string(what) + " id " + std::to_string(id) + " out of range [0, " +
            std::to_string(n) + ")");
}

}  // namespace

Graph Graph::from_edges(std::span<const EdgeSpec> edges, int node_count) {
    int n = node_count;
    for (const EdgeSpec& e : edges) {
        if (e.src < 0 || e.dst < 0) bad("negative node id in edge list");
        n = std::max({n, e.src + 1, e.dst + 1});
    }
    if (node_count > 0 && n > node_count) bad("edge id exceeds declared node_count");
    if (n < 1) bad("graph needs at least one node");

    for (const EdgeSpec& e : edges) {
        if (e.src == e.dst)
            bad("self-loop at node " + std::to_string(e.src));
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            bad("nonpositive weight on edge (" + std::to_string(e.src) + "," +
                std::to_string(e.dst) + ")");
    }

    Graph g;
    g.n_ = n;
    std::vector<EdgeSpec> sorted(edges.begin(), edges.end());
    std::sort(sorted.begin(), sorted.end(), [](const EdgeSpec& a, const EdgeSpec& b) {
        return std::pair(a.dst, a.src) < std::pair(b.dst, b.src);
    });
    for (std::size_t k = 1; k < sorted.size(); ++k)
        if (sorted[k].src == sorted[k - 1].src && sorted[k].dst == sorted[k - 1].dst)
            bad("duplicate edge (" + std::to_string(sorted[k].src) + "," +
                std::to_string(sorted[k].dst) + ")");

    g.in_offsets_.assign(n + 1, 0);
    g.out_offsets_.assign(n + 1, 0);
    for (const EdgeSpec& e : sorted) {
        ++g.in_offsets_[e.dst + 1];
        ++g.out_offsets_[e.src + 1];
    }
    for (int i = 0; i < n; ++i) {
        g.in_offsets_[i + 1] += g.in_offsets_[i];
        g.out_offsets_[i + 1] += g.out_offsets_[i];
    }
    g.in_arcs_.resize(sorted.size());
    g.out_arcs_.resize(sorted.size());
    std::vector<std::int64_t> in_pos(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    std::vector<std::int64_t> out_pos(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
    for (const EdgeSpec& e : sorted) {
        g.in_arcs_[in_pos[e.dst]++] = {e.src, e.weight};
        g.out_arcs_[out_pos[e.src]++] = {e.dst, e.weight};
    }
    return g;
}

std::span<const Graph::Arc> Graph::in_neighbors(int i) const {
    check_node(i, n_, "node");
    return {in_arcs_.data() + in_offsets_[i],
            static_cast<std::size_t>(in_offsets_[i + 1] - in_offsets_[i])};
}

std::span<const Graph::Arc> Graph::out_neighbors(int j) const {
    check_node(j, n_, "node");
    return {out_arcs_.data() + out_offsets_[j],
            static_cast<std::size_t>(out_offsets_[j + 1] - out_offsets_[j])};
}

double Graph::weight(int src, int dst) const {
    check_node(src, n_, "node");
    check_node(dst, n_, "node");
    for (const Arc& a : in_neighbors(dst))
        if (a.node == src) return a.weight;
    return 0.0;
}

std::vector<int> reachable_from(const Graph& graph, std::span<const int> sources) {
    if (sources.empty()) bad("reachable_from: empty source set");
    std::vector<char> seen(graph.node_count(), 0);
    std::queue<int> frontier;
    for (int s : sources) {
        check_node(s, graph.node_count(), "source");
        if (!seen[s]) {
            seen[s] = 1;
            frontier.push(s);
        }
    }
    while (!frontier.empty()) {
        int j = frontier.front();
        frontier.pop();
        for (const Graph::Arc& a : graph.out_neighbors(j)) {
            if (!seen[a.node]) {
                seen[a.node] = 1;
                frontier.push(a.node);
            }
        }
    }
    std::vector<int> out;
    for (int i = 0; i < graph.node_count(); ++i)
        if (seen[i]) out.push_back(i);
    return out;
}

ProblemSpec::ProblemSpec(int node_count, std::vector<int> boundary_nodes, double p)
    : ProblemSpec(node_count,
                  [&] {
                      std::vector<std::pair<int, double>> b;
                      b.reserve(boundary_nodes.size());
                      for (int i : boundary_nodes) b.emplace_back(i, 0.0);
                      return b;
                  }(),
                  std::vector<double>(static_cast<std::size_t>(std::max(node_count, 0)), 1.0),
                  p) {}

ProblemSpec::ProblemSpec(int node_count, std::vector<std::pair<int, double>> boundary,
                         std::vector<double> slowness, double p)
    : n_(node_count), p_(p), boundary_(std::move(boundary)), slowness_(std::move(slowness)) {
    if (n_ < 1) bad("ProblemSpec: node_count must be >= 1");
    if (!(p_ >= 1.0)) bad("ProblemSpec: p must be in [1, inf]");
    if (static_cast<int>(slowness_.size()) != n_)
        bad("ProblemSpec: slowness size != node_count");
    for (double s : slowness_)
        if (!(s >= 0.0) || !std::isfinite(s)) bad("ProblemSpec: slowness must be finite and >= 0");
    std::sort(boundary_.begin(), boundary_.end());
    is_boundary_.assign(n_, 0);
    for (std::size_t k = 0; k < boundary_.size(); ++k) {
        auto [node, value] = boundary_[k];
        check_node(node, n_, "boundary");
        if (!std::isfinite(value)) bad("ProblemSpec: boundary value must be finite");
        if (k > 0 && boundary_[k - 1].first == node)
            bad("ProblemSpec: duplicate boundary node " + std::to_string(node));
        is_boundary_[node] = 1;
    }
}

bool ProblemSpec::is_boundary(int i) const {
    check_node(i, n_, "node");
    return is_boundary_[i] != 0;
}

double ProblemSpec::boundary_value(int i) const {
    check_node(i, n_, "node");
    auto it = std::lower_bound(boundary_.begin(), boundary_.end(), std::pair(i, -1e300));
    if (it == boundary_.end() || it->first != i)
        bad("boundary_value: node " + std::to_string(i) + " is not a boundary node");
    return it->second;
}

double ProblemSpec::slowness(int i) const {
    check_node(i, n_, "node");
    return slowness_[i];
}

ProblemSpec ProblemSpec::with_scaled_slowness(double c) const {
    if (!(c > 0.0)) bad("with_scaled_slowness: scale must be > 0");
    ProblemSpec out = *this;
    for (double& s : out.slowness_) s *= c;
    return out;
}

ValidationReport validate(const Graph& graph, const ProblemSpec& spec) {
    if (graph.node_count() != spec.node_count())
        bad("validate: graph and spec node counts differ");
    ValidationReport report;
    report.empty_boundary = spec.boundary().empty();

    std::vector<char> reached(graph.node_count(), 0);
    if (!report.empty_boundary) {
        std::vector<int> sources;
        for (auto [node, value] : spec.boundary()) sources.push_back(node);
        for (int i : reachable_from(graph, sources)) reached[i] = 1;
    }
    for (int i = 0; i < graph.node_count(); ++i) {
        if (spec.is_boundary(i)) continue;
        if (!reached[i]) report.unreachable_interior.push_back(i);
        if (spec.slowness(i) == 0.0) report.zero_slowness_interior.push_back(i);
    }
    return report;
}

}  // namespace fprop
