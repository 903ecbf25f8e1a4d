#include "frontprop/pathset_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frontprop/local_update.hpp"

namespace fprop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kValueIterTol = 1e-12;

void check_path_set(const PathSet& ps) {
    if (ps.empty()) throw std::invalid_argument("path set must be nonempty");
    const int source = ps.front().front();
    const int target = ps.front().back();
    for (const Path& p : ps) {
        if (p.empty()) throw std::invalid_argument("path set contains an empty path");
        if (p.front() != source || p.back() != target)
            throw std::invalid_argument("paths in a set must share source and target");
    }
}

}  // namespace

std::vector<Path> enumerate_simple_paths(const Graph& graph, int from, int to, std::size_t cap) {
    if (from == to) throw std::invalid_argument("enumerate_simple_paths: from == to");
    std::vector<Path> out;
    std::vector<char> on_path(graph.node_count(), 0);
    Path current{from};
    on_path[from] = 1;

    auto dfs = [&](auto&& self, int at) -> void {
        for (const Graph::Arc& a : graph.out_neighbors(at)) {
            if (on_path[a.node]) continue;
            current.push_back(a.node);
            if (a.node == to) {
                if (out.size() >= cap)
                    throw OracleScaleError("oracle scale exceeded: more than " +
                                           std::to_string(cap) + " simple paths");
                out.push_back(current);
            } else {
                on_path[a.node] = 1;
                self(self, a.node);
                on_path[a.node] = 0;
            }
            current.pop_back();
        }
    };
    dfs(dfs, from);
    std::sort(out.begin(), out.end());
    return out;
}

std::map<int, PathSet> penultimate_truncation(const PathSet& ps) {
    check_path_set(ps);
    if (ps.front().size() < 2)
        throw std::invalid_argument("penultimate_truncation: trivial path has no last edge");
    std::map<int, PathSet> out;
    for (const Path& p : ps) {
        const int j = p[p.size() - 2];
        out[j].emplace_back(p.begin(), p.end() - 1);
    }
    for (auto& [j, sub] : out) {
        std::sort(sub.begin(), sub.end());
        sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
    }
    return out;
}

TravelTimeEvaluator::TravelTimeEvaluator(const Graph& graph, const ProblemSpec& spec,
                                         PathModel model)
    : graph_(graph), spec_(spec), model_(model) {
    if (graph.node_count() != spec.node_count())
        throw std::invalid_argument("TravelTimeEvaluator: graph and spec node counts differ");
}

double TravelTimeEvaluator::travel_time(const PathSet& ps) {
    check_path_set(ps);
    PathSet key = ps;
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());

    if (key.front().size() == 1) {
        const int x0 = key.front().front();
        return spec_.is_boundary(x0) ? spec_.boundary_value(x0) : 0.0;
    }
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int target = key.front().back();
    const double s = spec_.slowness(target);

    double value = kNan;
    bool undefined = false;
    std::vector<std::pair<double, double>> parts;  // (T(P^i_j), w(j, target))
    for (const auto& [j, sub] : penultimate_truncation(key)) {
        const double t = travel_time(sub);
        if (std::isnan(t)) {
            undefined = true;
            break;
        }
        parts.emplace_back(t, graph_.weight(j, target));
    }

    if (!undefined) {
        switch (model_) {
            case PathModel::linf: {
                value = kInf;
                for (auto [t, w] : parts) value = std::min(value, t + s / w);
                break;
            }
            case PathModel::l1: {
                double sum_w = 0.0, sum_wt = 0.0;
                for (auto [t, w] : parts) {
                    sum_w += w;
                    sum_wt += w * t;
                }
                value = (sum_wt + s) / sum_w;
                break;
            }
            case PathModel::l2: {
                double z = 0.0, sum_w2t = 0.0, sum_w2tt = 0.0;
                for (auto [t, w] : parts) {
                    z += w * w;
                    sum_w2t += w * w * t;
                    sum_w2tt += w * w * t * t;
                }
                const double mu = sum_w2t / z;
                const double sigma2 = sum_w2tt / z - mu * mu;
                const double disc = s * s / z - sigma2;
                value = disc >= 0.0 ? mu + std::sqrt(disc) : kNan;
                break;
            }
        }
        // The averaging formulas presuppose that every contributing branch
        // has arrived by the set's own travel time; a set whose value falls
        // below one of its truncations has no physical reading and is
        // undefined, like the negative-discriminant case.
        if (model_ != PathModel::linf && !std::isnan(value)) {
            for (auto [t, w] : parts) {
                (void)w;
                if (value < t - 1e-12) {
                    value = kNan;
                    break;
                }
            }
        }
    }
    memo_.emplace(std::move(key), value);
    return value;
}

double travel_time(const Graph& graph, const ProblemSpec& spec, const PathSet& ps,
                   PathModel model) {
    TravelTimeEvaluator eval(graph, spec, model);
    return eval.travel_time(ps);
}

double first_arrival(const Graph& graph, const ProblemSpec& spec, int node, PathModel model,
                     OracleCaps caps) {
    if (spec.boundary().empty()) throw std::invalid_argument("first_arrival: empty boundary");
    if (spec.is_boundary(node))
        throw std::invalid_argument("first_arrival: node is a boundary node");

    double best = kInf;
    bool any_path = false;
    TravelTimeEvaluator eval(graph, spec, model);
    for (auto [x0, value] : spec.boundary()) {
        (void)value;
        const std::vector<Path> paths = enumerate_simple_paths(graph, x0, node, caps.max_paths);
        if (paths.empty()) continue;
        any_path = true;
        if (paths.size() >= 8 * sizeof(std::size_t) ||
            (std::size_t{1} << paths.size()) - 1 > caps.max_subsets)
            throw OracleScaleError("oracle scale exceeded: subset count over cap for source " +
                                   std::to_string(x0));
        PathSet subset;
        const std::size_t full = (std::size_t{1} << paths.size()) - 1;
        for (std::size_t mask = 1; mask <= full; ++mask) {
            subset.clear();
            for (std::size_t b = 0; b < paths.size(); ++b)
                if (mask >> b & 1) subset.push_back(paths[b]);
            const double t = eval.travel_time(subset);
            if (!std::isnan(t)) best = std::min(best, t);
        }
    }
    if (!any_path)
        throw std::invalid_argument("first_arrival: node " + std::to_string(node) +
                                    " unreachable from the boundary");
    return best;
}

ArrivalField value_iteration_solve(const Graph& graph, const ProblemSpec& spec, double p) {
    if (graph.node_count() != spec.node_count())
        throw std::invalid_argument("value_iteration_solve: graph and spec node counts differ");
    if (spec.boundary().empty())
        throw std::invalid_argument("value_iteration_solve: boundary set is empty");

    const int n = graph.node_count();
    std::vector<double> u(n, kInf);
    for (auto [node, value] : spec.boundary()) u[node] = value;

    const std::int64_t max_sweeps =
        static_cast<std::int64_t>(n) * (graph.edge_count() + 1) + 1;
    std::vector<double> next(n);
    std::vector<KnownArrival> known;
    bool converged = false;
    for (std::int64_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        double max_change = 0.0;
        for (int i = 0; i < n; ++i) {
            if (spec.is_boundary(i)) {
                next[i] = u[i];
                continue;
            }
            known.clear();
            for (const Graph::Arc& a : graph.in_neighbors(i))
                if (!std::isinf(u[a.node])) known.push_back({u[a.node], a.weight});
            next[i] = known.empty() ? kInf : local_solve(known, spec.slowness(i), p);
            if (std::isinf(next[i]) != std::isinf(u[i]))
                max_change = kInf;
            else if (!std::isinf(next[i]))
                max_change = std::max(max_change, std::abs(next[i] - u[i]));
        }
        u.swap(next);
        converged = max_change <= kValueIterTol;
    }
    if (!converged)
        throw std::runtime_error("value_iteration_solve: no fixed point within sweep budget");

    // Front decomposition from the converged values, same 1e-12 grouping as solve().
    ArrivalField field;
    field.time = u;
    field.front_index.assign(n, -1);
    std::vector<std::pair<double, int>> order;
    for (int i = 0; i < n; ++i)
        if (!std::isinf(u[i])) order.emplace_back(u[i], i);
    std::sort(order.begin(), order.end());
    double front_start = -kInf;
    for (auto [value, i] : order) {
        if (field.front_values.empty() || value > front_start + 1e-12) {
            field.front_values.push_back(value);
            front_start = value;
        }
        field.front_index[i] = static_cast<int>(field.front_values.size()) - 1;
    }
    return field;
}

}  // namespace fprop
