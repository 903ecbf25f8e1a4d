#include "frontprop/labelprop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "frontprop/euclid_graphs.hpp"
#include "frontprop/front_solver.hpp"

namespace fprop {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

}  // namespace

PointCloud two_moons(int count, int ambient_dim, double noise_var, std::uint64_t seed) {
    if (count < 2 || count % 2 != 0)
        throw std::invalid_argument("two_moons: count must be even and >= 2");
    if (ambient_dim < 2) throw std::invalid_argument("two_moons: ambient_dim must be >= 2");
    if (noise_var < 0.0) throw std::invalid_argument("two_moons: negative noise variance");

    const int per_moon = count / 2;
    PointCloud cloud;
    cloud.dim = ambient_dim;
    cloud.data.assign(static_cast<std::size_t>(count) * ambient_dim, 0.0);
    cloud.labels.assign(count, 0);

    auto angle = [&](int k) {
        return per_moon == 1 ? 0.0 : kPi * static_cast<double>(k) / (per_moon - 1);
    };
    for (int k = 0; k < per_moon; ++k) {
        const double t = angle(k);
        double* p0 = cloud.data.data() + static_cast<std::size_t>(k) * ambient_dim;
        p0[0] = std::cos(t);
        p0[1] = std::sin(t);
        double* p1 = cloud.data.data() + static_cast<std::size_t>(per_moon + k) * ambient_dim;
        p1[0] = 1.0 - std::cos(t);
        p1[1] = 0.5 - std::sin(t);
        cloud.labels[per_moon + k] = 1;
    }
    if (noise_var > 0.0) {
        const double sigma = std::sqrt(noise_var);
        std::uint64_t state = seed_state(seed);
        for (double& v : cloud.data) v += sigma * gaussian01(state);
    }
    return cloud;
}

Graph knn_graph(const PointCloud& cloud, int k, KnnWeight weight, double scale) {
    const int n = cloud.size();
    if (k < 1 || k >= n) throw std::invalid_argument("knn_graph: need 1 <= k < point count");
    if ((weight == KnnWeight::exp_scaled || weight == KnnWeight::exp_dmax_scaled) && !(scale > 0.0))
        throw std::invalid_argument("knn_graph: exp-scaled weights need a positive scale");

    // exact neighbors by brute force; (distance^2, id) ordering is total
    std::vector<std::vector<std::pair<double, int>>> nearest(n);
    std::vector<double> dk(n);  // k-th nearest distance, the local scale d_k(x_i)
    std::vector<std::pair<double, int>> row;
    row.reserve(n - 1);
    for (int i = 0; i < n; ++i) {
        row.clear();
        for (int j = 0; j < n; ++j)
            if (j != i) row.emplace_back(sq_dist(cloud.point(i), cloud.point(j)), j);
        std::nth_element(row.begin(), row.begin() + (k - 1), row.end());
        std::sort(row.begin(), row.begin() + k);
        nearest[i].assign(row.begin(), row.begin() + k);
        dk[i] = std::sqrt(nearest[i].back().first);
    }

    // symmetrize adjacency
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) {
        for (const auto& [d2, j] : nearest[i]) {
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
    }
    std::vector<double> dmax(n, 0.0);  // distance to the furthest graph neighbor
    for (int i = 0; i < n; ++i) {
        std::sort(adj[i].begin(), adj[i].end());
        adj[i].erase(std::unique(adj[i].begin(), adj[i].end()), adj[i].end());
        for (int j : adj[i])
            dmax[i] = std::max(dmax[i], std::sqrt(sq_dist(cloud.point(i), cloud.point(j))));
    }
    std::vector<EdgeSpec> edges;
    for (int i = 0; i < n; ++i) {
        for (int j : adj[i]) {
            const double d2 = sq_dist(cloud.point(i), cloud.point(j));
            double w = 0.0;
            switch (weight) {
                case KnnWeight::inverse_distance:
                    if (d2 == 0.0)
                        throw std::invalid_argument(
                            "knn_graph: coincident points with inverse_distance weights");
                    w = 1.0 / std::sqrt(d2);
                    break;
                case KnnWeight::zp_scaled: {
                    const double denom = std::sqrt(dk[i] * dk[j]);
                    if (!(denom > 0.0))
                        throw std::invalid_argument(
                            "knn_graph: zero local scale (coincident points)");
                    w = std::exp(-d2 / denom);
                    break;
                }
                case KnnWeight::exp_scaled:
                    w = std::exp(-d2 / scale);
                    break;
                case KnnWeight::exp_dmax_scaled: {
                    const double denom = scale * std::sqrt(dmax[i] * dmax[j]);
                    if (!(denom > 0.0))
                        throw std::invalid_argument(
                            "knn_graph: zero local scale (coincident points)");
                    w = std::exp(-d2 / denom);
                    break;
                }
            }
            edges.push_back({j, i, w});  // arc into i; the mirrored arc comes from j's row
        }
    }
    return Graph::from_edges(edges, n);
}

LabeledSeedSets::LabeledSeedSets(int node_count, std::vector<std::vector<int>> sets)
    : sets_(std::move(sets)) {
    if (sets_.size() < 2) throw std::invalid_argument("need at least two seed sets");
    seed_label_.assign(node_count, -1);
    for (std::size_t l = 0; l < sets_.size(); ++l) {
        if (sets_[l].empty())
            throw std::invalid_argument("seed set " + std::to_string(l) + " is empty");
        for (int node : sets_[l]) {
            if (node < 0 || node >= node_count)
                throw std::invalid_argument("seed node out of range");
            if (seed_label_[node] >= 0)
                throw std::invalid_argument("seed sets must be pairwise disjoint (node " +
                                            std::to_string(node) + ")");
            seed_label_[node] = static_cast<int>(l);
        }
    }
}

Classification classify(const Graph& graph, const LabeledSeedSets& seeds, double p) {
    const int n = graph.node_count();
    std::vector<ProblemSpec> specs;
    specs.reserve(seeds.label_count());
    for (int l = 0; l < seeds.label_count(); ++l) {
        std::span<const int> s = seeds.seeds(l);
        specs.emplace_back(n, std::vector<int>(s.begin(), s.end()), p);
    }
    const std::vector<ArrivalField> fields = multi_source_solve(graph, specs);

    Classification out;
    out.label.assign(n, -1);
    out.tie.assign(n, 0);
    out.min_time.assign(n, std::numeric_limits<double>::infinity());
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l < seeds.label_count(); ++l) {
            const double t = fields[l].time[i];
            if (t < out.min_time[i]) {
                out.min_time[i] = t;
                out.label[i] = l;
                out.tie[i] = 0;
            } else if (t == out.min_time[i] && !std::isinf(t)) {
                out.tie[i] = 1;
            }
        }
    }
    return out;
}

double accuracy(std::span<const int> predicted, std::span<const int> truth,
                std::span<const int> seed_nodes) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("accuracy: prediction and truth sizes differ");
    std::vector<char> is_seed(predicted.size(), 0);
    for (int s : seed_nodes) {
        if (s < 0 || static_cast<std::size_t>(s) >= predicted.size())
            throw std::invalid_argument("accuracy: seed node out of range");
        is_seed[s] = 1;
    }
    std::size_t total = 0, correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (is_seed[i]) continue;
        ++total;
        if (predicted[i] == truth[i]) ++correct;
    }
    if (total == 0) throw std::invalid_argument("accuracy: no non-seed nodes");
    return 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace fprop
