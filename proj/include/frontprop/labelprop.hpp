#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "frontprop/graph.hpp"

namespace fprop {

/// n points in R^dim, flat row-major storage, with optional ground-truth
/// labels (empty when absent).
struct PointCloud {
    std::vector<double> data;
    int dim = 0;
    std::vector<int> labels;

    int size() const { return dim == 0 ? 0 : static_cast<int>(data.size()) / dim; }
    std::span<const double> point(int i) const {
        return {data.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
    }
};

/// Two half circles of radius 1: moon 0 on the upper half circle centred at
/// the origin, moon 1 rotated by pi and centred at (1, 0.5). Points are
/// equispaced in angle over [0, pi] (n/2 per moon), embedded in ambient_dim
/// coordinates (extras 0) plus i.i.d. Gaussian noise of the given variance
/// on every coordinate. Labels are the moon index; deterministic in seed.
PointCloud two_moons(int count, int ambient_dim, double noise_var, std::uint64_t seed);

enum class KnnWeight {
    zp_scaled,         // exp(-d^2 / sqrt(d_k(x_i) d_k(x_j))), locally scaled
    inverse_distance,  // 1 / d
    exp_scaled,        // exp(-d^2 / c)
    exp_dmax_scaled,   // exp(-d^2 / (c sqrt(dmax(x_i) dmax(x_j))))
};

/// Symmetrized k-nearest-neighbor graph: directed edges both ways whenever
/// j is among the k nearest of i or i among the k nearest of j (exact
/// brute-force neighbors, ties broken by index). `scale` is the constant c
/// of the exp_scaled / exp_dmax_scaled weights. Throws when coincident
/// points make a weight undefined.
Graph knn_graph(const PointCloud& cloud, int k, KnnWeight weight, double scale = 0.0);

/// L >= 2 pairwise disjoint nonempty seed sets, one per label.
class LabeledSeedSets {
public:
    LabeledSeedSets(int node_count, std::vector<std::vector<int>> sets);

    int label_count() const { return static_cast<int>(sets_.size()); }
    std::span<const int> seeds(int label) const { return sets_[label]; }
    bool is_seed(int node) const { return seed_label_[node] >= 0; }
    /// -1 when not a seed.
    int seed_label(int node) const { return seed_label_[node]; }

private:
    std::vector<std::vector<int>> sets_;
    std::vector<int> seed_label_;
};

struct Classification {
    std::vector<int> label;      // -1 when unreached from every seed set
    std::vector<char> tie;       // 1 when the argmin was not unique
    std::vector<double> min_time;
};

/// One front per label (boundary 0, s = 1, model p), run through
/// multi_source_solve; each node takes the label of the first-arriving
/// front, ties resolved to the smallest label index and flagged.
Classification classify(const Graph& graph, const LabeledSeedSets& seeds, double p);

/// Percentage of non-seed nodes classified correctly. `seed_nodes` are
/// excluded from the tally; predictions of -1 count as wrong.
double accuracy(std::span<const int> predicted, std::span<const int> truth,
                std::span<const int> seed_nodes);

}  // namespace fprop
