#include "frontprop/local_update.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fprop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRootTol = 1e-12;
constexpr int kMaxBisection = 200;
constexpr double kDiscriminantClamp = -1e-12;

void require_known(std::span<const KnownArrival> known, const char* who) {
    if (known.empty())
        throw std::invalid_argument(std::string(who) + ": no known neighbors, candidate undefined");
}

std::vector<KnownArrival> sorted_by_time(std::span<const KnownArrival> known) {
    std::vector<KnownArrival> v(known.begin(), known.end());
    std::sort(v.begin(), v.end(),
              [](const KnownArrival& a, const KnownArrival& b) { return a.time < b.time; });
    return v;
}

}  // namespace

double candidate_inf(std::span<const KnownArrival> known, double slowness) {
    require_known(known, "candidate_inf");
    double best = kInf;
    for (const KnownArrival& k : known) best = std::min(best, k.time + slowness / k.weight);
    return best;
}

double candidate_l1(std::span<const KnownArrival> known, double slowness) {
    require_known(known, "candidate_l1");
    std::vector<KnownArrival> v = sorted_by_time(known);
    double sum_w = 0.0;
    double sum_wu = 0.0;
    double value = v.front().time;  // s = 0 degenerates to the smallest known time
    for (std::size_t m = 0; m < v.size(); ++m) {
        if (m > 0 && value <= v[m].time) break;
        sum_w += v[m].weight;
        sum_wu += v[m].weight * v[m].time;
        value = (sum_wu + slowness) / sum_w;
    }
    return value;
}

double candidate_l2(std::span<const KnownArrival> known, double slowness) {
    require_known(known, "candidate_l2");
    std::vector<KnownArrival> v = sorted_by_time(known);
    double z2 = 0.0;      // sum w^2
    double sum_w2u = 0.0;
    double sum_w2uu = 0.0;
    double value = v.front().time;
    for (std::size_t m = 0; m < v.size(); ++m) {
        if (m > 0 && value <= v[m].time) break;
        const double w2 = v[m].weight * v[m].weight;
        z2 += w2;
        sum_w2u += w2 * v[m].time;
        sum_w2uu += w2 * v[m].time * v[m].time;
        const double mu = sum_w2u / z2;
        double disc = slowness * slowness / z2 - (sum_w2uu / z2 - mu * mu);
        if (disc < 0.0) {
            if (disc < kDiscriminantClamp) break;  // structurally inconsistent set
            disc = 0.0;
        }
        value = mu + std::sqrt(disc);
    }
    return value;
}

double candidate_lp(std::span<const KnownArrival> known, double slowness, double p) {
    require_known(known, "candidate_lp");
    if (!(p >= 1.0) || std::isinf(p))
        throw std::invalid_argument("candidate_lp: p must satisfy 1 <= p < inf");

    double lo = kInf;
    double hi = kInf;
    for (const KnownArrival& k : known) {
        lo = std::min(lo, k.time);
        hi = std::min(hi, k.time + slowness / k.weight);
    }
    if (slowness == 0.0) return lo;

    const double sp = std::pow(slowness, p);
    auto excess = [&](double u) {
        double sum = 0.0;
        for (const KnownArrival& k : known) {
            const double d = u - k.time;
            if (d > 0.0) sum += std::pow(k.weight * d, p);
        }
        return sum - sp;
    };

    // F(lo) = -s^p <= 0 and F(hi) >= 0: bisect.
    for (int it = 0; it < kMaxBisection; ++it) {
        if (hi - lo <= kRootTol) return 0.5 * (lo + hi);
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return mid;  // bracket at floating-point resolution
        if (excess(mid) <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    throw std::runtime_error("candidate_lp: bisection did not reach tolerance, bracket [" +
                             std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

double local_solve(std::span<const KnownArrival> known, double slowness, double p) {
    if (std::isinf(p)) return candidate_inf(known, slowness);
    if (p == 1.0) return candidate_l1(known, slowness);
    if (p == 2.0) return candidate_l2(known, slowness);
    return candidate_lp(known, slowness, p);
}

double residual(const Graph& graph, const ProblemSpec& spec, std::span<const double> u, int node) {
    if (static_cast<int>(u.size()) != graph.node_count())
        throw std::invalid_argument("residual: field size != node count");
    const double ui = u[node];
    if (std::isinf(ui)) return kInf;
    const double p = spec.p();
    const double s = spec.slowness(node);
    if (std::isinf(p)) {
        double mx = 0.0;
        for (const Graph::Arc& a : graph.in_neighbors(node)) {
            if (std::isinf(u[a.node])) continue;
            mx = std::max(mx, a.weight * std::max(ui - u[a.node], 0.0));
        }
        return mx - s;
    }
    double sum = 0.0;
    for (const Graph::Arc& a : graph.in_neighbors(node)) {
        if (std::isinf(u[a.node])) continue;
        const double d = ui - u[a.node];
        if (d > 0.0) sum += std::pow(a.weight * d, p);
    }
    return std::pow(sum, 1.0 / p) - s;
}

}  // namespace fprop
