#include "frontprop/euclid_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

namespace fprop {

namespace {

constexpr double kSlack = 1e-9;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct LatticeKey {
    int m, n, t;
    bool operator==(const LatticeKey&) const = default;
};

struct LatticeHash {
    std::size_t operator()(const LatticeKey& k) const {
        std::uint64_t h = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.m)) << 34) ^
                          (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.n)) << 2) ^
                          static_cast<std::uint32_t>(k.t);
        return std::hash<std::uint64_t>{}(h);
    }
};

class LatticeBuilder {
public:
    explicit LatticeBuilder(const Box& box) : box_(box) {}

    int add(LatticeKey key, double x, double y) {
        if (!box_.contains(x, y, kSlack)) return -1;
        auto [it, fresh] = ids_.emplace(key, static_cast<int>(coords_.size()));
        if (fresh) coords_.push_back({x, y});
        return it->second;
    }

    int lookup(LatticeKey key) const {
        auto it = ids_.find(key);
        return it == ids_.end() ? -1 : it->second;
    }

    void connect(int a, int b, double w) {
        if (a < 0 || b < 0) return;
        edges_.push_back({a, b, w});
        edges_.push_back({b, a, w});
    }

    EmbeddedGraph finish(GridKind kind, double h, std::string stencil) {
        EmbeddedGraph out;
        out.graph = Graph::from_edges(edges_, static_cast<int>(coords_.size()));
        out.coords = std::move(coords_);
        out.kind = kind;
        out.spacing = h;
        out.stencil = std::move(stencil);
        return out;
    }

private:
    Box box_;
    std::unordered_map<LatticeKey, int, LatticeHash> ids_;
    std::vector<std::array<double, 2>> coords_;
    std::vector<EdgeSpec> edges_;
};

void check_spacing(double h, const Box& box) {
    if (!(h > 0.0)) throw std::invalid_argument("grid spacing must be > 0");
    if (box.width() <= 0.0 || box.height() <= 0.0)
        throw std::invalid_argument("domain box is empty");
    if (h > box.width() || h > box.height())
        throw std::invalid_argument("grid spacing larger than the domain");
}

int ifloor(double v) { return static_cast<int>(std::floor(v + kSlack)); }
int iceil(double v) { return static_cast<int>(std::ceil(v - kSlack)); }

EmbeddedGraph build_bravais(GridKind kind, double h, const Box& box, const WeightRule& weights,
                            std::span<const std::array<double, 2>> directions,
                            const char* stencil) {
    // Lattice n1 * a + n2 * b with a = h*directions[0] (axis-aligned),
    // b = h*directions[1]; edges along every listed direction (both signs).
    LatticeBuilder builder(box);
    const double ax = directions[0][0] * h;
    const double ay = directions[0][1] * h;
    const double bx = directions[1][0] * h, by = directions[1][1] * h;
    if (ay != 0.0) throw std::logic_error("build_bravais expects the first direction on the x axis");

    std::vector<LatticeKey> nodes;
    for (int n2 = iceil(box.ymin / by); n2 <= ifloor(box.ymax / by); ++n2) {
        const double row_y = n2 * by;
        const int n1_lo = iceil((box.xmin - n2 * bx) / ax);
        const int n1_hi = ifloor((box.xmax - n2 * bx) / ax);
        for (int n1 = n1_lo; n1 <= n1_hi; ++n1) {
            if (builder.add({n1, n2, 0}, n1 * ax + n2 * bx, row_y) >= 0)
                nodes.push_back({n1, n2, 0});
        }
    }

    // Canonical +direction steps; both directed edges are emitted per step.
    std::vector<std::array<int, 2>> steps;
    steps.push_back({1, 0});
    steps.push_back({0, 1});
    if (directions.size() > 2) steps.push_back({-1, 1});  // third triangular direction
    for (const LatticeKey& k : nodes) {
        for (auto [dm, dn] : steps) {
            const int other = builder.lookup({k.m + dm, k.n + dn, 0});
            if (other < 0) continue;
            const double dist = std::hypot(dm * ax + dn * bx, dm * ay + dn * by);
            builder.connect(builder.lookup(k), other, weights(dist));
        }
    }
    return builder.finish(kind, h, stencil);
}

EmbeddedGraph build_hexagonal(double h, const Box& box, const WeightRule& weights) {
    // Honeycomb with edge length h: two triangular sublattices, A at
    // m*a1 + n*a2 with a1 = (1.5h, s3h), a2 = (1.5h, -s3h), B at A + (h, 0).
    const double s3 = std::sqrt(3.0) / 2.0 * h;
    LatticeBuilder builder(box);
    const int range_m = static_cast<int>(std::ceil((box.width() + box.height()) / h)) + 2;
    std::vector<LatticeKey> bs;
    for (int m = -range_m; m <= range_m; ++m) {
        for (int n = -range_m; n <= range_m; ++n) {
            const double ax = 1.5 * (m + n) * h;
            const double ay = s3 * (m - n);
            builder.add({m, n, 0}, ax, ay);
            if (builder.add({m, n, 1}, ax + h, ay) >= 0) bs.push_back({m, n, 1});
        }
    }
    const double w = weights(h);
    for (const LatticeKey& b : bs) {
        const int bid = builder.lookup(b);
        builder.connect(bid, builder.lookup({b.m, b.n, 0}), w);
        builder.connect(bid, builder.lookup({b.m + 1, b.n, 0}), w);
        builder.connect(bid, builder.lookup({b.m, b.n + 1, 0}), w);
    }
    return builder.finish(GridKind::hexagonal, h, "honeycomb-3");
}

std::vector<std::array<double, 2>> sample_points(const Box& box, double margin, int count,
                                                 std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("probe count must be >= 1");
    Box inner{box.xmin + margin, box.xmax - margin, box.ymin + margin, box.ymax - margin};
    if (inner.width() <= 0.0 || inner.height() <= 0.0)
        throw std::invalid_argument("probe margin leaves an empty box");
    std::uint64_t state = seed_state(seed);
    std::vector<std::array<double, 2>> pts(count);
    for (auto& p : pts) {
        p[0] = inner.xmin + uniform01(state) * inner.width();
        p[1] = inner.ymin + uniform01(state) * inner.height();
    }
    return pts;
}

}  // namespace

std::uint64_t seed_state(std::uint64_t seed) {
    std::uint64_t s = seed;
    splitmix64(s);
    return s;
}

double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

double gaussian01(std::uint64_t& state) {
    // Box-Muller; one draw per call keeps the stream position obvious.
    double u1 = uniform01(state);
    while (u1 == 0.0) u1 = uniform01(state);
    const double u2 = uniform01(state);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

WeightRule WeightRule::constant(double weight) {
    if (!(weight > 0.0)) throw std::invalid_argument("constant weight must be > 0");
    WeightRule r;
    r.f_ = [weight](double) { return weight; };
    return r;
}

WeightRule WeightRule::inverse_distance() {
    WeightRule r;
    r.f_ = [](double d) {
        if (!(d > 0.0)) throw std::invalid_argument("inverse_distance: zero edge length");
        return 1.0 / d;
    };
    return r;
}

WeightRule WeightRule::kernel(std::function<double(double)> eta) {
    if (!eta) throw std::invalid_argument("kernel: empty profile");
    if (!(eta(0.0) > 0.0)) throw std::invalid_argument("kernel: eta(0) must be > 0");
    WeightRule r;
    r.f_ = std::move(eta);
    return r;
}

double WeightRule::operator()(double distance) const {
    const double w = f_(distance);
    if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument("weight rule produced a nonpositive weight");
    return w;
}

EmbeddedGraph make_regular_grid(GridKind kind, double h, const Box& domain,
                                const WeightRule& weights) {
    check_spacing(h, domain);
    static const double kCos60 = 0.5;
    static const double kSin60 = std::sqrt(3.0) / 2.0;
    switch (kind) {
        case GridKind::square: {
            const std::array<std::array<double, 2>, 2> dirs{{{1.0, 0.0}, {0.0, 1.0}}};
            return build_bravais(kind, h, domain, weights, dirs, "square-4");
        }
        case GridKind::triangular: {
            const std::array<std::array<double, 2>, 3> dirs{
                {{1.0, 0.0}, {kCos60, kSin60}, {-kCos60, kSin60}}};
            return build_bravais(kind, h, domain, weights, dirs, "triangular-6");
        }
        case GridKind::rhombus: {
            // interior angle pi/3 between the two lattice directions
            const std::array<std::array<double, 2>, 2> dirs{{{1.0, 0.0}, {kCos60, kSin60}}};
            return build_bravais(kind, h, domain, weights, dirs, "rhombus-4");
        }
        case GridKind::hexagonal:
            return build_hexagonal(h, domain, weights);
        default:
            throw std::invalid_argument("make_regular_grid: not a regular grid kind");
    }
}

EmbeddedGraph make_square_stencil_graph(double h, const Box& domain, double radius,
                                        const WeightRule& weights) {
    check_spacing(h, domain);
    const double r = radius / h;
    const bool listed = std::abs(r - 1.0) < 1e-9 || std::abs(r - std::sqrt(2.0)) < 1e-9 ||
                        std::abs(r - 2.0) < 1e-9 || std::abs(r - std::sqrt(5.0)) < 1e-9;
    if (!listed)
        throw std::invalid_argument(
            "stencil radius must be one of h, sqrt(2)h, 2h, sqrt(5)h");

    LatticeBuilder builder(domain);
    std::vector<LatticeKey> nodes;
    for (int j = iceil(domain.ymin / h); j <= ifloor(domain.ymax / h); ++j)
        for (int i = iceil(domain.xmin / h); i <= ifloor(domain.xmax / h); ++i)
            if (builder.add({i, j, 0}, i * h, j * h) >= 0) nodes.push_back({i, j, 0});

    const double r2 = r * r * (1.0 + 1e-12);
    std::vector<std::array<int, 2>> offsets;
    for (int di = -2; di <= 2; ++di)
        for (int dj = -2; dj <= 2; ++dj)
            if ((di > 0 || (di == 0 && dj > 0)) && di * di + dj * dj <= r2)
                offsets.push_back({di, dj});

    for (const LatticeKey& k : nodes) {
        for (auto [di, dj] : offsets) {
            const int other = builder.lookup({k.m + di, k.n + dj, 0});
            if (other < 0) continue;
            builder.connect(builder.lookup(k), other, weights(h * std::hypot(di, dj)));
        }
    }
    char label[32];
    std::snprintf(label, sizeof label, "square-stencil-r=%.6gh", r);
    EmbeddedGraph out = builder.finish(GridKind::square_stencil, h, label);
    return out;
}

EmbeddedGraph make_uniform_random(int count, const Box& domain, std::uint64_t seed,
                                  const WeightRule& weights) {
    if (count < 2) throw std::invalid_argument("uniform random graph needs at least 2 points");
    const double eps = 4.0 / std::sqrt(static_cast<double>(count));

    std::uint64_t state = seed_state(seed);
    std::vector<std::array<double, 2>> pts(count);
    for (auto& p : pts) {
        p[0] = domain.xmin + uniform01(state) * domain.width();
        p[1] = domain.ymin + uniform01(state) * domain.height();
    }

    // cell binning at the connection radius
    const int nx = std::max(1, static_cast<int>(domain.width() / eps));
    const int ny = std::max(1, static_cast<int>(domain.height() / eps));
    auto cell_of = [&](const std::array<double, 2>& p) {
        int cx = std::min(nx - 1, std::max(0, static_cast<int>((p[0] - domain.xmin) / eps)));
        int cy = std::min(ny - 1, std::max(0, static_cast<int>((p[1] - domain.ymin) / eps)));
        return cy * nx + cx;
    };
    std::vector<std::vector<int>> cells(static_cast<std::size_t>(nx) * ny);
    for (int i = 0; i < count; ++i) cells[cell_of(pts[i])].push_back(i);

    std::vector<EdgeSpec> edges;
    for (int i = 0; i < count; ++i) {
        const int cx = cell_of(pts[i]) % nx;
        const int cy = cell_of(pts[i]) / nx;
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const int ox = cx + dx, oy = cy + dy;
                if (ox < 0 || ox >= nx || oy < 0 || oy >= ny) continue;
                for (int j : cells[static_cast<std::size_t>(oy) * nx + ox]) {
                    if (j <= i) continue;
                    const double d = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
                    if (d <= eps && d > 0.0) {
                        const double w = weights(d);
                        edges.push_back({i, j, w});
                        edges.push_back({j, i, w});
                    }
                }
            }
        }
    }

    EmbeddedGraph out;
    out.graph = Graph::from_edges(edges, count);
    out.coords = std::move(pts);
    out.kind = GridKind::uniform_random;
    out.spacing = eps;
    out.stencil = "uniform-eps";
    return out;
}

int nearest_node(const EmbeddedGraph& embed, double x, double y) {
    if (embed.coords.empty()) throw std::invalid_argument("nearest_node: empty embedding");
    int best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < embed.node_count(); ++i) {
        const double dx = embed.coords[i][0] - x;
        const double dy = embed.coords[i][1] - y;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

std::vector<int> sample_probe_nodes(const EmbeddedGraph& embed, const Box& domain, double margin,
                                    int count, std::uint64_t seed) {
    std::vector<int> out;
    for (const auto& p : sample_points(domain, margin, count, seed))
        out.push_back(nearest_node(embed, p[0], p[1]));
    return out;
}

double euclidean_error(const ArrivalField& field, const EmbeddedGraph& embed, int source,
                       std::span<const int> probes, double scale) {
    if (probes.empty()) throw std::invalid_argument("euclidean_error: no probes");
    if (field.node_count() != embed.node_count())
        throw std::invalid_argument("euclidean_error: field and embedding sizes differ");
    const auto& src = embed.coords[source];
    double sum = 0.0;
    for (int i : probes) {
        if (!field.reached(i))
            throw std::invalid_argument("euclidean_error: probe " + std::to_string(i) +
                                        " unreached");
        const double d = std::hypot(embed.coords[i][0] - src[0], embed.coords[i][1] - src[1]);
        const double e = field.time[i] - scale * d;
        sum += e * e;
    }
    return sum / static_cast<double>(probes.size());
}

KappaScalingReport kappa_scaling_check(double h, double p, int probe_count, double margin,
                                       std::uint64_t seed) {
    const Box box{-1.0, 1.0, -1.0, 1.0};
    const WeightRule w = WeightRule::constant(1.0 / h);
    const auto points = sample_points(box, margin, probe_count, seed);

    auto solve_grid = [&](GridKind kind) {
        EmbeddedGraph embed = make_regular_grid(kind, h, box, w);
        const int src = nearest_node(embed, 0.0, 0.0);
        ProblemSpec spec(embed.node_count(), std::vector<int>{src}, p);
        ArrivalField u = solve(embed.graph, spec);
        return std::pair(std::move(embed), std::move(u));
    };
    const auto [square, u_s] = solve_grid(GridKind::square);
    const auto [tri, u_t] = solve_grid(GridKind::triangular);
    const auto [hex, u_h] = solve_grid(GridKind::hexagonal);

    // uniform random companion: M = 8/h^2 gives mean neighbor spacing ~ h
    const int count = std::max(16, static_cast<int>(std::lround(8.0 / (h * h))));
    EmbeddedGraph uni = make_uniform_random(count, box, seed, WeightRule::inverse_distance());
    const int uni_src = nearest_node(uni, 0.0, 0.0);
    ProblemSpec uni_spec(uni.node_count(), std::vector<int>{uni_src}, p);
    const ArrivalField u_u = solve(uni.graph, uni_spec);
    const double mean_degree =
        static_cast<double>(uni.graph.edge_count()) / uni.node_count();

    KappaScalingReport report;
    report.h = h;
    report.triangular_scale = std::sqrt(6.0 / 4.0);
    report.hexagonal_scale = std::sqrt(3.0 / 4.0);
    report.uniform_scale = std::sqrt(mean_degree / 4.0);
    // relative sup norm over the probe set: ||c u_k - u_S||_inf / ||u_S||_inf
    double tri_diff = 0.0, hex_diff = 0.0, uni_diff = 0.0, norm = 0.0;
    for (const auto& pt : points) {
        const double us = u_s.time[nearest_node(square, pt[0], pt[1])];
        const double ut = u_t.time[nearest_node(tri, pt[0], pt[1])];
        const double uh = u_h.time[nearest_node(hex, pt[0], pt[1])];
        const double uu = u_u.time[nearest_node(uni, pt[0], pt[1])];
        norm = std::max(norm, std::abs(us));
        tri_diff = std::max(tri_diff, std::abs(report.triangular_scale * ut - us));
        hex_diff = std::max(hex_diff, std::abs(report.hexagonal_scale * uh - us));
        if (std::isfinite(uu))
            uni_diff = std::max(uni_diff, std::abs(report.uniform_scale * uu - us));
    }
    if (norm > 0.0) {
        report.triangular_deviation = tri_diff / norm;
        report.hexagonal_deviation = hex_diff / norm;
        report.uniform_deviation = uni_diff / norm;
    }
    return report;
}

}  // namespace fprop
