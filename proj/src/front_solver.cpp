#include "frontprop/front_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <thread>

#include "frontprop/local_update.hpp"

namespace fprop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFrontTieTol = 1e-12;

struct HeapEntry {
    double value;
    int node;
    bool operator>(const HeapEntry& o) const {
        return std::pair(value, node) > std::pair(o.value, o.node);
    }
};

ArrivalField run_solve(const Graph& graph, const ProblemSpec& spec, FrontTrace* trace) {
    if (graph.node_count() != spec.node_count())
        throw std::invalid_argument("solve: graph and spec node counts differ");
    if (spec.boundary().empty()) throw std::invalid_argument("solve: boundary set is empty");

    const int n = graph.node_count();
    const double p = spec.p();

    ArrivalField field;
    field.time.assign(n, kInf);
    field.front_index.assign(n, -1);

    std::vector<char> known(n, 0);
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
    for (auto [node, value] : spec.boundary()) heap.push({value, node});

    std::vector<KnownArrival> scratch;
    double front_start = -kInf;

    while (!heap.empty()) {
        auto [value, i] = heap.top();
        heap.pop();
        if (known[i]) continue;  // stale entry
        known[i] = 1;
        field.time[i] = value;

        if (field.front_values.empty() || value > front_start + kFrontTieTol) {
            field.front_values.push_back(value);
            front_start = value;
            if (trace) trace->fronts.emplace_back();
        }
        field.front_index[i] = static_cast<int>(field.front_values.size()) - 1;
        if (trace) trace->fronts.back().push_back(i);

        for (const Graph::Arc& out : graph.out_neighbors(i)) {
            const int c = out.node;
            if (known[c] || spec.is_boundary(c)) continue;
            scratch.clear();
            for (const Graph::Arc& in : graph.in_neighbors(c))
                if (known[in.node]) scratch.push_back({field.time[in.node], in.weight});
            heap.push({local_solve(scratch, spec.slowness(c), p), c});
        }
    }

    if (trace) trace->values = field.front_values;
    return field;
}

}  // namespace

std::vector<int> FrontTrace::known_set(int l) const {
    if (l < 0 || l >= static_cast<int>(fronts.size()))
        throw std::invalid_argument("known_set: front index out of range");
    std::vector<int> out;
    for (int k = 0; k <= l; ++k) out.insert(out.end(), fronts[k].begin(), fronts[k].end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> FrontTrace::candidate_set(const Graph& graph, int l) const {
    std::vector<int> kl = known_set(l);
    std::vector<char> in_known(graph.node_count(), 0);
    for (int i : kl) in_known[i] = 1;
    std::set<int> cand;
    for (int i : kl)
        for (const Graph::Arc& a : graph.out_neighbors(i))
            if (!in_known[a.node]) cand.insert(a.node);
    return {cand.begin(), cand.end()};
}

ArrivalField solve(const Graph& graph, const ProblemSpec& spec) {
    return run_solve(graph, spec, nullptr);
}

std::pair<ArrivalField, FrontTrace> solve_with_trace(const Graph& graph, const ProblemSpec& spec) {
    FrontTrace trace;
    ArrivalField field = run_solve(graph, spec, &trace);
    return {std::move(field), std::move(trace)};
}

int solver_thread_budget() {
    if (const char* env = std::getenv("FRONTPROP_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<ArrivalField> multi_source_solve(const Graph& graph,
                                             std::span<const ProblemSpec> specs) {
    std::vector<ArrivalField> results(specs.size());
    std::vector<std::exception_ptr> errors(specs.size());
    const int workers =
        std::min<int>(solver_thread_budget(), static_cast<int>(specs.size()));

    if (workers <= 1) {
        for (std::size_t k = 0; k < specs.size(); ++k) results[k] = solve(graph, specs[k]);
        return results;
    }

    std::atomic<std::size_t> next(0);
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= specs.size()) return;
            try {
                results[k] = solve(graph, specs[k]);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

}  // namespace fprop
