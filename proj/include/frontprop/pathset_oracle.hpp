#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "frontprop/front_solver.hpp"
#include "frontprop/graph.hpp"

namespace fprop {

/// Simple directed path as its node list (source first). All nodes distinct,
/// consecutive pairs are edges.
using Path = std::vector<int>;

/// Nonempty set of simple paths sharing source and target, kept sorted for
/// canonical identity.
using PathSet = std::vector<Path>;

/// Which recursive travel-time formula evaluates a path set; each is the
/// path-set counterpart of the local update with the matching norm.
enum class PathModel {
    linf,  // min over last edges of T + s/w
    l2,    // mu + sqrt(s^2/z - sigma^2) over the penultimate truncations
    l1,    // (sum w T + s) / sum w over the penultimate truncations
};

/// Thrown when an enumeration or subset sweep would exceed its cap.
struct OracleScaleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleCaps {
    std::size_t max_paths = 64;
    std::size_t max_subsets = std::size_t{1} << 16;
};

/// All simple directed paths from `from` to `to`, sorted canonically.
/// Throws OracleScaleError when more than `cap` paths exist.
std::vector<Path> enumerate_simple_paths(const Graph& graph, int from, int to, std::size_t cap);

/// Decomposition of a path set by its last edge: for every penultimate node j
/// the sub-path-set P^i_j = {p : (p,(j,i)) in ps}. A length-1 path (x0,i)
/// truncates to the trivial path (x0). The union over j reconstructs ps.
std::map<int, PathSet> penultimate_truncation(const PathSet& ps);

/// Recursive generalized travel time of path sets, memoized on canonical
/// sets. Grounded at trivial paths with the prescribed boundary value of the
/// source (0 by default); sources need not be boundary nodes, in which case
/// the base value is 0. Returns NaN where the formula has no valid reading:
/// a negative l2 discriminant, an averaged value below one of its own
/// truncation times (the upwind assumption of the averaging models), or any
/// undefined truncation.
class TravelTimeEvaluator {
public:
    TravelTimeEvaluator(const Graph& graph, const ProblemSpec& spec, PathModel model);

    double travel_time(const PathSet& ps);

private:
    const Graph& graph_;
    const ProblemSpec& spec_;
    PathModel model_;
    std::map<PathSet, double> memo_;
};

/// One-shot travel time of a path set.
double travel_time(const Graph& graph, const ProblemSpec& spec, const PathSet& ps,
                   PathModel model);

/// First arrival time at `node`: minimum of travel_time over every boundary
/// source x0 and every nonempty subset of the simple paths x0 -> node.
/// Sets on which the model is undefined are skipped. Throws OracleScaleError
/// when a (x0, node) pair exceeds the caps, std::invalid_argument when `node`
/// is a boundary node or no path reaches it.
double first_arrival(const Graph& graph, const ProblemSpec& spec, int node, PathModel model,
                     OracleCaps caps = {});

/// Second independent oracle: Jacobi value iteration of the positive-part
/// local solve from u = +inf (boundary pinned) until the largest change is
/// <= 1e-12. Throws std::runtime_error when not converged within
/// node_count * (edge_count + 1) sweeps.
ArrivalField value_iteration_solve(const Graph& graph, const ProblemSpec& spec, double p);

}  // namespace fprop
