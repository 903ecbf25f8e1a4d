#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "frontprop/front_solver.hpp"
#include "frontprop/graph.hpp"
#include "frontprop/labelprop.hpp"
#include "frontprop/trust.hpp"

namespace fprop {

/// External string ids mapped to dense node ids in first-appearance order.
class IdMap {
public:
    int intern(std::string_view name);
    /// Throws when the name is unknown.
    int at(std::string_view name) const;
    bool contains(std::string_view name) const { return index_.contains(std::string(name)); }
    const std::string& name(int id) const { return names_.at(id); }
    int size() const { return static_cast<int>(names_.size()); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

struct ParsedGraph {
    Graph graph;
    IdMap ids;
};

/// Lines "src,dst,weight" (header optional, '#' comments, LF or CRLF).
/// Node ids are arbitrary strings, interned in first-appearance order.
/// Malformed lines, nonpositive weights and duplicate edges report the
/// offending line number.
ParsedGraph parse_edge_list(std::string_view text);

/// Category-to-rating table for trust files whose third field is symbolic.
using TrustCategoryMap = std::map<std::string, double, std::less<>>;
const TrustCategoryMap& default_trust_categories();  // observer/apprentice/journeyer/master

struct ParsedTrust {
    TrustGraph trust;
    IdMap ids;
};

/// Edge-list parse where the third field is a rating in (0, 1] or a category
/// name resolved through `categories`.
ParsedTrust parse_trust_edge_list(std::string_view text,
                                  const TrustCategoryMap& categories = default_trust_categories());

/// "src,dst,weight" lines in (dst, src) storage order; parse_edge_list of
/// the output rebuilds an identical graph. `ids` substitutes external names.
std::string write_edge_list(const Graph& graph, const IdMap* ids = nullptr);

/// "node,x,y" rows for an embedded graph's coordinates.
std::string write_coords_csv(std::span<const std::array<double, 2>> coords);

/// "node,arrival_time,front_index" rows sorted by node id, times printed
/// with 12 significant digits, +inf as "inf", front index -1 for unreached
/// nodes. `ids` substitutes external names in the node column.
std::string write_arrival_csv(const ArrivalField& field, const IdMap* ids = nullptr);

/// Inverse of write_arrival_csv for dense integer node columns; front values
/// are rebuilt from the (front_index, time) pairs.
ArrivalField parse_arrival_csv(std::string_view text);

/// Row per point: coordinates, optionally a trailing label column announced
/// by a header whose last field is "label".
PointCloud parse_point_csv(std::string_view text);

/// Grid benchmark configuration (JSON). Unknown keys are rejected at every
/// level; all randomness is seeded here.
struct ExperimentConfig {
    std::vector<std::string> grids = {"square", "triangular", "hexagonal"};
    std::vector<double> spacings = {0.08, 0.04, 0.02, 0.01};
    double p = 2.0;
    int probe_count = 10;
    double margin = 0.1;
    std::uint64_t seed = 7;
    std::map<std::string, double> scales;  // defaults: S 1, T sqrt(3/4), H sqrt(6/4)

    double scale_for(const std::string& grid) const;
};

ExperimentConfig parse_experiment_config(std::string_view json_text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace fprop
