#include "frontprop/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fprop {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

bool parse_double(std::string_view s, double& out) {
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

[[noreturn]] void line_error(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": " + what);
}

/// Calls fn(line_number, fields) for each data line. A leading line whose
/// third field `is_value` rejects is taken as the optional header.
template <typename IsValue, typename Fn>
void for_edge_lines(std::string_view text, IsValue&& is_value, Fn&& fn) {
    std::size_t line_no = 0;
    bool saw_data = false;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        std::vector<std::string_view> fields = split(stripped, ',');
        if (fields.size() != 3)
            line_error(line_no, "expected 'src,dst,weight', got '" + std::string(stripped) + "'");
        if (!saw_data && !is_value(fields[2])) continue;  // header
        saw_data = true;
        fn(line_no, fields);
    }
}

bool numeric_field(std::string_view s) {
    double v;
    return parse_double(s, v);
}

std::string format_time(double t) {
    if (std::isinf(t)) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", t);
    return buf;
}

}  // namespace

int IdMap::intern(std::string_view name) {
    auto it = index_.find(std::string(name));
    if (it != index_.end()) return it->second;
    const int id = static_cast<int>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
}

int IdMap::at(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        throw std::invalid_argument("unknown node id '" + std::string(name) + "'");
    return it->second;
}

ParsedGraph parse_edge_list(std::string_view text) {
    ParsedGraph out;
    std::vector<EdgeSpec> edges;
    std::set<std::pair<int, int>> seen;
    for_edge_lines(text, numeric_field,
                   [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        double w;
        if (!parse_double(f[2], w)) line_error(line_no, "bad weight '" + std::string(f[2]) + "'");
        if (!(w > 0.0)) line_error(line_no, "nonpositive weight " + std::string(f[2]));
        const int src = out.ids.intern(f[0]);
        const int dst = out.ids.intern(f[1]);
        if (src == dst) line_error(line_no, "self-loop at '" + std::string(f[0]) + "'");
        if (!seen.emplace(src, dst).second)
            line_error(line_no, "duplicate edge " + std::string(f[0]) + "," + std::string(f[1]));
        edges.push_back({src, dst, w});
    });
    if (edges.empty()) throw std::runtime_error("edge list is empty");
    out.graph = Graph::from_edges(edges, out.ids.size());
    return out;
}

const TrustCategoryMap& default_trust_categories() {
    static const TrustCategoryMap map = {
        {"observer", 0.4}, {"apprentice", 0.6}, {"journeyer", 0.8}, {"master", 1.0}};
    return map;
}

ParsedTrust parse_trust_edge_list(std::string_view text, const TrustCategoryMap& categories) {
    IdMap ids;
    std::vector<EdgeSpec> edges;
    std::set<std::pair<int, int>> seen;
    auto is_rating = [&](std::string_view s) {
        return numeric_field(s) || categories.contains(s);
    };
    for_edge_lines(text, is_rating,
                   [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        double rating;
        if (!parse_double(f[2], rating)) {
            auto it = categories.find(f[2]);
            if (it == categories.end())
                line_error(line_no, "unknown trust category '" + std::string(f[2]) + "'");
            rating = it->second;
        }
        if (!(rating > 0.0) || rating > 1.0)
            line_error(line_no, "trust rating must lie in (0, 1]");
        const int src = ids.intern(f[0]);
        const int dst = ids.intern(f[1]);
        if (src == dst) line_error(line_no, "self-rating at '" + std::string(f[0]) + "'");
        if (!seen.emplace(src, dst).second)
            line_error(line_no, "duplicate rating " + std::string(f[0]) + "," + std::string(f[1]));
        edges.push_back({src, dst, rating});
    });
    if (edges.empty()) throw std::runtime_error("trust edge list is empty");
    return {TrustGraph(ids.size(), edges), std::move(ids)};
}

std::string write_edge_list(const Graph& graph, const IdMap* ids) {
    std::string out = "src,dst,weight\n";
    for (int i = 0; i < graph.node_count(); ++i) {
        for (const Graph::Arc& a : graph.in_neighbors(i)) {
            if (ids)
                out += ids->name(a.node) + "," + ids->name(i);
            else
                out += std::to_string(a.node) + "," + std::to_string(i);
            out += ',';
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", a.weight);
            out += buf;
            out += '\n';
        }
    }
    return out;
}

std::string write_coords_csv(std::span<const std::array<double, 2>> coords) {
    std::string out = "node,x,y\n";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g\n", i, coords[i][0], coords[i][1]);
        out += buf;
    }
    return out;
}

std::string write_arrival_csv(const ArrivalField& field, const IdMap* ids) {
    std::string out = "node,arrival_time,front_index\n";
    for (int i = 0; i < field.node_count(); ++i) {
        if (ids)
            out += ids->name(i);
        else
            out += std::to_string(i);
        out += ',';
        out += format_time(field.time[i]);
        out += ',';
        out += std::to_string(field.front_index[i]);
        out += '\n';
    }
    return out;
}

ArrivalField parse_arrival_csv(std::string_view text) {
    ArrivalField field;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool header_done = false;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        const bool last = end == text.size();
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::string_view stripped = trim(line);
        if (stripped.empty()) {
            if (last) break;
            continue;
        }
        if (!header_done) {
            header_done = true;
            if (stripped != "node,arrival_time,front_index")
                line_error(line_no, "expected arrival CSV header");
            continue;
        }
        std::vector<std::string_view> f = split(stripped, ',');
        if (f.size() != 3) line_error(line_no, "expected 'node,arrival_time,front_index'");
        // numeric node ids must be dense and sorted; named ids are taken
        // positionally (rows are written in dense id order)
        double node_d;
        if (parse_double(f[0], node_d) &&
            (node_d != std::floor(node_d) ||
             static_cast<int>(node_d) != static_cast<int>(field.time.size())))
            line_error(line_no, "rows must be sorted by node id without gaps");
        double t;
        if (f[1] == "inf")
            t = std::numeric_limits<double>::infinity();
        else if (!parse_double(f[1], t))
            line_error(line_no, "bad arrival time '" + std::string(f[1]) + "'");
        double idx_d;
        if (!parse_double(f[2], idx_d)) line_error(line_no, "bad front index");
        const int idx = static_cast<int>(idx_d);
        if ((idx < 0) != std::isinf(t))
            line_error(line_no, "front index -1 must pair with time inf");
        field.time.push_back(t);
        field.front_index.push_back(idx);
        if (last) break;
    }
    if (field.time.empty()) throw std::runtime_error("arrival CSV has no rows");

    int max_front = -1;
    for (int idx : field.front_index) max_front = std::max(max_front, idx);
    field.front_values.assign(max_front + 1, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < field.time.size(); ++i)
        if (field.front_index[i] >= 0)
            field.front_values[field.front_index[i]] =
                std::min(field.front_values[field.front_index[i]], field.time[i]);
    for (std::size_t k = 0; k < field.front_values.size(); ++k) {
        if (std::isinf(field.front_values[k]))
            throw std::runtime_error("front index " + std::to_string(k) + " has no nodes");
        if (k > 0 && !(field.front_values[k] > field.front_values[k - 1]))
            throw std::runtime_error("front values are not increasing");
    }
    return field;
}

PointCloud parse_point_csv(std::string_view text) {
    PointCloud cloud;
    bool labeled = false;
    bool first = true;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        const bool last = end == text.size();
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            if (last) break;
            continue;
        }
        std::vector<std::string_view> f = split(stripped, ',');
        if (first) {
            first = false;
            double probe;
            if (!parse_double(f[0], probe)) {  // header row
                labeled = !f.empty() && f.back() == "label";
                cloud.dim = static_cast<int>(f.size()) - (labeled ? 1 : 0);
                if (cloud.dim < 1) line_error(line_no, "header has no coordinate columns");
                continue;
            }
            cloud.dim = static_cast<int>(f.size());
        }
        const std::size_t want = static_cast<std::size_t>(cloud.dim) + (labeled ? 1 : 0);
        if (f.size() != want)
            line_error(line_no, "expected " + std::to_string(want) + " fields");
        for (int k = 0; k < cloud.dim; ++k) {
            double v;
            if (!parse_double(f[k], v)) line_error(line_no, "bad coordinate");
            cloud.data.push_back(v);
        }
        if (labeled) {
            double v;
            if (!parse_double(f.back(), v) || v != std::floor(v))
                line_error(line_no, "bad label");
            cloud.labels.push_back(static_cast<int>(v));
        }
        if (last) break;
    }
    if (cloud.data.empty()) throw std::runtime_error("point CSV has no rows");
    return cloud;
}

double ExperimentConfig::scale_for(const std::string& grid) const {
    if (auto it = scales.find(grid); it != scales.end()) return it->second;
    if (grid == "square") return 1.0;
    if (grid == "triangular") return std::sqrt(3.0 / 4.0);
    if (grid == "hexagonal") return std::sqrt(6.0 / 4.0);
    return 1.0;
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("config must be a JSON object");

    static const std::set<std::string> known = {"grids", "h",      "p",     "probes",
                                                "margin", "seed",  "scales"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.contains(key)) throw std::runtime_error("unknown config key '" + key + "'");
    }

    ExperimentConfig cfg;
    if (j.contains("grids")) {
        cfg.grids.clear();
        for (const auto& g : j.at("grids")) {
            const std::string name = g.get<std::string>();
            if (name != "square" && name != "triangular" && name != "hexagonal" &&
                name != "uniform")
                throw std::runtime_error("unknown grid '" + name + "' in config");
            cfg.grids.push_back(name);
        }
        if (cfg.grids.empty()) throw std::runtime_error("config grids list is empty");
    }
    if (j.contains("h")) {
        cfg.spacings.clear();
        for (const auto& h : j.at("h")) {
            const double v = h.get<double>();
            if (!(v > 0.0)) throw std::runtime_error("config h values must be > 0");
            cfg.spacings.push_back(v);
        }
        if (cfg.spacings.empty()) throw std::runtime_error("config h list is empty");
    }
    if (j.contains("p")) {
        if (j.at("p").is_string()) {
            if (j.at("p").get<std::string>() != "inf")
                throw std::runtime_error("config p must be a number >= 1 or \"inf\"");
            cfg.p = ProblemSpec::infinite_p;
        } else {
            cfg.p = j.at("p").get<double>();
        }
        if (!(cfg.p >= 1.0)) throw std::runtime_error("config p must be >= 1");
    }
    if (j.contains("probes")) {
        cfg.probe_count = j.at("probes").get<int>();
        if (cfg.probe_count < 1) throw std::runtime_error("config probes must be >= 1");
    }
    if (j.contains("margin")) cfg.margin = j.at("margin").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("scales")) {
        for (const auto& [grid, c] : j.at("scales").items())
            cfg.scales[grid] = c.get<double>();
    }
    return cfg;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("short write to '" + path + "'");
}

}  // namespace fprop
