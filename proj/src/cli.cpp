#include "frontprop/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frontprop/euclid_graphs.hpp"
#include "frontprop/front_solver.hpp"
#include "frontprop/io.hpp"
#include "frontprop/labelprop.hpp"
#include "frontprop/local_update.hpp"
#include "frontprop/pathset_oracle.hpp"
#include "frontprop/trust.hpp"

namespace fprop {

namespace {

constexpr double kOracleTol = 1e-9;

void emit_error(const std::string& message) {
    nlohmann::json j;
    j["error"] = message;
    std::cerr << j.dump() << "\n";
}

double parse_p(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") return ProblemSpec::infinite_p;
    double p;
    try {
        p = std::stod(text);
    } catch (const std::exception&) {
        throw std::runtime_error("p must be a decimal number or 'inf'");
    }
    if (!(p >= 1.0)) throw std::runtime_error("p must be >= 1");
    return p;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

/// "id" or "id=value" tokens resolved through the id map.
std::vector<std::pair<int, double>> parse_boundary_list(const std::string& text,
                                                        const IdMap& ids) {
    std::vector<std::pair<int, double>> out;
    for (const std::string& token : split_list(text)) {
        const std::size_t eq = token.find('=');
        if (eq == std::string::npos) {
            out.emplace_back(ids.at(token), 0.0);
        } else {
            const std::string name = token.substr(0, eq);
            out.emplace_back(ids.at(name), std::stod(token.substr(eq + 1)));
        }
    }
    if (out.empty()) throw std::runtime_error("boundary list is empty");
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_text_file(path, content);
}

std::string format_value(double v) {
    if (std::isinf(v)) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// ----- solve ---------------------------------------------------------------

struct SolveArgs {
    std::string graph_file;
    std::string boundary;
    std::string p_text = "inf";
    double slowness = 1.0;
    std::string slowness_file;
    std::string out;
};

int cmd_solve(const SolveArgs& args) {
    ParsedGraph parsed = parse_edge_list(read_text_file(args.graph_file));
    const int n = parsed.graph.node_count();

    std::vector<double> slowness(n, args.slowness);
    if (!args.slowness_file.empty()) {
        // lines "node,s"
        const std::string text = read_text_file(args.slowness_file);
        std::stringstream ss{text};
        std::string line;
        while (std::getline(ss, line)) {
            if (line.empty() || line[0] == '#') continue;
            const std::size_t comma = line.find(',');
            if (comma == std::string::npos) throw std::runtime_error("bad slowness line: " + line);
            slowness[parsed.ids.at(line.substr(0, comma))] = std::stod(line.substr(comma + 1));
        }
    }
    ProblemSpec spec(n, parse_boundary_list(args.boundary, parsed.ids), slowness,
                     parse_p(args.p_text));

    const ValidationReport report = validate(parsed.graph, spec);
    if (!report.unreachable_interior.empty())
        std::cerr << "# warning: " << report.unreachable_interior.size()
                  << " interior node(s) unreachable, arrival time inf\n";

    const ArrivalField field = solve(parsed.graph, spec);
    write_output(args.out, write_arrival_csv(field, &parsed.ids));
    return 0;
}

// ----- oracle-check ---------------------------------------------------------

struct OracleArgs {
    std::string graph_file;
    std::string boundary;
    std::size_t max_paths = 64;
    std::size_t max_subsets = std::size_t{1} << 16;
};

int cmd_oracle_check(const OracleArgs& args) {
    ParsedGraph parsed = parse_edge_list(read_text_file(args.graph_file));
    const int n = parsed.graph.node_count();
    const auto boundary = parse_boundary_list(args.boundary, parsed.ids);

    const OracleCaps caps{args.max_paths, args.max_subsets};
    struct ModelPair {
        PathModel model;
        double p;
        const char* label;
    };
    const ModelPair pairs[] = {{PathModel::linf, ProblemSpec::infinite_p, "2(i) == 3(p=inf)"},
                               {PathModel::l2, 2.0, "2(ii) == 3(p=2)"},
                               {PathModel::l1, 1.0, "2(iii) == 3(p=1)"}};
    bool all_pass = true;

    for (const ModelPair& pair : pairs) {
        ProblemSpec spec(n, boundary, std::vector<double>(n, 1.0), pair.p);
        const ArrivalField field = solve(parsed.graph, spec);
        double max_dev = 0.0;
        for (int i = 0; i < n; ++i) {
            if (spec.is_boundary(i) || !field.reached(i)) continue;
            const double oracle = first_arrival(parsed.graph, spec, i, pair.model, caps);
            max_dev = std::max(max_dev, std::abs(oracle - field.time[i]));
        }
        const bool pass = max_dev <= kOracleTol;
        all_pass = all_pass && pass;
        std::cout << pair.label << ": " << (pass ? "PASS" : "FAIL") << " (max deviation "
                  << format_value(max_dev) << ")\n";
    }

    for (const double p : {1.0, 1.5, 2.0, 3.0, ProblemSpec::infinite_p}) {
        ProblemSpec spec(n, boundary, std::vector<double>(n, 1.0), p);
        const ArrivalField direct = solve(parsed.graph, spec);
        const ArrivalField iterated = value_iteration_solve(parsed.graph, spec, p);
        double max_dev = 0.0;
        for (int i = 0; i < n; ++i) {
            if (std::isinf(direct.time[i]) && std::isinf(iterated.time[i])) continue;
            max_dev = std::max(max_dev, std::abs(direct.time[i] - iterated.time[i]));
        }
        const bool pass = max_dev <= kOracleTol;
        all_pass = all_pass && pass;
        std::cout << "value-iteration == front-solver (p=" << format_value(p)
                  << "): " << (pass ? "PASS" : "FAIL") << " (max deviation "
                  << format_value(max_dev) << ")\n";
    }
    if (!all_pass) emit_error("oracle-check found a model disagreement");
    return all_pass ? 0 : 1;
}

// ----- grid-bench -----------------------------------------------------------

struct GridBenchArgs {
    std::string config_file;
    std::string out;
    std::string dump_dir;
};

int cmd_grid_bench(const GridBenchArgs& args) {
    const ExperimentConfig cfg = parse_experiment_config(read_text_file(args.config_file));
    const Box box{-1.0, 1.0, -1.0, 1.0};

    std::string csv = "grid,h,p,scale,probes,error\n";
    for (const std::string& grid : cfg.grids) {
        for (const double h : cfg.spacings) {
            EmbeddedGraph embed;
            double scale = cfg.scale_for(grid);
            if (grid == "uniform") {
                // sample size matched to the target spacing; the heuristic
                // scale sqrt(K/4) uses the measured mean degree
                const int count = std::max(16, static_cast<int>(std::lround(8.0 / (h * h))));
                embed = make_uniform_random(count, box, cfg.seed,
                                            WeightRule::inverse_distance());
                if (!cfg.scales.contains(grid))
                    scale = std::sqrt(static_cast<double>(embed.graph.edge_count()) /
                                      embed.node_count() / 4.0);
            } else {
                const GridKind kind = grid == "square"       ? GridKind::square
                                      : grid == "triangular" ? GridKind::triangular
                                                             : GridKind::hexagonal;
                embed = make_regular_grid(kind, h, box, WeightRule::constant(1.0 / h));
            }
            const int source = nearest_node(embed, 0.0, 0.0);
            ProblemSpec spec(embed.node_count(), std::vector<int>{source}, cfg.p);
            const ArrivalField field = solve(embed.graph, spec);
            const std::vector<int> probes =
                sample_probe_nodes(embed, box, cfg.margin, cfg.probe_count, cfg.seed);
            const double error = euclidean_error(field, embed, source, probes, scale);
            csv += grid + "," + format_value(h) + "," + format_value(cfg.p) + "," +
                   format_value(scale) + "," + std::to_string(cfg.probe_count) + "," +
                   format_value(error) + "\n";
            if (!args.dump_dir.empty()) {
                std::filesystem::create_directories(args.dump_dir);
                const std::string stem =
                    args.dump_dir + "/" + grid + "_h" + format_value(h);
                write_text_file(stem + "_edges.csv", write_edge_list(embed.graph));
                write_text_file(stem + "_coords.csv", write_coords_csv(embed.coords));
                write_text_file(stem + "_arrival.csv", write_arrival_csv(field));
            }
        }
    }
    write_output(args.out, csv);
    return 0;
}

// ----- trust-rank -----------------------------------------------------------

struct TrustRankArgs {
    std::string graph_file;
    std::string team;
    std::string candidates;
    std::string p_text = "1";
    std::string sybil;  // "target,size,rating"
    bool neighbor_avg = false;
    std::string out;
};

int cmd_trust_rank(const TrustRankArgs& args) {
    ParsedTrust parsed = parse_trust_edge_list(read_text_file(args.graph_file));
    const double p = parse_p(args.p_text);

    std::vector<int> team, candidates;
    for (const std::string& t : split_list(args.team)) team.push_back(parsed.ids.at(t));
    for (const std::string& c : split_list(args.candidates))
        candidates.push_back(parsed.ids.at(c));
    if (team.empty()) throw std::runtime_error("team list is empty");
    if (candidates.empty()) throw std::runtime_error("candidate list is empty");

    std::optional<TrustGraph> modified;
    const TrustGraph* tg = &parsed.trust;
    if (!args.sybil.empty()) {
        const std::vector<std::string> f = split_list(args.sybil);
        if (f.size() != 3) throw std::runtime_error("--sybil expects target,size,rating");
        modified = inject_sybil_cluster(parsed.trust, parsed.ids.at(f[0]), std::stoi(f[1]),
                                        std::stod(f[2]));
        tg = &*modified;
    }

    const Ranking ranking = rank_candidates(*tg, team, candidates, p);
    std::string csv = args.neighbor_avg ? "rank,candidate,score,neighbor_average\n"
                                        : "rank,candidate,score\n";
    for (const RankedCandidate& rc : ranking) {
        csv += std::to_string(rc.rank) + "," + parsed.ids.name(rc.node) + "," +
               format_value(rc.score);
        if (args.neighbor_avg) csv += "," + format_value(neighbor_average(*tg, rc.node));
        csv += "\n";
        if (rc.unreachable)
            std::cerr << "# warning: candidate " << parsed.ids.name(rc.node)
                      << " unreachable from the team\n";
    }
    write_output(args.out, csv);
    return 0;
}

// ----- classify --------------------------------------------------------------

struct ClassifyArgs {
    std::string points_file;
    std::string graph_file;
    std::string moons;  // "count,dim,variance,seed"
    std::string seeds_file;
    int random_seeds = 0;
    std::uint64_t draw_seed = 0;
    std::string p_text = "1";
    int k = 10;
    std::string weight = "zp_scaled";
    double scale = 500.0;
    std::string out;
};

int cmd_classify(const ClassifyArgs& args) {
    const double p = parse_p(args.p_text);

    PointCloud cloud;
    Graph graph;
    bool have_cloud = false;
    if (!args.moons.empty()) {
        const std::vector<std::string> f = split_list(args.moons);
        if (f.size() != 4) throw std::runtime_error("--two-moons expects count,dim,variance,seed");
        cloud = two_moons(std::stoi(f[0]), std::stoi(f[1]), std::stod(f[2]),
                          std::stoull(f[3]));
        have_cloud = true;
    } else if (!args.points_file.empty()) {
        cloud = parse_point_csv(read_text_file(args.points_file));
        have_cloud = true;
    }

    if (have_cloud) {
        KnnWeight kind;
        if (args.weight == "zp_scaled")
            kind = KnnWeight::zp_scaled;
        else if (args.weight == "inverse_distance")
            kind = KnnWeight::inverse_distance;
        else if (args.weight == "exp_scaled")
            kind = KnnWeight::exp_scaled;
        else if (args.weight == "exp_dmax_scaled")
            kind = KnnWeight::exp_dmax_scaled;
        else
            throw std::runtime_error("unknown weight kind '" + args.weight + "'");
        graph = knn_graph(cloud, args.k, kind, args.scale);
    } else if (!args.graph_file.empty()) {
        graph = parse_edge_list(read_text_file(args.graph_file)).graph;
    } else {
        throw std::runtime_error("classify needs --points, --two-moons or --graph");
    }
    const int n = graph.node_count();

    // seed sets: explicit file of "node,label" lines, or random draws from
    // the cloud's ground truth
    std::vector<std::vector<int>> sets;
    if (!args.seeds_file.empty()) {
        std::stringstream ss{read_text_file(args.seeds_file)};
        std::string line;
        std::map<int, std::vector<int>> by_label;
        while (std::getline(ss, line)) {
            if (line.empty() || line[0] == '#') continue;
            const std::size_t comma = line.find(',');
            if (comma == std::string::npos)
                throw std::runtime_error("bad seed line: " + line);
            by_label[std::stoi(line.substr(comma + 1))].push_back(
                std::stoi(line.substr(0, comma)));
        }
        for (auto& [label, nodes] : by_label) sets.push_back(std::move(nodes));
    } else if (args.random_seeds > 0) {
        if (!have_cloud || cloud.labels.empty())
            throw std::runtime_error("--random-seeds needs ground-truth labels");
        std::map<int, std::vector<int>> by_label;
        for (int i = 0; i < n; ++i) by_label[cloud.labels[i]].push_back(i);
        std::uint64_t state = seed_state(args.draw_seed);
        for (auto& [label, nodes] : by_label) {
            if (static_cast<int>(nodes.size()) < args.random_seeds)
                throw std::runtime_error("class too small for the requested seed count");
            // partial Fisher-Yates
            for (int t = 0; t < args.random_seeds; ++t) {
                const std::size_t r =
                    t + static_cast<std::size_t>(uniform01(state) * (nodes.size() - t));
                std::swap(nodes[t], nodes[r]);
            }
            nodes.resize(args.random_seeds);
            std::sort(nodes.begin(), nodes.end());
            sets.push_back(std::move(nodes));
        }
    } else {
        throw std::runtime_error("classify needs --seeds or --random-seeds");
    }

    const LabeledSeedSets seeds(n, sets);
    const Classification result = classify(graph, seeds, p);

    std::string csv = "node,label,tie,min_time\n";
    for (int i = 0; i < n; ++i)
        csv += std::to_string(i) + "," + std::to_string(result.label[i]) + "," +
               std::to_string(static_cast<int>(result.tie[i])) + "," +
               format_value(result.min_time[i]) + "\n";
    write_output(args.out, csv);

    if (have_cloud && !cloud.labels.empty()) {
        std::vector<int> seed_nodes;
        for (int i = 0; i < n; ++i)
            if (seeds.is_seed(i)) seed_nodes.push_back(i);
        std::cout << "accuracy," << format_value(accuracy(result.label, cloud.labels, seed_nodes))
                  << "\n";
    }
    return 0;
}

}  // namespace

int run_command(int argc, const char* const* argv) {
    CLI::App app{"information propagation on weighted directed graphs"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve_cmd = app.add_subcommand("solve", "front propagation on an edge-list graph");
    solve_cmd->add_option("--graph", solve_args.graph_file, "edge list CSV")->required();
    solve_cmd->add_option("--boundary", solve_args.boundary, "boundary ids, id or id=value")
        ->required();
    solve_cmd->add_option("--p", solve_args.p_text, "model exponent, decimal or 'inf'");
    solve_cmd->add_option("--slowness", solve_args.slowness, "uniform slowness value");
    solve_cmd->add_option("--slowness-file", solve_args.slowness_file, "per-node slowness CSV");
    solve_cmd->add_option("--out", solve_args.out, "arrival CSV path (default stdout)");

    OracleArgs oracle_args;
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle-check", "brute-force model equivalence report");
    oracle_cmd->add_option("--graph", oracle_args.graph_file, "edge list CSV")->required();
    oracle_cmd->add_option("--boundary", oracle_args.boundary, "boundary ids")->required();
    oracle_cmd->add_option("--max-paths", oracle_args.max_paths, "simple path cap");
    oracle_cmd->add_option("--max-subsets", oracle_args.max_subsets, "path set cap");

    GridBenchArgs bench_args;
    CLI::App* bench_cmd =
        app.add_subcommand("grid-bench", "Euclidean grid convergence benchmark");
    bench_cmd->add_option("--config", bench_args.config_file, "JSON experiment config")
        ->required();
    bench_cmd->add_option("--out", bench_args.out, "error table CSV path (default stdout)");
    bench_cmd->add_option("--dump-dir", bench_args.dump_dir,
                          "also write per-grid edge/coordinate/arrival CSV files here");

    TrustRankArgs trust_args;
    CLI::App* trust_cmd = app.add_subcommand("trust-rank", "distrust propagation ranking");
    trust_cmd->add_option("--graph", trust_args.graph_file, "trust edge list")->required();
    trust_cmd->add_option("--team", trust_args.team, "team node ids")->required();
    trust_cmd->add_option("--candidates", trust_args.candidates, "candidate node ids")
        ->required();
    trust_cmd->add_option("--p", trust_args.p_text, "model exponent");
    trust_cmd->add_option("--sybil", trust_args.sybil, "inject cluster: target,size,rating");
    trust_cmd->add_flag("--neighbor-average", trust_args.neighbor_avg,
                        "add the neighbor-average baseline column");
    trust_cmd->add_option("--out", trust_args.out, "ranking CSV path (default stdout)");

    ClassifyArgs classify_args;
    CLI::App* classify_cmd =
        app.add_subcommand("classify", "semi-supervised labeling by competing fronts");
    classify_cmd->add_option("--points", classify_args.points_file, "point cloud CSV");
    classify_cmd->add_option("--graph", classify_args.graph_file, "precomputed edge list");
    classify_cmd->add_option("--two-moons", classify_args.moons,
                             "generate two moons: count,dim,variance,seed");
    classify_cmd->add_option("--seeds", classify_args.seeds_file, "seed file, node,label lines");
    classify_cmd->add_option("--random-seeds", classify_args.random_seeds,
                             "random seeds per class from ground truth");
    classify_cmd->add_option("--draw-seed", classify_args.draw_seed, "seed for the random draw");
    classify_cmd->add_option("--p", classify_args.p_text, "model exponent");
    classify_cmd->add_option("--k", classify_args.k, "nearest neighbor count");
    classify_cmd->add_option("--weight", classify_args.weight,
                             "zp_scaled|inverse_distance|exp_scaled|exp_dmax_scaled");
    classify_cmd->add_option("--scale", classify_args.scale, "constant for exp-scaled weights");
    classify_cmd->add_option("--out", classify_args.out, "label CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        emit_error(std::string("usage: ") + e.what());
        return 2;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(solve_args);
        if (oracle_cmd->parsed()) return cmd_oracle_check(oracle_args);
        if (bench_cmd->parsed()) return cmd_grid_bench(bench_args);
        if (trust_cmd->parsed()) return cmd_trust_rank(trust_args);
        if (classify_cmd->parsed()) return cmd_classify(classify_args);
    } catch (const std::exception& e) {
        emit_error(e.what());
        return 1;
    }
    emit_error("usage: no subcommand given");
    return 2;
}

int run_command(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("frontprop");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_command(static_cast<int>(argv.size()), argv.data());
}

}  // namespace fprop
