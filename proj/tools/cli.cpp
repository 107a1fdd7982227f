#include "cli.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gbcdeploy/centrality.hpp"
#include "gbcdeploy/errors.hpp"
#include "gbcdeploy/evolution.hpp"
#include "gbcdeploy/graph.hpp"
#include "gbcdeploy/oracle.hpp"
#include "gbcdeploy/placement.hpp"
#include "gbcdeploy/shortest_paths.hpp"
#include "json_out.hpp"

namespace gbcdeploy::cli {

using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::invalid_argument, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

bool looks_inline(const std::string& text) {
    if (text.empty()) return true;
    return text.find_first_not_of("0123456789,") == std::string::npos;
}

std::int64_t parse_int(const std::string& tok, const std::string& what) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        raise(errc::invalid_argument, "bad " + what + ": '" + tok + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

struct GraphInput {
    Graph graph;
    std::string path;
    std::string digest;
};

GraphInput load_graph(const std::string& path) {
    const std::string bytes = read_file(path);
    std::istringstream in(bytes);
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return {parse_edge_list(in), path, hex};
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("GBC_DEPLOY_THREADS")) {
        const std::string s(env);
        if (!s.empty()) {
            const auto v = parse_int(s, "GBC_DEPLOY_THREADS");
            if (v >= 1 && v <= 1024) return static_cast<int>(v);
            raise(errc::invalid_argument, "GBC_DEPLOY_THREADS out of range");
        }
    }
    return 1;
}

ordered_json make_manifest(const std::string& command, ordered_json parameters,
                           const std::vector<GraphInput*>& inputs,
                           const std::vector<std::uint64_t>& seeds, int threads) {
    ordered_json m;
    m["command"] = command;
    m["version"] = kVersion;
    m["parameters"] = std::move(parameters);
    m["inputs"] = ordered_json::array();
    for (const auto* g : inputs)
        m["inputs"].push_back({{"path", g->path}, {"fnv1a64", g->digest}});
    m["seeds"] = seeds;
    m["threads"] = threads;
    return m;
}

void emit(std::ostream& out, const ordered_json& manifest, const ordered_json& result) {
    ordered_json doc;
    doc["manifest"] = manifest;
    doc["result"] = result;
    print_stable(doc, out);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) raise(errc::invalid_argument, "cannot write " + path);
    return f;
}

// ---------------------------------------------------------------- compute --

struct ComputeOpts {
    std::string graph;
    std::optional<std::int64_t> bc;
    std::optional<std::string> gbc;
    std::optional<std::string> pb;
    int threads = 0;
};

int cmd_compute(const ComputeOpts& o, std::ostream& out) {
    const int given = o.bc.has_value() + o.gbc.has_value() + o.pb.has_value();
    if (given != 1)
        raise(errc::invalid_argument, "exactly one of --bc/--gbc/--pb required");
    const int threads = resolve_threads(o.threads);

    GraphInput gi = load_graph(o.graph);
    const NodeId n = gi.graph.node_count();
    const ShortestPathData spd = all_pairs(gi.graph, threads);
    const double pairs = static_cast<double>(n) * (n - 1);

    std::string measure;
    std::vector<NodeId> nodes;
    double value = 0.0;
    if (o.bc) {
        measure = "bc";
        nodes = {static_cast<NodeId>(*o.bc)};
        if (nodes[0] < 0 || nodes[0] >= n) raise(errc::invalid_argument, "--bc node out of range");
        value = betweenness(spd, nodes[0]);
    } else if (o.gbc) {
        measure = "gbc";
        nodes = parse_node_set(*o.gbc);
        NodeGroup grp{nodes};
        grp.validate(n);
        value = group_betweenness_direct(gi.graph, spd, grp);
    } else {
        measure = "pb";
        nodes = parse_node_set(*o.pb);
        if (nodes.size() != 2) raise(errc::invalid_argument, "--pb expects X,Y");
        if (nodes[0] < 0 || nodes[1] < 0 || nodes[0] >= n || nodes[1] >= n)
            raise(errc::invalid_argument, "--pb node out of range");
        value = path_betweenness_pair(spd, nodes[0], nodes[1]);
    }

    ordered_json params;
    params["graph"] = o.graph;
    params["measure"] = measure;
    params["nodes"] = nodes;

    ordered_json result;
    result["n"] = n;
    result["m"] = gi.graph.edge_count();
    result["measure"] = measure;
    result["nodes"] = nodes;
    result["value"] = value;
    result["coverage"] = pairs > 0 ? value / pairs : 0.0;

    emit(out, make_manifest("compute", std::move(params), {&gi}, {}, threads), result);
    return kExitOk;
}

// ------------------------------------------------------------------ place --

struct PlaceOpts {
    std::string graph;
    std::string deployed;
    std::string candidates = "all";
    std::optional<int> k;
    std::optional<double> coverage;
    std::string csv;
    int threads = 0;
};

std::vector<NodeId> resolve_candidates(const std::string& spec, NodeId n,
                                       const std::vector<NodeId>& deployed) {
    if (spec == "all") {
        std::vector<char> is_dep(n, 0);
        for (NodeId v : deployed) {
            if (v < 0 || v >= n) raise(errc::invalid_argument, "deployed node out of range");
            is_dep[v] = 1;
        }
        std::vector<NodeId> out;
        for (NodeId v = 0; v < n; ++v)
            if (!is_dep[v]) out.push_back(v);
        return out;
    }
    return parse_node_set(spec);
}

ordered_json placement_json(const PlacementResult& r, const GraphInput& gi) {
    ordered_json result;
    result["n"] = gi.graph.node_count();
    result["m"] = gi.graph.edge_count();
    result["picks"] = r.picks;
    result["marginal"] = r.marginal;
    result["gbc_initial"] = r.gbc_initial;
    result["gbc_final"] = r.gbc_final;
    result["coverage_initial"] = r.coverage_initial;
    result["coverage_final"] = r.coverage_final;
    if (r.coverage_target) {
        result["coverage_target"] = *r.coverage_target;
        result["target_met"] = r.target_met;
    }
    return result;
}

void write_place_csv(const std::string& path, const PlacementResult& r, NodeId n) {
    auto f = open_out(path);
    const double pairs = static_cast<double>(n) * (n - 1);
    f << "pick_index,node,marginal,gbc_after,coverage_after\n";
    double gbc = r.gbc_initial;
    for (std::size_t i = 0; i < r.picks.size(); ++i) {
        gbc += r.marginal[i];
        f << i + 1 << ',' << r.picks[i] << ',' << format_double(r.marginal[i]) << ','
          << format_double(gbc) << ',' << format_double(pairs > 0 ? gbc / pairs : 0.0)
          << '\n';
    }
}

int cmd_place(const PlaceOpts& o, std::ostream& out) {
    if (o.k.has_value() == o.coverage.has_value())
        raise(errc::invalid_argument, "exactly one of -k/--coverage required");
    const int threads = resolve_threads(o.threads);

    GraphInput gi = load_graph(o.graph);
    const NodeId n = gi.graph.node_count();
    const auto deployed = parse_node_set(o.deployed);
    const auto candidates = resolve_candidates(o.candidates, n, deployed);

    PlacementResult res;
    if (o.k) {
        auto problem = DeploymentProblem::with_budget(gi.graph, deployed, candidates, *o.k);
        res = two_phase_place(problem, threads);
    } else {
        auto problem =
            DeploymentProblem::with_coverage(gi.graph, deployed, candidates, *o.coverage);
        res = place_to_coverage(problem, threads);
    }

    ordered_json params;
    params["graph"] = o.graph;
    params["deployed"] = deployed;
    params["candidates"] = o.candidates;
    if (o.k) params["k"] = *o.k;
    if (o.coverage) params["coverage"] = *o.coverage;
    if (!o.csv.empty()) params["csv"] = o.csv;

    if (!o.csv.empty()) write_place_csv(o.csv, res, n);
    emit(out, make_manifest("place", std::move(params), {&gi}, {}, threads),
         placement_json(res, gi));
    return kExitOk;
}

// ----------------------------------------------------------------- oracle --

struct OracleOpts {
    std::string graph;
    std::string deployed;
    std::string candidates = "all";
    int k = 0;
    int threads = 0;
};

int cmd_oracle(const OracleOpts& o, std::ostream& out) {
    const int threads = resolve_threads(o.threads);
    GraphInput gi = load_graph(o.graph);
    const NodeId n = gi.graph.node_count();
    const auto deployed = parse_node_set(o.deployed);
    const auto candidates = resolve_candidates(o.candidates, n, deployed);

    auto problem = DeploymentProblem::with_budget(gi.graph, deployed, candidates, o.k);
    const RatioCheck rc = approx_ratio_check(problem);

    ordered_json params;
    params["graph"] = o.graph;
    params["deployed"] = deployed;
    params["candidates"] = o.candidates;
    params["k"] = o.k;

    ordered_json result;
    result["n"] = n;
    result["m"] = gi.graph.edge_count();
    result["k"] = o.k;
    result["greedy_value"] = rc.greedy_value;
    result["opt_value"] = rc.opt_value;
    result["ratio"] = rc.ratio;
    result["bound"] = rc.bound;
    result["subsets_evaluated"] = rc.evaluated;
    result["verdict"] = rc.pass ? "PASS" : "FAIL";

    emit(out, make_manifest("oracle", std::move(params), {&gi}, {}, threads), result);
    return rc.pass ? kExitOk : kExitViolation;
}

// ----------------------------------------------------------------- evolve --

struct EvolveOpts {
    std::string m_attach = "2";
    int from = 100;
    int to = 1000;
    int step = 100;
    std::string seeds = "1";
    double coverage = 0.95;
    std::string out_path;
    std::string summary_path;
    bool progress = false;
    int threads = 0;
};

int cmd_evolve(const EvolveOpts& o, std::ostream& out, std::ostream& err) {
    const int threads = resolve_threads(o.threads);
    const auto seeds = parse_seed_list(o.seeds);
    std::vector<int> m_values;
    for (const auto& tok : split(o.m_attach, ','))
        m_values.push_back(static_cast<int>(parse_int(tok, "m-attach")));

    std::vector<EvolutionRecord> records;
    for (int m : m_values) {
        EvolutionConfig cfg;
        cfg.m_attach = m;
        cfg.n_start = o.from;
        cfg.n_end = o.to;
        cfg.n_step = o.step;
        cfg.coverage_target = o.coverage;
        cfg.seeds = seeds;
        cfg.threads = threads;
        ProgressFn fn;
        if (o.progress)
            fn = [&](std::uint64_t seed, NodeId n) {
                err << "m=" << m << " seed=" << seed << " n=" << n << " done\n";
            };
        auto part = run_evolution_experiment(cfg, fn);
        records.insert(records.end(), part.begin(), part.end());
    }
    const EvolutionSummary summary = summarize(records);

    {
        auto f = open_out(o.out_path);
        write_records_csv(f, records);
    }
    {
        auto f = open_out(o.summary_path);
        write_summary_csv(f, summary);
    }

    ordered_json params;
    params["m_attach"] = m_values;
    params["from"] = o.from;
    params["to"] = o.to;
    params["step"] = o.step;
    params["coverage"] = o.coverage;
    params["out"] = o.out_path;
    params["summary"] = o.summary_path;

    ordered_json result;
    result["records"] = records.size();
    result["mean_penalty_abs"] = summary.overall.mean_penalty_abs;
    result["max_penalty_abs"] = summary.overall.max_penalty_abs;
    result["mean_penalty_rel"] = summary.overall.mean_penalty_rel;
    result["max_penalty_rel"] = summary.overall.max_penalty_rel;
    result["records_csv"] = o.out_path;
    result["summary_csv"] = o.summary_path;

    emit(out, make_manifest("evolve", std::move(params), {}, seeds, threads), result);
    return kExitOk;
}

// ---------------------------------------------------------------- relabel --

struct RelabelOpts {
    std::string graph;
    std::string out_path;
    std::string map_path;
};

int cmd_relabel(const RelabelOpts& o, std::ostream& out) {
    const std::string bytes = read_file(o.graph);
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    std::istringstream in(bytes);
    auto [graph, mapping] = relabel_edge_list(in);

    {
        auto f = open_out(o.out_path);
        f << "# relabeled from " << o.graph << '\n';
        for (auto [u, v] : graph.edges()) f << u << ' ' << v << '\n';
    }
    {
        auto f = open_out(o.map_path);
        f << "old_id,new_id\n";
        for (auto [old_id, new_id] : mapping) f << old_id << ',' << new_id << '\n';
    }

    ordered_json params;
    params["graph"] = o.graph;
    params["out"] = o.out_path;
    params["map"] = o.map_path;

    GraphInput gi{std::move(graph), o.graph, hex};
    ordered_json result;
    result["n"] = gi.graph.node_count();
    result["m"] = gi.graph.edge_count();
    result["mapping_entries"] = mapping.size();
    result["out"] = o.out_path;
    result["map"] = o.map_path;

    emit(out, make_manifest("relabel", std::move(params), {&gi}, {}, 1), result);
    return kExitOk;
}

} // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    for (const auto& tok : split(text, ',')) {
        const auto dots = tok.find("..");
        if (dots == std::string::npos) {
            seeds.push_back(static_cast<std::uint64_t>(parse_int(tok, "seed")));
            continue;
        }
        const auto lo = parse_int(tok.substr(0, dots), "seed range");
        const auto hi = parse_int(tok.substr(dots + 2), "seed range");
        if (hi < lo || hi - lo > 1'000'000)
            raise(errc::invalid_argument, "bad seed range '" + tok + "'");
        for (std::int64_t s = lo; s <= hi; ++s)
            seeds.push_back(static_cast<std::uint64_t>(s));
    }
    if (seeds.empty()) raise(errc::invalid_argument, "empty seed list");
    return seeds;
}

std::vector<std::int32_t> parse_node_set(const std::string& text) {
    std::vector<std::int32_t> out;
    if (text.empty()) return out;
    if (looks_inline(text)) {
        for (const auto& tok : split(text, ',')) {
            if (tok.empty()) continue;  // tolerate trailing comma
            out.push_back(static_cast<std::int32_t>(parse_int(tok, "node id")));
        }
        return out;
    }
    // treat as file: one id per line, '#' comments
    std::istringstream in(read_file(text));
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto pos = line.find_first_not_of(" \t");
        if (pos == std::string::npos || line[pos] == '#') continue;
        const auto end = line.find_last_not_of(" \t");
        out.push_back(
            static_cast<std::int32_t>(parse_int(line.substr(pos, end - pos + 1), "node id")));
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Greedy monitor placement on shortest-path networks"};
    app.require_subcommand(1);

    ComputeOpts co;
    auto* compute = app.add_subcommand("compute", "Betweenness / group / pair measures");
    compute->add_option("--graph", co.graph, "edge-list file")->required();
    std::int64_t bc_node = 0;
    std::string gbc_nodes, pb_nodes;
    auto* bc_opt = compute->add_option("--bc", bc_node, "node for BC");
    auto* gbc_opt = compute->add_option("--gbc", gbc_nodes, "comma list or file for GBC");
    auto* pb_opt = compute->add_option("--pb", pb_nodes, "X,Y for pair betweenness");
    compute->add_option("--threads", co.threads, "worker threads (default 1)");

    PlaceOpts po;
    auto* place = app.add_subcommand("place", "Two-phase incremental deployment");
    place->add_option("--graph", po.graph, "edge-list file")->required();
    place->add_option("--deployed", po.deployed, "comma list or file (default empty)");
    place->add_option("--candidates", po.candidates, "comma list, file, or 'all'");
    int place_k = -1;
    double place_cov = -1.0;
    auto* k_opt = place->add_option("-k,--budget", place_k, "number of monitors to add");
    auto* cov_opt = place->add_option("--coverage", place_cov, "coverage target in [0,1]");
    place->add_option("--csv", po.csv, "per-pick CSV output path");
    place->add_option("--threads", po.threads, "worker threads (default 1)");

    OracleOpts oo;
    auto* oracle = app.add_subcommand("oracle", "Greedy vs exhaustive optimum check");
    oracle->add_option("--graph", oo.graph, "edge-list file")->required();
    oracle->add_option("--deployed", oo.deployed, "comma list or file");
    oracle->add_option("--candidates", oo.candidates, "comma list, file, or 'all'");
    oracle->add_option("-k,--budget", oo.k, "subset size")->required();
    oracle->add_option("--threads", oo.threads, "worker threads (default 1)");

    EvolveOpts eo;
    auto* evolve = app.add_subcommand("evolve", "Fresh vs incremental strategies on BA growth");
    evolve->add_option("--m-attach", eo.m_attach, "comma list of attachment degrees");
    evolve->add_option("--from", eo.from, "starting node count")->required();
    evolve->add_option("--to", eo.to, "final node count")->required();
    evolve->add_option("--step", eo.step, "growth increment")->required();
    evolve->add_option("--seeds", eo.seeds, "comma list, ranges a..b allowed");
    evolve->add_option("--coverage", eo.coverage, "coverage target (default 0.95)");
    evolve->add_option("--out", eo.out_path, "records CSV path")->required();
    evolve->add_option("--summary", eo.summary_path, "summary CSV path")->required();
    evolve->add_flag("--progress", eo.progress, "progress lines on stderr");
    evolve->add_option("--threads", eo.threads, "worker threads (default 1)");

    RelabelOpts ro;
    auto* relabel = app.add_subcommand("relabel", "Densify sparse node ids");
    relabel->add_option("--graph", ro.graph, "edge-list file")->required();
    relabel->add_option("--out", ro.out_path, "dense edge-list path")->required();
    relabel->add_option("--map", ro.map_path, "old->new id mapping CSV")->required();

    std::vector<const char*> argv;
    argv.push_back("gbcdeploy");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (compute->parsed()) {
            if (bc_opt->count()) co.bc = bc_node;
            if (gbc_opt->count()) co.gbc = gbc_nodes;
            if (pb_opt->count()) co.pb = pb_nodes;
            return cmd_compute(co, out);
        }
        if (place->parsed()) {
            if (k_opt->count()) po.k = place_k;
            if (cov_opt->count()) po.coverage = place_cov;
            return cmd_place(po, out);
        }
        if (oracle->parsed()) return cmd_oracle(oo, out);
        if (evolve->parsed()) return cmd_evolve(eo, out, err);
        if (relabel->parsed()) return cmd_relabel(ro, out);
        err << "error: no command\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (is_resource_guard(e.code())) return kExitGuard;
        if (e.code() == errc::internal_inconsistency) return kExitViolation;
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitViolation;
    }
}

} // namespace gbcdeploy::cli
