// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Spawns the CLI binary for the end-to-end checks, so
// GBCDEPLOY_BIN / GBCDEPLOY_DATA / GBCDEPLOY_TMP should point at the build
// outputs (the ctest registration sets them).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gbcdeploy/centrality.hpp"
#include "gbcdeploy/errors.hpp"
#include "gbcdeploy/evolution.hpp"
#include "gbcdeploy/graph.hpp"
#include "gbcdeploy/oracle.hpp"
#include "gbcdeploy/placement.hpp"
#include "gbcdeploy/shortest_paths.hpp"
#include "oracle_ref.hpp"
#include "process.hpp"
#include "support.hpp"

#include <json.hpp>

using namespace gbcdeploy;
using namespace testsupport;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> failures;
    double seconds = 0.0;

    void fail(const std::string& msg) {
        if (failures.size() < 8) failures.push_back(msg);
    }
    void expect(bool ok, const std::string& msg) {
        if (!ok) fail(msg);
    }
};

std::vector<Criterion> g_results;

template <typename Fn>
void run_criterion(int id, const std::string& title, Fn&& body) {
    Criterion c{id, title, {}, 0.0};
    const auto start = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.fail(std::string("exception: ") + e.what());
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    g_results.push_back(std::move(c));
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---- deterministic instance pool shared by criteria 2, 3, 4 and 6 ---------

struct Instance {
    Graph graph;
    std::uint64_t seed;
    std::string kind;
};

std::vector<Instance> criterion2_instances() {
    std::vector<Instance> out;
    out.reserve(500);
    const double ps[] = {0.2, 0.3, 0.5};
    for (int i = 0; i < 300; ++i) {  // ER n in [4,10], p in {0.2,0.3,0.5}
        Xoshiro256ss rng(1000 + i);
        const NodeId n = 4 + static_cast<NodeId>(rng.next_below(7));
        const double p = ps[i % 3];
        out.push_back({er_graph(n, p, rng), 1000u + static_cast<std::uint64_t>(i), "er"});
    }
    for (int i = 0; i < 200; ++i) {  // BA n in [5,12], m in {1,2}
        Xoshiro256ss rng(5000 + i);
        const NodeId n = 5 + static_cast<NodeId>(rng.next_below(8));
        const int m = 1 + (i % 2);
        Xoshiro256ss grow(rng.next());
        out.push_back({ba_grow(std::nullopt, n, m, grow),
                       5000u + static_cast<std::uint64_t>(i), "ba"});
    }
    return out;
}

// ---- criterion 1: sample-network goldens -----------------------------------

void criterion1(Criterion& c) {
    const std::string path = data_dir() + "/fig1.edges";
    std::ifstream in(path);
    c.expect(in.good(), "missing " + path);
    if (!in.good()) return;
    const Graph g = parse_edge_list(in);
    const auto spd = all_pairs(g);

    c.expect(spd.sigma_at(1, 4) == 3.0, "sigma(1,4) != 3");
    c.expect(std::fabs(betweenness(spd, 2) - 11.667) <= 1e-3,
             "BC(2) = " + fmt(betweenness(spd, 2)) + ", want 11.667 +- 1e-3");
    const double gbc23 = group_betweenness_direct(g, spd, {{2, 3}});
    c.expect(std::fabs(gbc23 - 20.3333) <= 1e-3,
             "GBC({2,3}) = " + fmt(gbc23) + ", want 20.3333 +- 1e-3");

    const double pb_sum =
        path_betweenness_pair(spd, 2, 3) + path_betweenness_pair(spd, 3, 2);
    c.expect(std::fabs(pb_sum - 7.0) <= 1e-3,
             "PB(2,3)+PB(3,2) = " + fmt(pb_sum) +
                 ", want 7 +- 1e-3 (known inconsistent golden: no topology "
                 "satisfies this together with the other four, and the value "
                 "consistent with the rest is 8 — see README, Known red)");

    auto res = two_phase_place(DeploymentProblem::with_budget(g, {1}, {0, 2, 3, 4, 5}, 1));
    c.expect(res.picks == std::vector<NodeId>{3},
             "place D={1} k=1 picked wrong node");

    const auto cli = run_command(cli_path() + " place --graph " + path +
                                 " --deployed 1 --candidates all -k 1");
    c.expect(cli.exit_code == 0, "CLI place exited nonzero");
    const auto doc = nlohmann::json::parse(cli.stdout_text, nullptr, false);
    c.expect(!doc.is_discarded() && doc["result"]["picks"] == nlohmann::json::array({3}),
             "CLI place did not report picks=[3]");
}

// ---- criterion 2: oracle equivalence on 500 random graphs -----------------

void criterion2(Criterion& c) {
    const auto instances = criterion2_instances();
    std::size_t checked = 0;
    for (const auto& inst : instances) {
        const Graph& g = inst.graph;
        const NodeId n = g.node_count();
        const double tol = pair_tol(n);
        const auto spd = all_pairs(g);
        Xoshiro256ss rng(inst.seed * 7919 + 13);

        const auto group = random_subset(n, static_cast<int>(rng.next_below(n + 1)), rng);
        const double direct = group_betweenness_direct(g, spd, {group});
        const double enumerated = gbc_enumeration_oracle(g, {group});
        if (std::fabs(direct - enumerated) > tol) {
            c.fail(inst.kind + " seed " + std::to_string(inst.seed) + ": direct " +
                   fmt(direct) + " vs enumeration " + fmt(enumerated));
            return;
        }

        const int l = 2 + static_cast<int>(rng.next_below(n - 1));
        const auto nodes = random_subset(n, l, rng);
        const auto idx = CandidateIndex::make({}, nodes, n);
        PlacementState state(spd, idx);
        auto order = nodes;
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.next_below(i)]);
        std::vector<NodeId> members;
        for (NodeId v : order) {
            state.exclude(v);
            members.push_back(v);
            const double direct_m = group_betweenness_direct(g, spd, {members});
            if (std::fabs(state.gbc() - direct_m) > tol) {
                c.fail(inst.kind + " seed " + std::to_string(inst.seed) +
                       ": incremental gbc " + fmt(state.gbc()) + " vs direct " +
                       fmt(direct_m) + " after excluding " + std::to_string(v));
                return;
            }
            ++checked;
        }
    }
    c.expect(checked > 1000, "too few update steps checked");
}

// ---- criterion 3: exclusion matrices vs exhaustive enumeration -------------

void criterion3(Criterion& c) {
    for (int t = 0; t < 200; ++t) {
        Xoshiro256ss rng(31337 + t);
        const NodeId n = 4 + static_cast<NodeId>(rng.next_below(7));
        const Graph g = (t % 3 == 0)
                            ? ba_graph(std::max<NodeId>(n, 3), 1 + t % 2, rng.next())
                            : er_graph(n, 0.2 + 0.1 * (t % 3), rng);
        const NodeId gn = g.node_count();
        const auto spd = all_pairs(g);
        const double tol = pair_tol(gn);

        const int d_count = static_cast<int>(rng.next_below(std::min<NodeId>(3, gn)));
        const auto deployed = random_subset(gn, d_count, rng);
        std::vector<NodeId> rest;
        for (NodeId v = 0; v < gn; ++v)
            if (std::find(deployed.begin(), deployed.end(), v) == deployed.end())
                rest.push_back(v);
        for (std::size_t i = rest.size(); i > 1; --i)
            std::swap(rest[i - 1], rest[rng.next_below(i)]);
        const int c_count = 1 + static_cast<int>(rng.next_below(rest.size()));
        std::vector<NodeId> cands(rest.begin(), rest.begin() + c_count);
        std::sort(cands.begin(), cands.end());

        const auto idx = CandidateIndex::make(deployed, cands, gn);
        PlacementState state(spd, idx);

        auto seq = idx.nodes();
        for (std::size_t i = seq.size(); i > 1; --i)
            std::swap(seq[i - 1], seq[rng.next_below(i)]);
        const std::size_t steps = 1 + rng.next_below(seq.size());

        std::vector<NodeId> members;
        for (std::size_t s = 0; s < steps; ++s) {
            state.exclude(seq[s]);
            members.push_back(seq[s]);
            const auto ref = pbm_by_enumeration(g, spd, idx, members);
            const int l = idx.size();
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < l; ++j) {
                    const double got = state.matrices().pb_at(i, j);
                    const double want = ref[static_cast<std::size_t>(i) * l + j];
                    if (std::fabs(got - want) > tol) {
                        c.fail("instance " + std::to_string(t) + ": PB^M(" +
                               std::to_string(idx.nodes()[i]) + "," +
                               std::to_string(idx.nodes()[j]) + ") = " + fmt(got) +
                               " vs exhaustive " + fmt(want));
                        return;
                    }
                }
        }
    }
}

// ---- criterion 4: approximation bound + corrupted-update mutation ---------

void criterion4(Criterion& c) {
    double worst = 2.0;
    for (int t = 0; t < 200; ++t) {
        Xoshiro256ss rng(909 + t);
        const NodeId n = 6 + static_cast<NodeId>(rng.next_below(6));
        const Graph g = er_graph(n, 0.25 + 0.05 * (t % 4), rng);
        const auto deployed = random_subset(n, static_cast<int>(rng.next_below(2)), rng);
        std::vector<NodeId> cands;
        for (NodeId v = 0; v < n; ++v)
            if (std::find(deployed.begin(), deployed.end(), v) == deployed.end())
                cands.push_back(v);
        if (cands.size() > 10) cands.resize(10);
        const int k = 1 + static_cast<int>(rng.next_below(3));
        if (static_cast<std::size_t>(k) > cands.size()) continue;

        const auto rc = approx_ratio_check(
            DeploymentProblem::with_budget(g, deployed, cands, k));
        worst = std::min(worst, rc.ratio);
        if (!rc.pass || rc.ratio < 1.0 - 1.0 / std::exp(1.0) - 1e-9) {
            c.fail("instance " + std::to_string(t) + ": ratio " + fmt(rc.ratio) +
                   " below bound " + fmt(rc.bound));
            return;
        }
    }
    std::cerr << "  [criterion 4] worst greedy/opt ratio over 200 instances: "
              << fmt(worst) << "\n";

    // Mutation: an update that skips the diagonal branch leaves selection
    // ranking by the stale initial contributions. On a star plus two paths it
    // wastes picks on covered leaves and must trip the bound (the CLI maps
    // that to exit code 1).
    const Graph g = [] {
        std::vector<Edge> edges;
        for (NodeId leaf = 1; leaf <= 4; ++leaf) edges.emplace_back(0, leaf);
        edges.emplace_back(5, 6);
        edges.emplace_back(6, 7);
        edges.emplace_back(8, 9);
        edges.emplace_back(9, 10);
        return Graph::from_edges(11, edges);
    }();
    const auto spd = all_pairs(g);
    std::vector<NodeId> cand(11);
    std::iota(cand.begin(), cand.end(), 0);
    const auto idx = CandidateIndex::make({}, cand, 11);
    const auto init = init_matrices(spd, idx);

    std::vector<NodeId> picks;
    std::vector<char> taken(11, 0);
    for (int step = 0; step < 3; ++step) {
        NodeId best = -1;
        double best_val = -1;
        for (NodeId v = 0; v < 11; ++v) {
            if (taken[v]) continue;
            const double val = init.pb_at(idx.position_of(v), idx.position_of(v));
            if (val > best_val) {
                best = v;
                best_val = val;
            }
        }
        taken[best] = 1;
        picks.push_back(best);
    }
    const double achieved = group_betweenness_direct(g, spd, {picks});
    const auto opt = optimal_k_subset(DeploymentProblem::with_budget(g, {}, cand, 3));
    const auto rc = check_ratio(achieved, opt.best_value, 3, opt.evaluated);
    c.expect(!rc.pass, "mutation not detected: ratio " + fmt(rc.ratio));
    c.expect(rc.ratio < 1.0 - 1.0 / std::exp(1.0), "mutated ratio above the 1-1/e floor");

    // the honest CLI on the same shape of problem exits 0
    const std::string path = std::string(scratch_dir()) + "/mutation.edges";
    {
        std::ofstream out(path);
        for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    }
    const auto honest = run_command(cli_path() + " oracle --graph " + path +
                                    " --deployed \"\" --candidates all -k 3");
    c.expect(honest.exit_code == 0, "honest oracle run should exit 0");
    const auto hdoc = nlohmann::json::parse(honest.stdout_text, nullptr, false);
    c.expect(!hdoc.is_discarded() && hdoc["result"]["verdict"] == "PASS",
             "honest oracle run should print PASS");
}

// ---- criterion 5: desk-scale replication of the evolution experiment ------

void criterion5(Criterion& c) {
    std::vector<EvolutionRecord> records;
    for (int m = 1; m <= 3; ++m) {
        EvolutionConfig cfg;
        cfg.m_attach = m;
        cfg.n_start = 100;
        cfg.n_end = 1000;
        cfg.n_step = 100;
        cfg.coverage_target = 0.95;
        cfg.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        cfg.threads = 1;
        auto part = run_evolution_experiment(cfg, [m](std::uint64_t seed, NodeId n) {
            if (n == 1000)
                std::cerr << "  [criterion 5] m=" << m << " seed=" << seed << " done\n";
        });
        records.insert(records.end(), part.begin(), part.end());
    }
    c.expect(records.size() == 300, "expected 300 records");

    for (const auto& r : records) {
        if (r.coverage_fresh < 0.95 - 1e-9 || r.coverage_incremental < 0.95 - 1e-9) {
            c.fail("coverage target missed at m=" + std::to_string(r.m_attach) +
                   " seed=" + std::to_string(r.seed) + " n=" + std::to_string(r.n));
            break;
        }
    }

    const auto summary = summarize(records);
    c.expect(summary.overall.mean_penalty_rel < 0.10,
             "mean relative penalty " + fmt(summary.overall.mean_penalty_rel) +
                 " >= 0.10");
    std::cerr << "  [criterion 5] mean penalty_rel = "
              << fmt(summary.overall.mean_penalty_rel)
              << ", max = " << fmt(summary.overall.max_penalty_rel) << "\n";

    // Spearman between n and the across-seed mean absolute penalty
    std::map<NodeId, std::pair<double, int>> by_n;
    for (const auto& r : records) {
        by_n[r.n].first += r.penalty_abs;
        by_n[r.n].second += 1;
    }
    std::vector<double> ns, means;
    for (const auto& [n, acc] : by_n) {
        ns.push_back(n);
        means.push_back(acc.first / acc.second);
    }
    const double rho = spearman_rank_correlation(ns, means);
    std::cerr << "  [criterion 5] spearman(n, mean penalty_abs) = " << fmt(rho) << "\n";
    c.expect(rho >= 0.0, "spearman(n, mean penalty_abs) = " + fmt(rho) + " < 0");
}

// ---- criterion 6: identity suite -------------------------------------------

void criterion6(Criterion& c) {
    const auto instances = criterion2_instances();
    for (const auto& inst : instances) {
        const Graph& g = inst.graph;
        const NodeId n = g.node_count();
        const auto spd = all_pairs(g);
        const double tol = pair_tol(n);
        for (NodeId v = 0; v < n; ++v) {
            const double bc = betweenness(spd, v);
            const double gbc1 = group_betweenness_direct(g, spd, {{v}});
            const double pbvv = path_betweenness_pair(spd, v, v);
            if (std::fabs(bc - gbc1) > tol || std::fabs(bc - pbvv) > tol) {
                c.fail(inst.kind + " seed " + std::to_string(inst.seed) + " node " +
                       std::to_string(v) + ": BC " + fmt(bc) + ", GBC " + fmt(gbc1) +
                       ", PB " + fmt(pbvv));
                return;
            }
        }
        if (group_betweenness_direct(g, spd, {{}}) != 0.0) {
            c.fail("GBC(empty) != 0 on seed " + std::to_string(inst.seed));
            return;
        }
        std::vector<NodeId> all(n);
        std::iota(all.begin(), all.end(), 0);
        const double gbc_all = group_betweenness_direct(g, spd, {all});
        const double reachable = static_cast<double>(spd.connected_ordered_pairs());
        if (std::fabs(gbc_all - reachable) > tol) {
            c.fail("GBC(V) != connected ordered pairs on seed " + std::to_string(inst.seed));
            return;
        }
        if (g.is_connected() &&
            std::fabs(gbc_all - static_cast<double>(n) * (n - 1)) > tol) {
            c.fail("GBC(V) != n(n-1) on connected seed " + std::to_string(inst.seed));
            return;
        }
    }
}

// ---- criterion 7: performance smoke ----------------------------------------

void criterion7(Criterion& c) {
    const Graph g = ba_graph(1000, 2, 20250808);
    std::vector<NodeId> cands(100);
    for (int i = 0; i < 100; ++i) cands[i] = static_cast<NodeId>(10 * i);

    const auto t0 = Clock::now();
    const auto res =
        two_phase_place(DeploymentProblem::with_budget(g, {}, cands, 20), 1);
    const double total = std::chrono::duration<double>(Clock::now() - t0).count();
    c.expect(res.picks.size() == 20, "expected 20 picks");
    c.expect(total < 60.0, "place took " + fmt(total) + " s >= 60 s");

    // phase 2 alone: same state prepared outside the clock
    const auto spd = all_pairs(g, 1);
    const auto idx = CandidateIndex::make({}, cands, 1000);
    PlacementState state(spd, idx, 1);
    const auto t1 = Clock::now();
    for (int i = 0; i < 20; ++i) {
        const auto v = state.best_candidate();
        if (!v) {
            c.fail("ran out of candidates");
            return;
        }
        state.exclude(*v);
    }
    const double phase2 = std::chrono::duration<double>(Clock::now() - t1).count();
    c.expect(phase2 < 1.0, "phase 2 took " + fmt(phase2) + " s >= 1 s");
    std::cerr << "  [criterion 7] place total " << fmt(total) << " s, phase 2 "
              << fmt(phase2) << " s\n";
    c.expect(state.members() == res.picks, "staged phase 2 diverged from place");
}

// ---- criterion 8: CLI determinism ------------------------------------------

void criterion8(Criterion& c) {
    const std::string fig1 = data_dir() + "/fig1.edges";
    const std::string tmp = scratch_dir();
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };

    const std::vector<std::string> commands = {
        " compute --graph " + fig1 + " --gbc 2,3",
        " compute --graph " + fig1 + " --bc 0",
        " compute --graph " + fig1 + " --pb 2,3",
        " place --graph " + fig1 + " --deployed 1 --candidates all -k 3",
        " place --graph " + fig1 + " --deployed \"\" --candidates all --coverage 0.9",
        " oracle --graph " + fig1 + " --deployed 1 --candidates all -k 2",
    };
    for (const auto& cmd : commands) {
        const auto a = run_command(cli_path() + cmd);
        const auto b = run_command(cli_path() + cmd);
        c.expect(a.exit_code == 0 && b.exit_code == 0, "nonzero exit:" + cmd);
        c.expect(a.stdout_text == b.stdout_text, "stdout differs:" + cmd);
    }

    const std::string evo = cli_path() + " evolve --m-attach 1,2 --from 40 --to 80"
                            " --step 20 --seeds 1..4 --coverage 0.9 --out " + tmp +
                            "/a.csv --summary " + tmp + "/as.csv";
    const auto e1 = run_command(evo);
    const std::string rec_first = slurp(tmp + "/a.csv");
    const std::string sum_first = slurp(tmp + "/as.csv");
    const auto e2 = run_command(evo);
    c.expect(e1.exit_code == 0 && e2.exit_code == 0, "evolve exit nonzero");
    c.expect(e1.stdout_text == e2.stdout_text, "evolve stdout differs");
    c.expect(rec_first == slurp(tmp + "/a.csv"), "records CSV differs");
    c.expect(sum_first == slurp(tmp + "/as.csv"), "summary CSV differs");
    c.expect(!rec_first.empty(), "records CSV empty");

    const std::string place_csv_cmd = " place --graph " + fig1 +
                                      " --deployed 1 --candidates all -k 3 --csv ";
    run_command(cli_path() + place_csv_cmd + tmp + "/p1.csv");
    run_command(cli_path() + place_csv_cmd + tmp + "/p2.csv");
    c.expect(slurp(tmp + "/p1.csv") == slurp(tmp + "/p2.csv"), "place CSV differs");
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    }

    const struct {
        int id;
        const char* title;
        void (*fn)(Criterion&);
    } table[] = {
        {1, "sample-network goldens", criterion1},
        {2, "oracle equivalence on 500 random graphs", criterion2},
        {3, "exclusion matrices vs exhaustive enumeration (200 instances)", criterion3},
        {4, "approximation bound + corrupted-update mutation", criterion4},
        {5, "desk-scale evolution replication", criterion5},
        {6, "identity suite", criterion6},
        {7, "performance smoke (n=1000, l=100, k=20)", criterion7},
        {8, "CLI determinism", criterion8},
    };

    for (const auto& entry : table) {
        if (only != 0 && entry.id != only) continue;
        run_criterion(entry.id, entry.title, entry.fn);
    }

    int failed = 0;
    for (auto& c : g_results) {
        // runtime budgets checked against the measured wall time
        if (c.id == 1 && c.seconds >= 1.0) c.fail("exceeded 1 s budget");
        if (c.id == 2 && c.seconds >= 120.0) c.fail("exceeded 2 min budget");
        if (c.id == 5 && c.seconds >= 1800.0) c.fail("exceeded 30 min budget");
        const bool ok = c.failures.empty();
        failed += !ok;
        std::printf("%s criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), c.seconds);
        for (const auto& f : c.failures) std::printf("       - %s\n", f.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(g_results.size()) - failed,
                g_results.size());
    return failed;
}
