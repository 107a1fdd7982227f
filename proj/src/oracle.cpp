#include "gbcdeploy/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gbcdeploy/centrality.hpp"
#include "gbcdeploy/errors.hpp"
#include "gbcdeploy/shortest_paths.hpp"

namespace gbcdeploy {

namespace {

void extend_path(const Graph& g, const std::vector<std::int32_t>& dist_s,
                 const std::vector<std::int32_t>& dist_t, NodeId t,
                 std::vector<NodeId>& path, std::uint64_t limit,
                 std::vector<std::vector<NodeId>>& out) {
    const NodeId u = path.back();
    if (u == t) {
        if (out.size() >= limit)
            raise(errc::path_explosion, "more than " + std::to_string(limit) + " shortest paths");
        out.push_back(path);
        return;
    }
    const std::int32_t total = dist_t[path.front()];
    for (NodeId w : g.neighbors(u)) {
        // stay on shortest paths: one step forward and still collinear
        if (dist_s[w] == dist_s[u] + 1 && dist_t[w] >= 0 && dist_s[w] + dist_t[w] == total) {
            path.push_back(w);
            extend_path(g, dist_s, dist_t, t, path, limit, out);
            path.pop_back();
        }
    }
}

} // namespace

std::vector<std::vector<NodeId>> enumerate_shortest_paths(const Graph& g, NodeId s,
                                                          NodeId t, std::uint64_t limit) {
    if (s == t) raise(errc::invalid_argument, "s and t must differ");
    const NodeId n = g.node_count();
    if (s < 0 || t < 0 || s >= n || t >= n)
        raise(errc::invalid_argument, "node out of range");
    std::vector<std::int32_t> dist_s(n), dist_t(n);
    std::vector<double> sig(n);
    bfs_single_source(g, s, dist_s, sig);
    if (dist_s[t] < 0) return {};
    bfs_single_source(g, t, dist_t, sig);
    std::vector<std::vector<NodeId>> out;
    std::vector<NodeId> path{s};
    extend_path(g, dist_s, dist_t, t, path, limit, out);
    return out;
}

double gbc_enumeration_oracle(const Graph& g, const NodeGroup& s_group,
                              std::uint64_t limit) {
    const NodeId n = g.node_count();
    s_group.validate(n);
    std::vector<char> in_group(n, 0);
    for (NodeId v : s_group.members) in_group[v] = 1;

    double total = 0.0;
    for (NodeId s = 0; s < n; ++s) {
        for (NodeId t = 0; t < n; ++t) {
            if (s == t) continue;
            auto paths = enumerate_shortest_paths(g, s, t, limit);
            if (paths.empty()) continue;
            if (in_group[s] || in_group[t]) {
                total += 1.0;
                continue;
            }
            std::size_t touching = 0;
            for (const auto& p : paths)
                touching += std::any_of(p.begin(), p.end(),
                                        [&](NodeId u) { return in_group[u]; });
            total += static_cast<double>(touching) / static_cast<double>(paths.size());
        }
    }
    return total;
}

OptResult optimal_k_subset(const DeploymentProblem& problem, std::uint64_t max_subsets) {
    problem.validate();
    if (!problem.budget)
        raise(errc::invalid_argument, "optimal_k_subset needs a budget problem");
    const Graph& g = *problem.graph;
    const int k = *problem.budget;

    std::vector<NodeId> cands = problem.candidates;
    std::sort(cands.begin(), cands.end());
    const int c = static_cast<int>(cands.size());

    // C(c, k) with overflow guard against the subset limit.
    std::uint64_t subsets = 1;
    for (int i = 0; i < k; ++i) {
        subsets = subsets * static_cast<std::uint64_t>(c - i) / (i + 1);
        if (subsets > max_subsets)
            raise(errc::search_too_large,
                  "subset count exceeds " + std::to_string(max_subsets));
    }

    const ShortestPathData spd = all_pairs(g);
    NodeGroup base{problem.deployed};
    const double gbc_d = group_betweenness_direct(g, spd, base);

    OptResult res;
    if (k == 0) {
        res.evaluated = 1;
        return res;
    }

    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    bool first = true;
    for (;;) {
        NodeGroup grp{problem.deployed};
        for (int i : comb) grp.members.push_back(cands[i]);
        const double value = group_betweenness_direct(g, spd, grp) - gbc_d;
        ++res.evaluated;
        // strictly-greater keeps the lexicographically smallest tie because
        // combinations are generated in lexicographic order
        if (first || value > res.best_value) {
            first = false;
            res.best_value = value;
            res.best_set.clear();
            for (int i : comb) res.best_set.push_back(cands[i]);
        }
        int pos = k - 1;
        while (pos >= 0 && comb[pos] == c - k + pos) --pos;
        if (pos < 0) break;
        ++comb[pos];
        for (int i = pos + 1; i < k; ++i) comb[i] = comb[i - 1] + 1;
    }
    return res;
}

RatioCheck check_ratio(double greedy_value, double opt_value, int k,
                       std::uint64_t evaluated) {
    RatioCheck rc;
    rc.greedy_value = greedy_value;
    rc.opt_value = opt_value;
    rc.evaluated = evaluated;
    rc.bound = (k <= 0) ? 0.0 : 1.0 - std::pow(1.0 - 1.0 / k, k);
    rc.ratio = (opt_value > 0.0) ? greedy_value / opt_value : 1.0;
    rc.pass = rc.ratio >= rc.bound - 1e-9;
    return rc;
}

RatioCheck approx_ratio_check(const DeploymentProblem& problem) {
    if (!problem.budget)
        raise(errc::invalid_argument, "approx_ratio_check needs a budget problem");
    const PlacementResult greedy = two_phase_place(problem);
    const OptResult opt = optimal_k_subset(problem);
    return check_ratio(greedy.gbc_final - greedy.gbc_initial, opt.best_value,
                       *problem.budget, opt.evaluated);
}

} // namespace gbcdeploy
