#include "gbcdeploy/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <string>

#include "gbcdeploy/errors.hpp"
#include "gbcdeploy/placement.hpp"

namespace gbcdeploy {

Graph ba_grow(const std::optional<Graph>& g, NodeId target_n, int m_attach,
              Xoshiro256ss& rng) {
    if (m_attach < 1) raise(errc::invalid_argument, "m_attach must be >= 1");

    std::vector<Edge> edges;
    NodeId n = 0;
    if (g) {
        n = g->node_count();
        if (n < m_attach + 1)
            raise(errc::invalid_argument, "base graph smaller than the BA seed clique");
        edges = g->edges();
    } else {
        // seed: complete graph on m_attach + 1 nodes
        n = m_attach + 1;
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    if (target_n < n) raise(errc::invalid_argument, "growth only: target_n below current size");

    // Each edge contributes both endpoints, so a uniform draw from this
    // multiset is degree-proportional.
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * (edges.size() + static_cast<std::size_t>(target_n - n) * m_attach));
    for (auto [u, v] : edges) {
        endpoints.push_back(u);
        endpoints.push_back(v);
    }

    std::vector<NodeId> targets;
    for (NodeId fresh = n; fresh < target_n; ++fresh) {
        targets.clear();
        while (static_cast<int>(targets.size()) < m_attach) {
            const NodeId pick = endpoints[rng.next_below(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), pick) == targets.end())
                targets.push_back(pick);
        }
        for (NodeId t : targets) {
            edges.emplace_back(t, fresh);
            endpoints.push_back(t);
            endpoints.push_back(fresh);
        }
    }
    return Graph::from_edges(target_n, edges);
}

void EvolutionConfig::validate() const {
    if (m_attach < 1) raise(errc::invalid_argument, "m_attach must be >= 1");
    if (n_start < m_attach + 1)
        raise(errc::invalid_argument, "n_start must be at least m_attach + 1");
    if (n_end < n_start) raise(errc::invalid_argument, "n_end must be >= n_start");
    if (n_step < 1) raise(errc::invalid_argument, "n_step must be >= 1");
    if (coverage_target <= 0.0 || coverage_target > 1.0)
        raise(errc::invalid_argument, "coverage target must be in (0,1]");
    if (seeds.empty()) raise(errc::invalid_argument, "at least one seed required");
}

namespace {

// One greedy run to the coverage target on a prepared state; returns picks.
std::vector<NodeId> run_to_target(PlacementState& state, double target_gbc, double tol) {
    std::vector<NodeId> picks;
    while (state.gbc() < target_gbc - tol) {
        auto v = state.best_candidate();
        if (!v) break;
        if (state.contribution(*v) <= tol) break;
        state.exclude(*v);
        picks.push_back(*v);
    }
    return picks;
}

} // namespace

std::vector<EvolutionRecord> run_evolution_experiment(const EvolutionConfig& cfg,
                                                      const ProgressFn& progress) {
    cfg.validate();
    std::vector<EvolutionRecord> records;

    for (std::uint64_t seed : cfg.seeds) {
        Xoshiro256ss rng(derive_stream_seed(seed, static_cast<std::uint64_t>(cfg.m_attach)));
        std::optional<Graph> net;
        std::vector<NodeId> deployed_inc;  // strategy 2 carries its own history

        for (NodeId n = cfg.n_start; n <= cfg.n_end; n = static_cast<NodeId>(n + cfg.n_step)) {
            net = ba_grow(net, n, cfg.m_attach, rng);
            const Graph& g = *net;
            const double pair_count = static_cast<double>(n) * (n - 1);
            const double target_gbc = cfg.coverage_target * pair_count;
            const double tol = 1e-9 * std::max(1.0, pair_count);

            const ShortestPathData spd = all_pairs(g, cfg.threads);

            std::vector<NodeId> all_nodes(n);
            std::iota(all_nodes.begin(), all_nodes.end(), 0);
            std::vector<NodeId> cands_inc;
            std::vector<char> is_deployed(n, 0);
            for (NodeId v : deployed_inc) is_deployed[v] = 1;
            for (NodeId v = 0; v < n; ++v)
                if (!is_deployed[v]) cands_inc.push_back(v);

            const CandidateIndex idx_fresh = CandidateIndex::make({}, all_nodes, n);
            const CandidateIndex idx_inc = CandidateIndex::make(deployed_inc, cands_inc, n);

            // Both strategies restrict to C u D = V, so one matrix init
            // serves both.
            MatrixPair base = init_matrices(spd, idx_fresh, cfg.threads);

            PlacementState st_fresh(spd, idx_fresh, base);
            const auto picks_fresh = run_to_target(st_fresh, target_gbc, tol);

            PlacementState st_inc(spd, idx_inc, std::move(base));
            {
                std::vector<NodeId> phase1 = deployed_inc;
                std::sort(phase1.begin(), phase1.end());
                for (NodeId v : phase1) st_inc.exclude(v);
            }
            const auto picks_inc = run_to_target(st_inc, target_gbc, tol);
            deployed_inc.insert(deployed_inc.end(), picks_inc.begin(), picks_inc.end());

            EvolutionRecord rec;
            rec.seed = seed;
            rec.m_attach = cfg.m_attach;
            rec.n = n;
            rec.monitors_fresh = static_cast<int>(picks_fresh.size());
            rec.monitors_incremental = static_cast<int>(deployed_inc.size());
            rec.penalty_abs = rec.monitors_incremental - rec.monitors_fresh;
            rec.penalty_rel = rec.monitors_fresh > 0
                                  ? static_cast<double>(rec.penalty_abs) / rec.monitors_fresh
                                  : 0.0;
            rec.coverage_fresh = pair_count > 0 ? st_fresh.gbc() / pair_count : 0.0;
            rec.coverage_incremental = pair_count > 0 ? st_inc.gbc() / pair_count : 0.0;
            records.push_back(rec);

            if (progress) progress(seed, n);
        }
    }
    return records;
}

EvolutionSummary summarize(const std::vector<EvolutionRecord>& records) {
    if (records.empty()) raise(errc::empty_input, "no records to summarize");

    std::map<std::pair<int, NodeId>, std::vector<const EvolutionRecord*>> cells;
    for (const auto& r : records) cells[{r.m_attach, r.n}].push_back(&r);

    auto fill = [](SummaryCell& cell, const std::vector<const EvolutionRecord*>& rs) {
        cell.records = static_cast<int>(rs.size());
        double sum_abs = 0, sum_rel = 0;
        cell.max_penalty_abs = rs.front()->penalty_abs;
        cell.max_penalty_rel = rs.front()->penalty_rel;
        for (const auto* r : rs) {
            sum_abs += r->penalty_abs;
            sum_rel += r->penalty_rel;
            cell.max_penalty_abs = std::max(cell.max_penalty_abs,
                                            static_cast<double>(r->penalty_abs));
            cell.max_penalty_rel = std::max(cell.max_penalty_rel, r->penalty_rel);
        }
        cell.mean_penalty_abs = sum_abs / cell.records;
        cell.mean_penalty_rel = sum_rel / cell.records;
    };

    EvolutionSummary summary;
    for (const auto& [key, rs] : cells) {
        SummaryCell cell;
        cell.m_attach = key.first;
        cell.n = key.second;
        fill(cell, rs);
        summary.cells.push_back(cell);
    }
    std::vector<const EvolutionRecord*> all;
    for (const auto& r : records) all.push_back(&r);
    summary.overall.m_attach = -1;
    summary.overall.n = -1;
    fill(summary.overall, all);
    return summary;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

} // namespace

void write_records_csv(std::ostream& out, const std::vector<EvolutionRecord>& records) {
    out << "seed,m_attach,n,monitors_fresh,monitors_incremental,penalty_abs,penalty_rel\n";
    for (const auto& r : records) {
        out << r.seed << ',' << r.m_attach << ',' << r.n << ',' << r.monitors_fresh << ','
            << r.monitors_incremental << ',' << r.penalty_abs << ','
            << fmt_double(r.penalty_rel) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const EvolutionSummary& summary) {
    out << "m_attach,n,records,mean_penalty_abs,max_penalty_abs,"
           "mean_penalty_rel,max_penalty_rel\n";
    auto row = [&](const SummaryCell& c, const std::string& m_attach,
                   const std::string& n) {
        out << m_attach << ',' << n << ',' << c.records << ','
            << fmt_double(c.mean_penalty_abs) << ',' << fmt_double(c.max_penalty_abs)
            << ',' << fmt_double(c.mean_penalty_rel) << ','
            << fmt_double(c.max_penalty_rel) << '\n';
    };
    for (const auto& c : summary.cells)
        row(c, std::to_string(c.m_attach), std::to_string(c.n));
    row(summary.overall, "all", "overall");
}

double spearman_rank_correlation(const std::vector<double>& xs,
                                 const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        raise(errc::invalid_argument, "mismatched or empty series");
    const std::size_t n = xs.size();

    auto ranks = [n](const std::vector<double>& v) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
            const double avg = (static_cast<double>(i) + j) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
            i = j + 1;
        }
        return r;
    };

    const auto rx = ranks(xs);
    const auto ry = ranks(ys);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double cov = 0, vx = 0, vy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (rx[i] - mx) * (ry[i] - my);
        vx += (rx[i] - mx) * (rx[i] - mx);
        vy += (ry[i] - my) * (ry[i] - my);
    }
    if (vx == 0.0 || vy == 0.0) return 0.0;
    return cov / std::sqrt(vx * vy);
}

} // namespace gbcdeploy
