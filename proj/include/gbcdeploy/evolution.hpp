#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gbcdeploy/graph.hpp"
#include "gbcdeploy/rng.hpp"

namespace gbcdeploy {

/// Grows g by preferential attachment until it has target_n nodes: each new
/// node attaches m_attach edges to distinct existing nodes drawn uniformly
/// from the edge-endpoint multiset (resampling duplicates). Existing nodes
/// and edges are never removed. Passing no graph seeds with the complete
/// graph on m_attach + 1 nodes.
Graph ba_grow(const std::optional<Graph>& g, NodeId target_n, int m_attach,
              Xoshiro256ss& rng);

struct EvolutionConfig {
    int m_attach = 2;
    NodeId n_start = 100;
    NodeId n_end = 1000;
    NodeId n_step = 100;
    double coverage_target = 0.95;
    std::vector<std::uint64_t> seeds;
    int threads = 1;

    void validate() const;
};

/// One (seed, snapshot) comparison of the two deployment strategies.
/// monitors_fresh: fresh greedy from D = empty. monitors_incremental: total
/// deployed when earlier monitors cannot be relocated. Penalties are signed;
/// greedy is not optimal, so the incremental strategy may occasionally win.
struct EvolutionRecord {
    std::uint64_t seed = 0;
    int m_attach = 0;
    NodeId n = 0;
    int monitors_fresh = 0;
    int monitors_incremental = 0;
    int penalty_abs = 0;
    double penalty_rel = 0.0;
    double coverage_fresh = 0.0;
    double coverage_incremental = 0.0;
};

using ProgressFn = std::function<void(std::uint64_t seed, NodeId n)>;

/// Grows one network per seed from n_start to n_end in n_step increments and
/// re-solves both strategies at every snapshot with candidate set V (fresh)
/// or V \ D (incremental). Deterministic per seed; records are ordered by
/// (seed, n).
std::vector<EvolutionRecord> run_evolution_experiment(
    const EvolutionConfig& cfg, const ProgressFn& progress = {});

struct SummaryCell {
    int m_attach = 0;
    NodeId n = 0;      // -1 in the overall row
    int records = 0;
    double mean_penalty_abs = 0.0;
    double max_penalty_abs = 0.0;
    double mean_penalty_rel = 0.0;
    double max_penalty_rel = 0.0;
};

struct EvolutionSummary {
    std::vector<SummaryCell> cells;  // per (m_attach, n), sorted
    SummaryCell overall;
};

/// Per-(m_attach, n) and overall penalty statistics. Throws empty_input.
EvolutionSummary summarize(const std::vector<EvolutionRecord>& records);

/// Records CSV: header
/// seed,m_attach,n,monitors_fresh,monitors_incremental,penalty_abs,penalty_rel
void write_records_csv(std::ostream& out, const std::vector<EvolutionRecord>& records);

/// Summary CSV: header
/// m_attach,n,records,mean_penalty_abs,max_penalty_abs,mean_penalty_rel,max_penalty_rel
/// with a final row n = "overall".
void write_summary_csv(std::ostream& out, const EvolutionSummary& summary);

/// Spearman rank correlation with average ranks for ties; NaN-free, returns
/// 0 when either side is constant.
double spearman_rank_correlation(const std::vector<double>& xs,
                                 const std::vector<double>& ys);

} // namespace gbcdeploy
