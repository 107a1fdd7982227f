#include "gbcdeploy/placement.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "gbcdeploy/errors.hpp"

namespace gbcdeploy {

DeploymentProblem DeploymentProblem::with_budget(const Graph& g,
                                                 std::vector<NodeId> deployed,
                                                 std::vector<NodeId> candidates,
                                                 int k) {
    DeploymentProblem p;
    p.graph = &g;
    p.deployed = std::move(deployed);
    p.candidates = std::move(candidates);
    p.budget = k;
    return p;
}

DeploymentProblem DeploymentProblem::with_coverage(const Graph& g,
                                                   std::vector<NodeId> deployed,
                                                   std::vector<NodeId> candidates,
                                                   double target) {
    DeploymentProblem p;
    p.graph = &g;
    p.deployed = std::move(deployed);
    p.candidates = std::move(candidates);
    p.coverage_target = target;
    return p;
}

void DeploymentProblem::validate() const {
    if (!graph) raise(errc::invalid_argument, "problem has no graph");
    if (budget.has_value() == coverage_target.has_value())
        raise(errc::invalid_argument, "exactly one of budget and coverage_target must be set");
    // Disjointness and ranges are enforced by CandidateIndex::make.
    CandidateIndex::make(deployed, candidates, graph->node_count());
    if (budget) {
        if (*budget < 0) raise(errc::invalid_argument, "budget must be non-negative");
        if (static_cast<std::size_t>(*budget) > candidates.size())
            raise(errc::budget_exceeds_candidates,
                  "budget " + std::to_string(*budget) + " exceeds " +
                      std::to_string(candidates.size()) + " candidates");
    }
    if (coverage_target && (*coverage_target < 0.0 || *coverage_target > 1.0))
        raise(errc::invalid_argument, "coverage target must be in [0,1]");
}

PlacementState::PlacementState(const ShortestPathData& spd, const CandidateIndex& idx,
                               int threads)
    : PlacementState(spd, idx, init_matrices(spd, idx, threads)) {}

PlacementState::PlacementState(const ShortestPathData& spd, const CandidateIndex& idx,
                               MatrixPair initial)
    : spd_(&spd), idx_(&idx), cur_(std::move(initial)) {
    if (cur_.l != idx.size())
        raise(errc::invalid_argument, "matrix size does not match index");
    next_ = cur_;
    member_flag_.assign(spd.n, 0);
}

bool PlacementState::is_member(NodeId v) const {
    return v >= 0 && v < static_cast<NodeId>(member_flag_.size()) && member_flag_[v];
}

double PlacementState::contribution(NodeId v) const {
    const int pos = idx_->position_of(v);
    if (pos < 0)
        raise(errc::v_not_in_index, "node " + std::to_string(v) + " not in C u D");
    return cur_.pb_at(pos, pos);
}

std::optional<NodeId> PlacementState::best_candidate() const {
    const int l = idx_->size();
    bool any = false;
    double max_val = 0.0;
    for (int i = 0; i < l; ++i) {
        if (idx_->role(i) != Role::candidate) continue;
        const NodeId v = idx_->nodes()[i];
        if (member_flag_[v]) continue;
        const double val = cur_.pb_at(i, i);
        if (!any || val > max_val) max_val = val;
        any = true;
    }
    if (!any) return std::nullopt;
    // Values within the drift tolerance count as tied so the lowest id wins,
    // matching exact arithmetic; nodes are scanned ascending.
    const double tol = 1e-9 * static_cast<double>(spd_->n) * (spd_->n - 1);
    for (int i = 0; i < l; ++i) {
        if (idx_->role(i) != Role::candidate) continue;
        const NodeId v = idx_->nodes()[i];
        if (member_flag_[v]) continue;
        if (cur_.pb_at(i, i) >= max_val - tol) return v;
    }
    return std::nullopt;
}

void PlacementState::exclude(NodeId v) {
    const int iv = idx_->position_of(v);
    if (iv < 0)
        raise(errc::v_not_in_index, "node " + std::to_string(v) + " not in C u D");
    if (member_flag_[v])
        raise(errc::v_already_excluded, "node " + std::to_string(v) + " already in M");

    const int l = idx_->size();
    const auto& nodes = idx_->nodes();
    const NodeId n = spd_->n;
    const double pb_tol = 1e-9 * static_cast<double>(n) * (n - 1);

    gbc_m_ += cur_.pb_at(iv, iv);

    const auto dist_v = spd_->dist_row(v);
    // Snapshot of v's row/column in both matrices: every read below must see
    // the pre-update values even though cells are rewritten in place order.
    std::vector<double> sig_to_v(l), sig_from_v(l), pb_to_v(l), pb_from_v(l);
    std::vector<std::int32_t> dist_to_v(l);
    for (int i = 0; i < l; ++i) {
        sig_to_v[i] = cur_.sigma_at(i, iv);
        sig_from_v[i] = cur_.sigma_at(iv, i);
        pb_to_v[i] = cur_.pb_at(i, iv);
        pb_from_v[i] = cur_.pb_at(iv, i);
        dist_to_v[i] = dist_v[nodes[i]];
    }

    for (int i = 0; i < l; ++i) {
        const NodeId x = nodes[i];
        const auto dist_x = spd_->dist_row(x);
        const std::int32_t dvx = dist_to_v[i];
        const double* sig_old = cur_.sigma_m.data() + static_cast<std::size_t>(i) * l;
        const double* pb_old = cur_.pb_m.data() + static_cast<std::size_t>(i) * l;
        double* sig_new = next_.sigma_m.data() + static_cast<std::size_t>(i) * l;
        double* pb_new = next_.pb_m.data() + static_cast<std::size_t>(i) * l;

        for (int j = 0; j < l; ++j) {
            const NodeId y = nodes[j];
            const std::int32_t dxy = dist_x[y];
            const std::int32_t dvy = dist_to_v[j];

            // sigma update: drop surviving paths through v. Collinearity is
            // decided on the ORIGINAL metric; exclusions change counts, not
            // distances.
            double s = sig_old[j];
            if (dvx >= 0 && dvy >= 0 && dxy >= 0 && dvx + dvy == dxy)
                s -= sig_to_v[i] * sig_from_v[j];
            if (s < 0.0) {
                const double floor = -1e-9 * std::max(1.0, spd_->sigma_at(x, y));
                if (s < floor)
                    raise(errc::internal_inconsistency, "sigma^M went negative");
                s = 0.0;
            }
            sig_new[j] = s;

            double p;
            if (v == x || v == y) {
                // Every surviving path counted here traverses v.
                p = 0.0;
            } else if (i == j) {
                p = pb_old[j] - pb_from_v[i] - pb_to_v[i];
            } else {
                // At most one ordering of x, y, v is collinear; two at once
                // would force a zero distance between distinct nodes.
                const bool fin = dvx >= 0 && dvy >= 0 && dxy >= 0;
                const bool before = fin && dvx + dxy == dvy;   // v, x, y
                const bool between = fin && dvx + dvy == dxy;  // x, v, y
                const bool after = fin && dxy + dvy == dvx;    // x, y, v
                if (before + between + after > 1)
                    raise(errc::internal_inconsistency, "ambiguous collinear order");
                p = pb_old[j];
                if (between) {
                    // fraction of surviving x->y segments through v
                    const double den = sig_old[j];
                    if (den > 0.0) p -= (sig_to_v[i] * sig_from_v[j] / den) * pb_old[j];
                } else if (before) {
                    // fraction of surviving v->y segments through x
                    const double den = sig_from_v[j];
                    if (den > 0.0) p -= (sig_from_v[i] * sig_old[j] / den) * pb_from_v[j];
                } else {
                    // after: fraction of surviving x->v segments through y
                    const double den = sig_to_v[i];
                    if (after && den > 0.0)
                        p -= (sig_old[j] * sig_to_v[j] / den) * pb_to_v[i];
                }
            }
            if (p < 0.0) {
                if (p < -pb_tol)
                    raise(errc::internal_inconsistency, "PB^M went negative");
                p = 0.0;
            }
            pb_new[j] = p;
        }
    }

    std::swap(cur_, next_);
    members_.push_back(v);
    member_flag_[v] = 1;
}

double contribution_of(const PlacementState& state, NodeId v) {
    return state.contribution(v);
}

namespace {

double safe_fraction(double value, double denom) {
    return denom > 0.0 ? value / denom : 0.0;
}

PlacementResult greedy_phase2(PlacementState& state, std::optional<int> budget,
                              std::optional<double> coverage_target,
                              double pair_count) {
    PlacementResult res;
    res.gbc_initial = state.gbc();
    res.coverage_initial = safe_fraction(res.gbc_initial, pair_count);
    res.coverage_target = coverage_target;

    const double tol = 1e-9 * std::max(1.0, pair_count);
    const double target_gbc = coverage_target ? *coverage_target * pair_count : 0.0;

    for (;;) {
        if (budget && static_cast<int>(res.picks.size()) >= *budget) break;
        if (coverage_target && state.gbc() >= target_gbc - tol) break;
        auto v = state.best_candidate();
        if (!v) break;  // candidates exhausted
        const double gain = state.contribution(*v);
        if (coverage_target && gain <= tol) break;  // target unreachable
        state.exclude(*v);
        res.picks.push_back(*v);
        res.marginal.push_back(gain);
    }

    res.gbc_final = state.gbc();
    res.coverage_final = safe_fraction(res.gbc_final, pair_count);
    res.target_met = !coverage_target || res.gbc_final >= target_gbc - tol;
    return res;
}

PlacementResult place_impl(const DeploymentProblem& problem, int threads) {
    problem.validate();
    const Graph& g = *problem.graph;
    const double pair_count =
        static_cast<double>(g.node_count()) * (g.node_count() - 1);

    const ShortestPathData spd = all_pairs(g, threads);
    const CandidateIndex idx =
        CandidateIndex::make(problem.deployed, problem.candidates, g.node_count());
    PlacementState state(spd, idx, threads);

    std::vector<NodeId> deployed = problem.deployed;
    std::sort(deployed.begin(), deployed.end());
    for (NodeId v : deployed) state.exclude(v);

    return greedy_phase2(state, problem.budget, problem.coverage_target, pair_count);
}

} // namespace

PlacementResult two_phase_place(const DeploymentProblem& problem, int threads) {
    if (!problem.budget)
        raise(errc::invalid_argument, "two_phase_place needs a budget problem");
    return place_impl(problem, threads);
}

PlacementResult place_to_coverage(const DeploymentProblem& problem, int threads) {
    if (!problem.coverage_target)
        raise(errc::invalid_argument, "place_to_coverage needs a coverage target");
    return place_impl(problem, threads);
}

} // namespace gbcdeploy
