#pragma once

#include <optional>
#include <vector>

#include "gbcdeploy/centrality.hpp"
#include "gbcdeploy/graph.hpp"
#include "gbcdeploy/shortest_paths.hpp"

namespace gbcdeploy {

/// An incremental-deployment instance. Exactly one of budget or
/// coverage_target is set. The graph is borrowed and must outlive the
/// problem.
struct DeploymentProblem {
    const Graph* graph = nullptr;
    std::vector<NodeId> deployed;
    std::vector<NodeId> candidates;
    std::optional<int> budget;
    std::optional<double> coverage_target;

    static DeploymentProblem with_budget(const Graph& g,
                                         std::vector<NodeId> deployed,
                                         std::vector<NodeId> candidates,
                                         int k);
    static DeploymentProblem with_coverage(const Graph& g,
                                           std::vector<NodeId> deployed,
                                           std::vector<NodeId> candidates,
                                           double target);

    /// Throws on overlap, out-of-range ids, bad budget/target.
    void validate() const;
};

/// sigma^M / PB^M state for a growing exclusion set M. Single writer;
/// exclude() is a pure function from the old matrices to the new ones
/// (every read inside one call sees the pre-call snapshot).
class PlacementState {
public:
    /// Starts from M = empty with freshly initialized matrices.
    PlacementState(const ShortestPathData& spd, const CandidateIndex& idx,
                   int threads = 1);

    /// Starts from M = empty with precomputed initial matrices (must match
    /// idx). Lets callers share one init_matrices result across states.
    PlacementState(const ShortestPathData& spd, const CandidateIndex& idx,
                   MatrixPair initial);

    /// Adds v to M: removes every surviving shortest path through v from
    /// both matrices and adds v's contribution to the running GBC.
    /// Throws v_not_in_index / v_already_excluded.
    void exclude(NodeId v);

    /// PB^M(v,v): the marginal contribution of v to GBC(M).
    double contribution(NodeId v) const;

    /// Highest-contribution candidate not yet in M. Contributions within
    /// 1e-9 * n(n-1) of the maximum count as tied and the lowest node id
    /// wins, so drift cannot flip a tie that exact arithmetic would see.
    /// Empty when every candidate is already excluded.
    std::optional<NodeId> best_candidate() const;

    double gbc() const { return gbc_m_; }
    const std::vector<NodeId>& members() const { return members_; }
    bool is_member(NodeId v) const;
    const MatrixPair& matrices() const { return cur_; }
    const CandidateIndex& index() const { return *idx_; }

private:
    const ShortestPathData* spd_;
    const CandidateIndex* idx_;
    MatrixPair cur_;
    MatrixPair next_;
    std::vector<NodeId> members_;
    std::vector<char> member_flag_;
    double gbc_m_ = 0.0;
};

/// PB^M(v,v) of the current state; throws v_not_in_index.
double contribution_of(const PlacementState& state, NodeId v);

struct PlacementResult {
    std::vector<NodeId> picks;
    std::vector<double> marginal;
    double gbc_initial = 0.0;
    double gbc_final = 0.0;
    double coverage_initial = 0.0;
    double coverage_final = 0.0;
    /// Set for coverage-target runs.
    std::optional<double> coverage_target;
    bool target_met = true;
};

/// Two-phase deployment. Phase 1 excludes every deployed node (ascending
/// id); phase 2 greedily picks k candidates by maximal PB^M(v,v), lowest id
/// on ties. The additional coverage is at least (1 - 1/e) of the optimal
/// k-subset's.
PlacementResult two_phase_place(const DeploymentProblem& problem, int threads = 1);

/// Same greedy loop but stops once GBC(M) >= target * n(n-1), candidates run
/// out, or no remaining candidate contributes (the target is then
/// unreachable; submodularity makes later gains impossible).
PlacementResult place_to_coverage(const DeploymentProblem& problem, int threads = 1);

} // namespace gbcdeploy
