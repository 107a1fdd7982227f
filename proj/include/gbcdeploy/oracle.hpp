#pragma once

#include <cstdint>
#include <vector>

#include "gbcdeploy/graph.hpp"
#include "gbcdeploy/placement.hpp"

namespace gbcdeploy {

// Desk-scale brute-force references. These deliberately share no code with
// the incremental path: GBC via explicit path enumeration, optima via
// exhaustive subset search over the avoidance recount.

inline constexpr std::uint64_t kDefaultPathLimit = 1'000'000;
inline constexpr std::uint64_t kDefaultSubsetLimit = 1'000'000;

/// All distinct shortest s->t paths as node sequences; s != t required.
/// Throws path_explosion past the limit.
std::vector<std::vector<NodeId>> enumerate_shortest_paths(
    const Graph& g, NodeId s, NodeId t, std::uint64_t limit = kDefaultPathLimit);

/// GBC(S) computed literally over enumerated paths: per ordered pair, the
/// fraction of shortest paths touching S (endpoint pairs count 1).
double gbc_enumeration_oracle(const Graph& g, const NodeGroup& s_group,
                              std::uint64_t limit = kDefaultPathLimit);

struct OptResult {
    std::vector<NodeId> best_set;
    double best_value = 0.0;
    std::uint64_t evaluated = 0;
};

/// Exhaustive max of GBC(D u X) - GBC(D) over k-subsets X of C, ties broken
/// by lexicographically smallest set. Throws search_too_large when
/// C(|C|, k) exceeds the limit.
OptResult optimal_k_subset(const DeploymentProblem& problem,
                           std::uint64_t max_subsets = kDefaultSubsetLimit);

struct RatioCheck {
    double greedy_value = 0.0;
    double opt_value = 0.0;
    double ratio = 1.0;
    double bound = 0.0;       // 1 - (1 - 1/k)^k, which implies the 1 - 1/e floor
    bool pass = true;
    std::uint64_t evaluated = 0;
};

/// greedy-vs-optimum bound for a set value (ratio = 1 when opt <= 0).
RatioCheck check_ratio(double greedy_value, double opt_value, int k,
                       std::uint64_t evaluated = 0);

/// Runs the two-phase greedy and the exhaustive optimum on the same budget
/// problem and checks ratio >= 1 - (1 - 1/k)^k - 1e-9.
RatioCheck approx_ratio_check(const DeploymentProblem& problem);

} // namespace gbcdeploy
