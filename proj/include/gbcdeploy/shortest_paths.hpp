#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gbcdeploy/graph.hpp"

namespace gbcdeploy {

/// All-pairs hop distances and shortest-path counts.
///
/// Counts are doubles: they stay exact up to 2^53 paths and all downstream
/// consumers use ratios, so precision beyond that is a documented caveat
/// rather than a failure mode. dist(x,x) = 0 and sigma(x,x) = 1; unreachable
/// pairs have dist = kUnreachable and sigma = 0.
struct ShortestPathData {
    static constexpr std::int32_t kUnreachable = -1;

    NodeId n = 0;
    std::vector<std::int32_t> dist;
    std::vector<double> sigma;

    std::int32_t dist_at(NodeId s, NodeId t) const {
        return dist[static_cast<std::size_t>(s) * n + t];
    }
    double sigma_at(NodeId s, NodeId t) const {
        return sigma[static_cast<std::size_t>(s) * n + t];
    }
    bool reachable(NodeId s, NodeId t) const {
        return dist_at(s, t) != kUnreachable;
    }

    std::span<const std::int32_t> dist_row(NodeId s) const {
        return {dist.data() + static_cast<std::size_t>(s) * n, static_cast<std::size_t>(n)};
    }
    std::span<const double> sigma_row(NodeId s) const {
        return {sigma.data() + static_cast<std::size_t>(s) * n, static_cast<std::size_t>(n)};
    }

    /// Ordered pairs (s,t), s != t, with finite distance. Equals n(n-1) on
    /// connected graphs.
    std::int64_t connected_ordered_pairs() const;
};

/// BFS from s, writing hop counts and path counts for the whole row.
/// sigma accumulates over tree/cross edges (u,w) with dist(w) = dist(u)+1.
void bfs_single_source(const Graph& g, NodeId s,
                       std::span<std::int32_t> dist_row,
                       std::span<double> sigma_row);

/// Runs bfs_single_source from every node. Rows are independent, so
/// threads > 1 partitions sources and the result is value-identical to the
/// sequential run.
ShortestPathData all_pairs(const Graph& g, int threads = 1);

} // namespace gbcdeploy
