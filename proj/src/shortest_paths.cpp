#include "gbcdeploy/shortest_paths.hpp"

#include <cassert>

#include "gbcdeploy/parallel.hpp"

namespace gbcdeploy {

std::int64_t ShortestPathData::connected_ordered_pairs() const {
    std::int64_t count = 0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist[i] > 0) ++count;  // excludes the zero diagonal and sentinels
    return count;
}

void bfs_single_source(const Graph& g, NodeId s,
                       std::span<std::int32_t> dist_row,
                       std::span<double> sigma_row) {
    const NodeId n = g.node_count();
    assert(dist_row.size() == static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) {
        dist_row[i] = ShortestPathData::kUnreachable;
        sigma_row[i] = 0.0;
    }
    dist_row[s] = 0;
    sigma_row[s] = 1.0;

    std::vector<NodeId> queue;
    queue.reserve(n);
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        const std::int32_t du = dist_row[u];
        for (NodeId w : g.neighbors(u)) {
            if (dist_row[w] == ShortestPathData::kUnreachable) {
                dist_row[w] = du + 1;
                queue.push_back(w);
            }
            if (dist_row[w] == du + 1) sigma_row[w] += sigma_row[u];
        }
    }
}

ShortestPathData all_pairs(const Graph& g, int threads) {
    const NodeId n = g.node_count();
    ShortestPathData spd;
    spd.n = n;
    spd.dist.resize(static_cast<std::size_t>(n) * n);
    spd.sigma.resize(static_cast<std::size_t>(n) * n);
    parallel_chunks(static_cast<std::size_t>(n), threads,
                    [&](std::size_t lo, std::size_t hi) {
                        for (std::size_t s = lo; s < hi; ++s) {
                            const std::size_t off = s * n;
                            bfs_single_source(
                                g, static_cast<NodeId>(s),
                                {spd.dist.data() + off, static_cast<std::size_t>(n)},
                                {spd.sigma.data() + off, static_cast<std::size_t>(n)});
                        }
                    });
    return spd;
}

} // namespace gbcdeploy
