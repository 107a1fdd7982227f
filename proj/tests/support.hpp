#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gbcdeploy/evolution.hpp"
#include "gbcdeploy/graph.hpp"
#include "gbcdeploy/rng.hpp"

namespace testsupport {

using gbcdeploy::Edge;
using gbcdeploy::Graph;
using gbcdeploy::NodeId;

inline Graph make_graph(NodeId n, const std::vector<Edge>& edges) {
    return Graph::from_edges(n, edges);
}

inline Graph p3() { return make_graph(3, {{0, 1}, {1, 2}}); }
inline Graph c4() { return make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }
inline Graph star4() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}}); }
inline Graph fig1() {
    return make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 3}});
}

inline Graph parse(const std::string& text) {
    std::istringstream in(text);
    return gbcdeploy::parse_edge_list(in);
}

/// 53-bit uniform double in [0,1).
inline double uniform01(gbcdeploy::Xoshiro256ss& rng) {
    return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

/// Erdos-Renyi G(n, p). Test-only generator.
inline Graph er_graph(NodeId n, double p, gbcdeploy::Xoshiro256ss& rng) {
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (uniform01(rng) < p) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

inline Graph ba_graph(NodeId n, int m_attach, std::uint64_t seed) {
    gbcdeploy::Xoshiro256ss rng(seed);
    return gbcdeploy::ba_grow(std::nullopt, n, m_attach, rng);
}

/// Random k-subset of 0..n-1 (k <= n), sorted.
inline std::vector<NodeId> random_subset(NodeId n, int k, gbcdeploy::Xoshiro256ss& rng) {
    std::vector<NodeId> pool(n);
    for (NodeId i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
        const auto j = i + static_cast<int>(rng.next_below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    std::vector<NodeId> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

/// The tolerance scale used throughout: 1e-9 * n(n-1).
inline double pair_tol(NodeId n) { return 1e-9 * static_cast<double>(n) * (n - 1); }

} // namespace testsupport
