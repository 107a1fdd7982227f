#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace gbcdeploy {

using NodeId = std::int32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph over dense node ids 0..n-1, immutable after
/// construction. Adjacency is CSR with sorted neighbor lists.
class Graph {
public:
    /// Builds a graph from (u, v) pairs. Rejects self-loops and duplicate
    /// edges ((u,v) and (v,u) are the same edge). node_count may exceed the
    /// largest endpoint; extra nodes are isolated.
    static Graph from_edges(NodeId node_count, const std::vector<Edge>& edges);

    NodeId node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
    }

    NodeId degree(NodeId u) const {
        return static_cast<NodeId>(offsets_[u + 1] - offsets_[u]);
    }

    /// Edges normalized to u < v, sorted lexicographically.
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(NodeId u, NodeId v) const;

    bool is_connected() const;

private:
    Graph() = default;

    NodeId n_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> adj_;
    std::vector<Edge> edges_;
};

/// Parses the edge-list text format: one "u v" pair per line, '#' starts a
/// comment line, blank lines ignored, LF or CRLF. Node ids must be
/// non-negative integers; n = max id + 1. Errors carry the 1-based line
/// number.
Graph parse_edge_list(std::istream& in);

/// Relabels arbitrary (possibly sparse) non-negative ids to dense 0..n-1 in
/// first-appearance order. Returns the dense graph and the old->new mapping
/// as (old_id, new_id) pairs sorted by old id.
std::pair<Graph, std::vector<std::pair<std::int64_t, NodeId>>>
relabel_edge_list(std::istream& in);

} // namespace gbcdeploy
