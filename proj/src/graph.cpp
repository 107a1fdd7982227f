#include "gbcdeploy/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <string>
#include <unordered_map>

#include "gbcdeploy/errors.hpp"

namespace gbcdeploy {

Graph Graph::from_edges(NodeId node_count, const std::vector<Edge>& edges) {
    if (node_count < 1) raise(errc::invalid_argument, "graph needs at least one node");
    Graph g;
    g.n_ = node_count;
    g.edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= node_count || v >= node_count)
            raise(errc::invalid_argument, "edge endpoint out of range");
        if (u == v) raise(errc::reject_self_loop, "self-loop on node " + std::to_string(u));
        if (u > v) std::swap(u, v);
        g.edges_.emplace_back(u, v);
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    if (std::adjacent_find(g.edges_.begin(), g.edges_.end()) != g.edges_.end())
        raise(errc::reject_duplicate, "duplicate edge");

    std::vector<std::size_t> deg(node_count, 0);
    for (auto [u, v] : g.edges_) {
        ++deg[u];
        ++deg[v];
    }
    g.offsets_.assign(node_count + 1, 0);
    for (NodeId u = 0; u < node_count; ++u) g.offsets_[u + 1] = g.offsets_[u] + deg[u];
    g.adj_.resize(g.offsets_.back());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : g.edges_) {
        g.adj_[cursor[u]++] = v;
        g.adj_[cursor[v]++] = u;
    }
    for (NodeId u = 0; u < node_count; ++u)
        std::sort(g.adj_.begin() + g.offsets_[u], g.adj_.begin() + g.offsets_[u + 1]);
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::is_connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(n_, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    NodeId reached = 1;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId w : neighbors(u)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n_;
}

namespace {

struct RawLine {
    std::int64_t u, v;
    std::size_t line_no;
};

// Shared line scanner for parse_edge_list and relabel_edge_list.
std::vector<RawLine> scan_lines(std::istream& in) {
    std::vector<RawLine> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t pos = line.find_first_not_of(" \t");
        if (pos == std::string::npos || line[pos] == '#') continue;

        const char* p = line.data();
        const char* end = p + line.size();
        std::int64_t vals[2];
        for (int i = 0; i < 2; ++i) {
            while (p < end && (*p == ' ' || *p == '\t')) ++p;
            auto [next, ec] = std::from_chars(p, end, vals[i]);
            if (ec != std::errc() || next == p)
                raise(errc::parse_error,
                      "line " + std::to_string(line_no) + ": expected two integers");
            if (vals[i] < 0)
                raise(errc::parse_error,
                      "line " + std::to_string(line_no) + ": negative node id");
            p = next;
        }
        while (p < end && (*p == ' ' || *p == '\t')) ++p;
        if (p != end)
            raise(errc::parse_error,
                  "line " + std::to_string(line_no) + ": trailing characters");
        out.push_back({vals[0], vals[1], line_no});
    }
    return out;
}

} // namespace

Graph parse_edge_list(std::istream& in) {
    auto lines = scan_lines(in);
    std::int64_t max_id = 0;
    for (const auto& l : lines) {
        if (l.u == l.v)
            raise(errc::reject_self_loop,
                  "line " + std::to_string(l.line_no) + ": self-loop on node " +
                      std::to_string(l.u));
        max_id = std::max({max_id, l.u, l.v});
    }
    if (max_id > 50'000'000)
        raise(errc::parse_error, "node id too large; relabel sparse ids first");

    std::vector<Edge> edges;
    edges.reserve(lines.size());
    for (const auto& l : lines)
        edges.emplace_back(static_cast<NodeId>(l.u), static_cast<NodeId>(l.v));

    // Re-check duplicates here to report the offending line.
    std::vector<std::pair<Edge, std::size_t>> keyed;
    keyed.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        Edge e = edges[i];
        if (e.first > e.second) std::swap(e.first, e.second);
        keyed.emplace_back(e, lines[i].line_no);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 1; i < keyed.size(); ++i) {
        if (keyed[i].first == keyed[i - 1].first)
            raise(errc::reject_duplicate,
                  "line " + std::to_string(keyed[i].second) + ": duplicate edge " +
                      std::to_string(keyed[i].first.first) + "-" +
                      std::to_string(keyed[i].first.second));
    }
    return Graph::from_edges(static_cast<NodeId>(max_id + 1), edges);
}

std::pair<Graph, std::vector<std::pair<std::int64_t, NodeId>>>
relabel_edge_list(std::istream& in) {
    auto lines = scan_lines(in);
    std::unordered_map<std::int64_t, NodeId> map;
    std::vector<Edge> edges;
    edges.reserve(lines.size());
    auto intern = [&](std::int64_t id) {
        auto [it, fresh] = map.emplace(id, static_cast<NodeId>(map.size()));
        (void)fresh;
        return it->second;
    };
    for (const auto& l : lines) {
        if (l.u == l.v)
            raise(errc::reject_self_loop,
                  "line " + std::to_string(l.line_no) + ": self-loop on node " +
                      std::to_string(l.u));
        const NodeId u = intern(l.u);  // sequenced: ids follow first appearance
        const NodeId v = intern(l.v);
        edges.emplace_back(u, v);
    }
    if (map.empty()) raise(errc::empty_input, "no edges in input");
    std::vector<std::pair<std::int64_t, NodeId>> mapping(map.begin(), map.end());
    std::sort(mapping.begin(), mapping.end());
    return {Graph::from_edges(static_cast<NodeId>(map.size()), edges), std::move(mapping)};
}

} // namespace gbcdeploy
