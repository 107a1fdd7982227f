#include "gbcdeploy/centrality.hpp"

#include <algorithm>
#include <string>

#include "gbcdeploy/errors.hpp"
#include "gbcdeploy/parallel.hpp"

namespace gbcdeploy {

void NodeGroup::validate(NodeId n) const {
    std::vector<NodeId> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        raise(errc::invalid_argument, "duplicate node in group");
    for (NodeId v : sorted)
        if (v < 0 || v >= n)
            raise(errc::invalid_argument, "group node " + std::to_string(v) + " out of range");
}

CandidateIndex CandidateIndex::make(const std::vector<NodeId>& deployed,
                                    const std::vector<NodeId>& candidates,
                                    NodeId n) {
    CandidateIndex idx;
    idx.position_.assign(n, -1);
    std::vector<std::pair<NodeId, Role>> tagged;
    tagged.reserve(deployed.size() + candidates.size());
    for (NodeId v : deployed) tagged.emplace_back(v, Role::deployed);
    for (NodeId v : candidates) tagged.emplace_back(v, Role::candidate);
    std::sort(tagged.begin(), tagged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < tagged.size(); ++i) {
        auto [v, role] = tagged[i];
        if (v < 0 || v >= n)
            raise(errc::invalid_argument, "node " + std::to_string(v) + " out of range");
        if (i > 0 && tagged[i - 1].first == v) {
            if (tagged[i - 1].second != role)
                raise(errc::overlap, "node " + std::to_string(v) + " is both deployed and candidate");
            raise(errc::invalid_argument, "duplicate node " + std::to_string(v));
        }
        idx.position_[v] = static_cast<int>(idx.nodes_.size());
        idx.nodes_.push_back(v);
        idx.roles_.push_back(role);
    }
    return idx;
}

double sigma_through(const ShortestPathData& spd, NodeId s, NodeId t, NodeId v) {
    const std::int32_t dsv = spd.dist_at(s, v);
    const std::int32_t dvt = spd.dist_at(v, t);
    const std::int32_t dst = spd.dist_at(s, t);
    if (dsv < 0 || dvt < 0 || dst < 0 || dsv + dvt != dst) return 0.0;
    return spd.sigma_at(s, v) * spd.sigma_at(v, t);
}

double betweenness(const ShortestPathData& spd, NodeId v) {
    const NodeId n = spd.n;
    const auto dv = spd.dist_row(v);
    const auto sv = spd.sigma_row(v);
    double total = 0.0;
    for (NodeId s = 0; s < n; ++s) {
        if (dv[s] < 0) continue;
        const auto ds = spd.dist_row(s);
        const auto ss = spd.sigma_row(s);
        const double svs = sv[s];
        const std::int32_t dsv = dv[s];
        for (NodeId t = 0; t < n; ++t) {
            if (t == s || ds[t] <= 0) continue;  // skips unreachable and s==t
            if (dv[t] >= 0 && dsv + dv[t] == ds[t]) total += svs * sv[t] / ss[t];
        }
        // pairs (s,t) with dist 0 cannot exist for s != t; ds[t] <= 0 above
        // also drops the sentinel.
    }
    return total;
}

namespace {

// BFS in G \ blocked, recording hop counts and path counts.
void bfs_avoiding(const Graph& g, NodeId s, const std::vector<char>& blocked,
                  std::vector<std::int32_t>& dist, std::vector<double>& sigma,
                  std::vector<NodeId>& queue) {
    const NodeId n = g.node_count();
    dist.assign(n, ShortestPathData::kUnreachable);
    sigma.assign(n, 0.0);
    queue.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        const std::int32_t du = dist[u];
        for (NodeId w : g.neighbors(u)) {
            if (blocked[w]) continue;
            if (dist[w] == ShortestPathData::kUnreachable) {
                dist[w] = du + 1;
                queue.push_back(w);
            }
            if (dist[w] == du + 1) sigma[w] += sigma[u];
        }
    }
}

} // namespace

double group_betweenness_direct(const Graph& g, const ShortestPathData& spd,
                                const NodeGroup& s_group) {
    const NodeId n = g.node_count();
    s_group.validate(n);
    std::vector<char> in_group(n, 0);
    for (NodeId v : s_group.members) in_group[v] = 1;

    double total = 0.0;
    // Endpoint pairs: every connected ordered pair with s or t in the group
    // is fully covered.
    for (NodeId s = 0; s < n; ++s) {
        const auto ds = spd.dist_row(s);
        for (NodeId t = 0; t < n; ++t) {
            if (t == s || ds[t] < 0) continue;
            if (in_group[s] || in_group[t]) total += 1.0;
        }
    }
    if (s_group.members.empty()) return total;  // total == 0

    // Interior pairs by avoidance: survivors are paths of the original
    // length in G \ S.
    std::vector<std::int32_t> dist;
    std::vector<double> sigma;
    std::vector<NodeId> queue;
    for (NodeId s = 0; s < n; ++s) {
        if (in_group[s]) continue;
        const auto ds = spd.dist_row(s);
        const auto ss = spd.sigma_row(s);
        bfs_avoiding(g, s, in_group, dist, sigma, queue);
        for (NodeId t = 0; t < n; ++t) {
            if (t == s || in_group[t] || ds[t] < 0) continue;
            const double surviving = (dist[t] == ds[t]) ? sigma[t] : 0.0;
            total += (ss[t] - surviving) / ss[t];
        }
    }
    return total;
}

double path_betweenness_pair(const ShortestPathData& spd, NodeId x, NodeId y) {
    const NodeId n = spd.n;
    const std::int32_t dxy = spd.dist_at(x, y);
    if (dxy < 0) return 0.0;
    const auto dx = spd.dist_row(x);
    const auto sx = spd.sigma_row(x);
    const auto dy = spd.dist_row(y);
    const auto sy = spd.sigma_row(y);
    const double sxy = spd.sigma_at(x, y);
    double total = 0.0;
    for (NodeId s = 0; s < n; ++s) {
        if (dx[s] < 0) continue;
        const auto ds = spd.dist_row(s);
        const auto ss = spd.sigma_row(s);
        const std::int32_t head = dx[s] + dxy;
        for (NodeId t = 0; t < n; ++t) {
            if (t == s || ds[t] <= 0 || dy[t] < 0) continue;
            if (head + dy[t] == ds[t]) total += sx[s] * sxy * sy[t] / ss[t];
        }
    }
    return total;
}

MatrixPair init_matrices_definitional(const ShortestPathData& spd,
                                      const CandidateIndex& idx) {
    const int l = idx.size();
    MatrixPair m;
    m.l = l;
    m.sigma_m.resize(static_cast<std::size_t>(l) * l);
    m.pb_m.resize(static_cast<std::size_t>(l) * l);
    for (int i = 0; i < l; ++i) {
        for (int j = 0; j < l; ++j) {
            const NodeId x = idx.nodes()[i];
            const NodeId y = idx.nodes()[j];
            m.sigma_m[static_cast<std::size_t>(i) * l + j] = spd.sigma_at(x, y);
            m.pb_m[static_cast<std::size_t>(i) * l + j] = path_betweenness_pair(spd, x, y);
        }
    }
    return m;
}

MatrixPair init_matrices(const ShortestPathData& spd, const CandidateIndex& idx,
                         int threads) {
    // PB(x,y) factors through the middle node y:
    //   PB(x,y) = sigma(x,y) * sum_s [d(s,x)+d(x,y)=d(s,y)] sigma(s,x) * delta(s,y)
    //   delta(s,y) = sum_{t != s} [d(s,t)=d(s,y)+d(y,t)] sigma(y,t)/sigma(s,t)
    // because d(s,x)+d(x,y)+d(y,t)=d(s,t) splits into the two collinearity
    // tests (triangle inequality forbids one-sided slack). This brings init
    // to O(n^2 l + n l^2) instead of the definitional O(l^2 n^2).
    const NodeId n = spd.n;
    const int l = idx.size();
    MatrixPair m;
    m.l = l;
    m.sigma_m.resize(static_cast<std::size_t>(l) * l);
    m.pb_m.resize(static_cast<std::size_t>(l) * l);
    if (l == 0) return m;

    std::vector<double> inv_sigma(static_cast<std::size_t>(n) * n);
    for (std::size_t i = 0; i < inv_sigma.size(); ++i) {
        const double s = spd.sigma[i];
        inv_sigma[i] = (s > 0.0) ? 1.0 / s : 0.0;
    }

    // delta in transposed (y-major) layout so the pb pass reads contiguously.
    std::vector<double> delta(static_cast<std::size_t>(l) * n);
    parallel_chunks(static_cast<std::size_t>(l), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            const NodeId y = idx.nodes()[j];
            const auto dy = spd.dist_row(y);
            const auto sy = spd.sigma_row(y);
            double* out = delta.data() + j * n;
            for (NodeId s = 0; s < n; ++s) {
                const std::int32_t dsy = dy[s];
                if (dsy < 0) {
                    out[s] = 0.0;
                    continue;
                }
                const auto ds = spd.dist_row(s);
                const double* inv = inv_sigma.data() + static_cast<std::size_t>(s) * n;
                double acc = 0.0;
                for (NodeId t = 0; t < n; ++t) {
                    if (ds[t] == dsy + dy[t]) acc += sy[t] * inv[t];
                }
                if (s == y) acc -= 1.0;  // drop the t == s term it picked up
                out[s] = acc;
            }
        }
    });

    parallel_chunks(static_cast<std::size_t>(l), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const NodeId x = idx.nodes()[i];
            const auto dx = spd.dist_row(x);
            const auto sx = spd.sigma_row(x);
            for (int j = 0; j < l; ++j) {
                const NodeId y = idx.nodes()[j];
                const std::size_t cell = i * l + j;
                m.sigma_m[cell] = spd.sigma_at(x, y);
                const std::int32_t dxy = spd.dist_at(x, y);
                if (dxy < 0) {
                    m.pb_m[cell] = 0.0;
                    continue;
                }
                const auto dy = spd.dist_row(y);
                const double* dl = delta.data() + static_cast<std::size_t>(j) * n;
                double acc = 0.0;
                for (NodeId s = 0; s < n; ++s) {
                    // sigma(s,x) = 0 whenever either distance is a sentinel,
                    // so stray -1 equalities contribute nothing.
                    if (dx[s] + dxy == dy[s]) acc += sx[s] * dl[s];
                }
                m.pb_m[cell] = spd.sigma_at(x, y) * acc;
            }
        }
    });
    return m;
}

} // namespace gbcdeploy
