#pragma once

#include <vector>

#include "gbcdeploy/graph.hpp"
#include "gbcdeploy/shortest_paths.hpp"

namespace gbcdeploy {

/// A group of distinct nodes (the S of GBC(S)).
struct NodeGroup {
    std::vector<NodeId> members;

    /// Throws on duplicates or out-of-range ids.
    void validate(NodeId n) const;
};

enum class Role : std::uint8_t { deployed, candidate };

/// The l = |C u D| nodes the placement matrices are restricted to, sorted
/// ascending, with a role per node and a node -> 0..l-1 position map.
class CandidateIndex {
public:
    /// deployed and candidates must be disjoint; ids must be < n.
    static CandidateIndex make(const std::vector<NodeId>& deployed,
                               const std::vector<NodeId>& candidates,
                               NodeId n);

    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<NodeId>& nodes() const { return nodes_; }
    Role role(int pos) const { return roles_[pos]; }

    bool contains(NodeId v) const {
        return v >= 0 && v < static_cast<NodeId>(position_.size()) && position_[v] >= 0;
    }
    /// Position of v in nodes(), or -1.
    int position_of(NodeId v) const {
        return contains(v) ? position_[v] : -1;
    }

private:
    std::vector<NodeId> nodes_;
    std::vector<Role> roles_;
    std::vector<int> position_;
};

/// sigma^M and PB^M restricted to C u D, in row-major l x l layout.
/// Entry (x,y) of pb is ordered: paths traversing x before y.
struct MatrixPair {
    int l = 0;
    std::vector<double> sigma_m;
    std::vector<double> pb_m;

    double sigma_at(int i, int j) const { return sigma_m[static_cast<std::size_t>(i) * l + j]; }
    double pb_at(int i, int j) const { return pb_m[static_cast<std::size_t>(i) * l + j]; }
};

/// sigma_{s,t}(v): shortest s->t paths through v. Equals sigma(s,v)*sigma(v,t)
/// when d(s,v) + d(v,t) = d(s,t) with everything finite, else 0. The
/// sigma(x,x) = 1 convention makes endpoints count: sigma_{s,t}(s) =
/// sigma_{s,t}(t) = sigma_{s,t}.
double sigma_through(const ShortestPathData& spd, NodeId s, NodeId t, NodeId v);

/// BC(v): sum of sigma_{s,t}(v)/sigma_{s,t} over ordered pairs s != t, with
/// 0/0 treated as 0 for disconnected pairs.
double betweenness(const ShortestPathData& spd, NodeId v);

/// GBC(S): fraction of shortest paths touching at least one member of S,
/// summed over ordered pairs. Computed by the avoidance method: count paths
/// of the original length that survive in G \ S and subtract. This is the
/// independent reference every incremental result is checked against.
double group_betweenness_direct(const Graph& g, const ShortestPathData& spd,
                                const NodeGroup& s_group);

/// PB(x,y): fraction of shortest paths traversing x and then y. x == y
/// reduces to betweenness(x).
double path_betweenness_pair(const ShortestPathData& spd, NodeId x, NodeId y);

/// Initial sigma^M and PB^M for M = empty: sigma entries copied from spd,
/// pb entries equal to PB(x,y). Uses an O(n^2 l + n l^2) two-stage
/// decomposition of the pair formula; init_matrices_definitional is the
/// contract it is equivalence-tested against.
MatrixPair init_matrices(const ShortestPathData& spd, const CandidateIndex& idx,
                         int threads = 1);

/// The definitional O(l^2 n^2) double loop over ordered (s,t) per cell.
MatrixPair init_matrices_definitional(const ShortestPathData& spd,
                                      const CandidateIndex& idx);

} // namespace gbcdeploy
