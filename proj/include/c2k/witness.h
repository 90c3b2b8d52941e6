#ifndef C2K_WITNESS_H
#define C2K_WITNESS_H

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "c2k/graph.h"
#include "json.hpp"

namespace c2k {

/// S, W_0 = V_0, V_1, ..., V_{k-1}: pairwise disjoint, every w in W_0 with at
/// least k^2 neighbors in S.
struct LevelSets {
    int k = 2;
    NodeSet S;
    std::vector<NodeSet> levels;

    /// Throws std::invalid_argument when an invariant fails on g.
    void validate(const Graph &g) const;
    /// Level index of v, or -1.
    int level_of(NodeId v) const;
    nlohmann::json to_json() const;
    static LevelSets from_json(const nlohmann::json &j, std::size_t n);
};

/// Edge {s, w} with s in S and w in W_0.
struct BipartiteEdge {
    NodeId s;
    NodeId w;
    bool operator==(const BipartiteEdge &) const = default;
    auto operator<=>(const BipartiteEdge &) const = default;
};

/// Sorted, duplicate-free set of S-W_0 edges.
class EdgeSubset {
   public:
    EdgeSubset() = default;
    explicit EdgeSubset(std::vector<BipartiteEdge> edges);

    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    bool contains(const BipartiteEdge &e) const;
    std::span<const BipartiteEdge> edges() const { return edges_; }
    /// Degree of every node id in [0, n) within this edge set.
    std::vector<std::uint32_t> degrees(std::size_t n) const;
    std::size_t degree_of_s(NodeId s) const;
    std::size_t degree_of_w(NodeId w) const;
    bool subset_of(const EdgeSubset &other) const;
    nlohmann::json to_json() const;

   private:
    std::vector<BipartiteEdge> edges_;
};

/// Sparsification data of one node v in V_i (i >= 1), or the OUT set of a
/// node in W_0 (i = 0).
struct NodeFamily {
    int level = 0;
    int q = 0;
    /// H(v) with, for each edge, the lowest-id neighbor v' in V_{i-1} whose
    /// OUT(v') contributed it.
    EdgeSubset H;
    std::vector<NodeId> provenance;
    /// chain[g] = H(v, g) for g = 0..2q.
    std::vector<EdgeSubset> chain;
    EdgeSubset out;

    NodeId provenance_of(const BipartiteEdge &e) const;
};

struct SparsifiedFamily {
    int k = 2;
    std::map<NodeId, NodeFamily> nodes;

    const NodeFamily &at(NodeId v) const;
    /// Nodes v (levels >= 1) with H(v, 0) non-empty, ascending by level then id.
    std::vector<NodeId> nonempty_base() const;
};

/// Degree threshold 2^{i-1}(k-1) of the level-i filters.
std::uint64_t out_degree_cap(int i, int k);

SparsifiedFamily build_sparsification(const Graph &g, const LevelSets &ls);

struct CycleWitness {
    NodeId v = 0;
    int level = 0;
    /// Cycle w, ..., s (the path P), w'', v''_1, ..., v''_{i-1}, v, v'_{i-1}, ..., v'_1.
    std::vector<NodeId> cycle;
    std::vector<NodeId> P;
    /// w, v'_1, ..., v'_{i-1}, v.
    std::vector<NodeId> P_prime;
    /// s, w'', v''_1, ..., v''_{i-1}, v.
    std::vector<NodeId> P_double_prime;

    nlohmann::json to_json() const;
};

/// Builds the 2k-cycle through S for v in V_i with H(v, 0) non-empty. Returns
/// nothing when H(v, 0) is empty. The result is always validated; a failed
/// validation throws std::logic_error.
std::optional<CycleWitness> extract_cycle(const Graph &g, const LevelSets &ls, NodeId v, const SparsifiedFamily &fam);

struct W0Bound {
    std::size_t size = 0;
    std::uint64_t bound = 0;
    bool holds = true;
};

/// W_0(v) = {w in W_0 : some path (w, v_1, ..., v_i = v) with v_j in V_j}.
std::vector<NodeId> w0_of(const Graph &g, const LevelSets &ls, NodeId v);
/// |W_0(v)| against 2^{i-1}(k-1)|S|.
W0Bound bound_W0v(const Graph &g, const LevelSets &ls, NodeId v);

/// Peels vertices of degree < k from the bipartite graph of `edges`, then
/// greedily grows a simple path of 2k vertices from the lowest core vertex,
/// always taking the lowest unused core neighbor. Throws std::runtime_error
/// when the core is empty.
std::vector<NodeId> degeneracy_path_grow(const EdgeSubset &edges, int k);

}  // namespace c2k

#endif
