#ifndef C2K_GRAPH_H
#define C2K_GRAPH_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace c2k {

/// File could not be opened for reading or writing.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

using NodeId = std::uint32_t;

struct Edge {
    NodeId u;
    NodeId v;
    bool operator==(const Edge &) const = default;
    auto operator<=>(const Edge &) const = default;
};

/// Membership bitmap over the node index space [0, n).
class NodeSet {
   public:
    NodeSet() = default;
    explicit NodeSet(std::size_t universe) : bits_(universe, 0) {}
    static NodeSet all(std::size_t universe);
    static NodeSet of(std::size_t universe, std::span<const NodeId> members);

    std::size_t universe() const { return bits_.size(); }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool contains(NodeId v) const { return v < bits_.size() && bits_[v] != 0; }
    void insert(NodeId v);
    void erase(NodeId v);
    std::vector<NodeId> members() const;
    NodeSet complement() const;
    bool intersects(const NodeSet &other) const;
    bool operator==(const NodeSet &other) const { return bits_ == other.bits_; }

   private:
    std::vector<std::uint8_t> bits_;
    std::size_t count_ = 0;
};

/// Immutable simple undirected graph in canonical CSR form: neighbor lists
/// are sorted ascending, symmetric, free of self-loops and duplicates.
class Graph {
   public:
    Graph() = default;
    explicit Graph(std::size_t n);

    /// Builds a canonical graph. Duplicate pairs (in either orientation) are
    /// merged; self-loops and out-of-range endpoints throw std::invalid_argument.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges);

    std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return adjacency_.size() / 2; }
    std::span<const NodeId> neighbors(NodeId v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
    std::size_t max_degree() const;
    bool has_edge(NodeId u, NodeId v) const;

    /// Position of `v` inside neighbors(u), or degree(u) when absent.
    std::size_t neighbor_index(NodeId u, NodeId v) const;
    /// Offset of u's first neighbor slot in the flat adjacency array; directed
    /// edge (u -> neighbors(u)[j]) has index adjacency_offset(u) + j.
    std::size_t adjacency_offset(NodeId u) const { return offsets_[u]; }
    std::size_t directed_edge_count() const { return adjacency_.size(); }

    /// Edges with u < v, sorted.
    std::vector<Edge> edges() const;
    bool check_invariants() const;
    bool operator==(const Graph &other) const = default;

   private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> adjacency_;
};

/// Vertex coloring with colors in [0, num_colors).
class Coloring {
   public:
    Coloring() = default;
    Coloring(std::vector<std::uint8_t> colors, int num_colors);
    static Coloring uniform(std::size_t n, int color, int num_colors);

    int num_colors() const { return num_colors_; }
    std::size_t size() const { return colors_.size(); }
    int operator[](NodeId v) const { return colors_[v]; }
    void set(NodeId v, int color);
    const std::vector<std::uint8_t> &values() const { return colors_; }

   private:
    std::vector<std::uint8_t> colors_;
    int num_colors_ = 0;
};

/// Subgraph induced by `keep`. Node ids are preserved; nodes outside `keep`
/// become isolated so every call shares one index space.
Graph induced_subgraph(const Graph &g, const NodeSet &keep);

/// Union of two graphs on the same node count.
Graph edge_union(const Graph &a, const Graph &b);

/// Appends `extra` isolated nodes.
Graph with_extra_nodes(const Graph &g, std::size_t extra);

/// Disjoint union; nodes of `b` are shifted by a.node_count().
Graph disjoint_union(const Graph &a, const Graph &b);

/// Edge-list text format: one "u v" pair per line (0-based). Blank lines and
/// lines starting with '#' are skipped. The node count is 1 + max id unless a
/// "# nodes N" header line is present.
Graph read_edge_list(std::istream &in);
Graph read_edge_list_file(const std::string &path);
void write_edge_list(std::ostream &out, const Graph &g);
void write_edge_list_file(const std::string &path, const Graph &g);

/// Exact test deg^k <= n, avoiding floating-point n^{1/k}.
bool power_at_most(std::uint64_t base, int exponent, std::uint64_t bound);

}  // namespace c2k

#endif
