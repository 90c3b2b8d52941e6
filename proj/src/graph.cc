#include "c2k/graph.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace c2k {

NodeSet NodeSet::all(std::size_t universe) {
    NodeSet s(universe);
    std::fill(s.bits_.begin(), s.bits_.end(), 1);
    s.count_ = universe;
    return s;
}

NodeSet NodeSet::of(std::size_t universe, std::span<const NodeId> members) {
    NodeSet s(universe);
    for (NodeId v : members) {
        s.insert(v);
    }
    return s;
}

void NodeSet::insert(NodeId v) {
    if (v >= bits_.size()) {
        throw std::out_of_range("NodeSet::insert: node " + std::to_string(v) + " outside universe");
    }
    if (!bits_[v]) {
        bits_[v] = 1;
        ++count_;
    }
}

void NodeSet::erase(NodeId v) {
    if (v < bits_.size() && bits_[v]) {
        bits_[v] = 0;
        --count_;
    }
}

std::vector<NodeId> NodeSet::members() const {
    std::vector<NodeId> out;
    out.reserve(count_);
    for (std::size_t v = 0; v < bits_.size(); ++v) {
        if (bits_[v]) {
            out.push_back(static_cast<NodeId>(v));
        }
    }
    return out;
}

NodeSet NodeSet::complement() const {
    NodeSet s(bits_.size());
    for (std::size_t v = 0; v < bits_.size(); ++v) {
        if (!bits_[v]) {
            s.insert(static_cast<NodeId>(v));
        }
    }
    return s;
}

bool NodeSet::intersects(const NodeSet &other) const {
    std::size_t n = std::min(bits_.size(), other.bits_.size());
    for (std::size_t v = 0; v < n; ++v) {
        if (bits_[v] && other.bits_[v]) {
            return true;
        }
    }
    return false;
}

Graph::Graph(std::size_t n) : offsets_(n + 1, 0) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
    std::vector<Edge> directed;
    directed.reserve(edges.size() * 2);
    for (const Edge &e : edges) {
        if (e.u >= n || e.v >= n) {
            throw std::invalid_argument(
                "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") outside node range " +
                std::to_string(n));
        }
        if (e.u == e.v) {
            throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
        }
        directed.push_back({e.u, e.v});
        directed.push_back({e.v, e.u});
    }
    std::sort(directed.begin(), directed.end());
    directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

    Graph g(n);
    g.adjacency_.reserve(directed.size());
    for (const Edge &e : directed) {
        g.offsets_[e.u + 1]++;
        g.adjacency_.push_back(e.v);
    }
    for (std::size_t v = 0; v < n; ++v) {
        g.offsets_[v + 1] += g.offsets_[v];
    }
    return g;
}

std::size_t Graph::max_degree() const {
    std::size_t best = 0;
    for (std::size_t v = 0; v < node_count(); ++v) {
        best = std::max(best, degree(static_cast<NodeId>(v)));
    }
    return best;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u >= node_count() || v >= node_count()) {
        return false;
    }
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::neighbor_index(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) {
        return nb.size();
    }
    return static_cast<std::size_t>(it - nb.begin());
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::size_t u = 0; u < node_count(); ++u) {
        for (NodeId v : neighbors(static_cast<NodeId>(u))) {
            if (u < v) {
                out.push_back({static_cast<NodeId>(u), v});
            }
        }
    }
    return out;
}

bool Graph::check_invariants() const {
    std::size_t n = node_count();
    for (std::size_t u = 0; u < n; ++u) {
        auto nb = neighbors(static_cast<NodeId>(u));
        for (std::size_t j = 0; j < nb.size(); ++j) {
            if (nb[j] >= n || nb[j] == u) {
                return false;
            }
            if (j > 0 && nb[j - 1] >= nb[j]) {
                return false;
            }
            if (!has_edge(nb[j], static_cast<NodeId>(u))) {
                return false;
            }
        }
    }
    return true;
}

Coloring::Coloring(std::vector<std::uint8_t> colors, int num_colors)
    : colors_(std::move(colors)), num_colors_(num_colors) {
    if (num_colors < 1 || num_colors > 255) {
        throw std::invalid_argument("Coloring: num_colors out of range");
    }
    for (auto c : colors_) {
        if (c >= num_colors) {
            throw std::invalid_argument("Coloring: color " + std::to_string(c) + " >= " + std::to_string(num_colors));
        }
    }
}

Coloring Coloring::uniform(std::size_t n, int color, int num_colors) {
    return Coloring(std::vector<std::uint8_t>(n, static_cast<std::uint8_t>(color)), num_colors);
}

void Coloring::set(NodeId v, int color) {
    if (color < 0 || color >= num_colors_) {
        throw std::invalid_argument("Coloring::set: color out of range");
    }
    colors_.at(v) = static_cast<std::uint8_t>(color);
}

Graph induced_subgraph(const Graph &g, const NodeSet &keep) {
    if (keep.universe() != g.node_count()) {
        throw std::invalid_argument("induced_subgraph: keep set universe does not match graph");
    }
    std::vector<Edge> kept;
    for (const Edge &e : g.edges()) {
        if (keep.contains(e.u) && keep.contains(e.v)) {
            kept.push_back(e);
        }
    }
    return Graph::from_edges(g.node_count(), kept);
}

Graph edge_union(const Graph &a, const Graph &b) {
    if (a.node_count() != b.node_count()) {
        throw std::invalid_argument("edge_union: node counts differ");
    }
    auto edges = a.edges();
    auto more = b.edges();
    edges.insert(edges.end(), more.begin(), more.end());
    return Graph::from_edges(a.node_count(), edges);
}

Graph with_extra_nodes(const Graph &g, std::size_t extra) {
    auto edges = g.edges();
    return Graph::from_edges(g.node_count() + extra, edges);
}

Graph disjoint_union(const Graph &a, const Graph &b) {
    auto edges = a.edges();
    auto shift = static_cast<NodeId>(a.node_count());
    for (const Edge &e : b.edges()) {
        edges.push_back({e.u + shift, e.v + shift});
    }
    return Graph::from_edges(a.node_count() + b.node_count(), edges);
}

Graph read_edge_list(std::istream &in) {
    std::vector<Edge> edges;
    std::size_t declared = 0;
    bool has_declared = false;
    std::size_t max_id_plus_one = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) {
            continue;
        }
        if (first[0] == '#') {
            std::string key;
            if (ss >> key && key == "nodes") {
                if (!(ss >> declared)) {
                    throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": bad nodes header");
                }
                has_declared = true;
            }
            continue;
        }
        long long u = -1;
        long long v = -1;
        std::istringstream pair(line);
        if (!(pair >> u >> v) || u < 0 || v < 0) {
            throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": expected 'u v'");
        }
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
        max_id_plus_one = std::max<std::size_t>(max_id_plus_one, static_cast<std::size_t>(std::max(u, v)) + 1);
    }
    std::size_t n = has_declared ? declared : max_id_plus_one;
    if (n < max_id_plus_one) {
        throw std::invalid_argument("edge list: node id exceeds declared node count");
    }
    return Graph::from_edges(n, edges);
}

Graph read_edge_list_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open edge list '" + path + "'");
    }
    return read_edge_list(in);
}

void write_edge_list(std::ostream &out, const Graph &g) {
    out << "# nodes " << g.node_count() << "\n";
    for (const Edge &e : g.edges()) {
        out << e.u << " " << e.v << "\n";
    }
}

void write_edge_list_file(const std::string &path, const Graph &g) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write edge list '" + path + "'");
    }
    write_edge_list(out, g);
}

bool power_at_most(std::uint64_t base, int exponent, std::uint64_t bound) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < exponent; ++i) {
        acc *= base;
        if (acc > bound) {
            return false;
        }
    }
    return acc <= bound;
}

}  // namespace c2k
