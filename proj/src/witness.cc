#include "c2k/witness.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "c2k/oracle.h"

namespace c2k {

void LevelSets::validate(const Graph &g) const {
    const std::size_t n = g.node_count();
    if (k < 2) {
        throw std::invalid_argument("level sets need k >= 2");
    }
    if (levels.size() != static_cast<std::size_t>(k)) {
        throw std::invalid_argument("level sets need exactly k levels (W_0, V_1, ..., V_{k-1})");
    }
    if (S.universe() != n) {
        throw std::invalid_argument("S does not match the graph size");
    }
    std::vector<int> owner(n, -1);
    for (NodeId v : S.members()) {
        owner[v] = -2;
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i].universe() != n) {
            throw std::invalid_argument("level " + std::to_string(i) + " does not match the graph size");
        }
        for (NodeId v : levels[i].members()) {
            if (owner[v] != -1) {
                throw std::invalid_argument("node " + std::to_string(v) + " belongs to two of the sets");
            }
            owner[v] = static_cast<int>(i);
        }
    }
    const std::size_t need = static_cast<std::size_t>(k) * static_cast<std::size_t>(k);
    for (NodeId w : levels[0].members()) {
        std::size_t count = 0;
        for (NodeId s : g.neighbors(w)) {
            count += S.contains(s) ? 1 : 0;
        }
        if (count < need) {
            throw std::invalid_argument("W_0 node " + std::to_string(w) + " has " + std::to_string(count) +
                                        " neighbors in S, needs " + std::to_string(need));
        }
    }
}

int LevelSets::level_of(NodeId v) const {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i].contains(v)) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

nlohmann::json LevelSets::to_json() const {
    nlohmann::json lv = nlohmann::json::array();
    for (const NodeSet &l : levels) {
        lv.push_back(l.members());
    }
    return {{"k", k}, {"S", S.members()}, {"levels", lv}};
}

LevelSets LevelSets::from_json(const nlohmann::json &j, std::size_t n) {
    LevelSets ls;
    ls.k = j.at("k").get<int>();
    auto ids = [n](const nlohmann::json &arr) {
        std::vector<NodeId> v = arr.get<std::vector<NodeId>>();
        return NodeSet::of(n, v);
    };
    ls.S = ids(j.at("S"));
    for (const auto &level : j.at("levels")) {
        ls.levels.push_back(ids(level));
    }
    return ls;
}

EdgeSubset::EdgeSubset(std::vector<BipartiteEdge> edges) : edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool EdgeSubset::contains(const BipartiteEdge &e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<std::uint32_t> EdgeSubset::degrees(std::size_t n) const {
    std::vector<std::uint32_t> d(n, 0);
    for (const BipartiteEdge &e : edges_) {
        d[e.s]++;
        d[e.w]++;
    }
    return d;
}

std::size_t EdgeSubset::degree_of_s(NodeId s) const {
    return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [s](const auto &e) { return e.s == s; }));
}

std::size_t EdgeSubset::degree_of_w(NodeId w) const {
    return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [w](const auto &e) { return e.w == w; }));
}

bool EdgeSubset::subset_of(const EdgeSubset &other) const {
    return std::includes(other.edges_.begin(), other.edges_.end(), edges_.begin(), edges_.end());
}

nlohmann::json EdgeSubset::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &e : edges_) {
        arr.push_back({e.s, e.w});
    }
    return arr;
}

NodeId NodeFamily::provenance_of(const BipartiteEdge &e) const {
    auto edges = H.edges();
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) {
        throw std::out_of_range("edge is not in H(v)");
    }
    return provenance[static_cast<std::size_t>(it - edges.begin())];
}

const NodeFamily &SparsifiedFamily::at(NodeId v) const {
    auto it = nodes.find(v);
    if (it == nodes.end()) {
        throw std::out_of_range("node " + std::to_string(v) + " is not in any level");
    }
    return it->second;
}

std::vector<NodeId> SparsifiedFamily::nonempty_base() const {
    std::vector<std::pair<int, NodeId>> found;
    for (const auto &[v, f] : nodes) {
        if (f.level >= 1 && !f.chain.empty() && !f.chain[0].empty()) {
            found.emplace_back(f.level, v);
        }
    }
    std::sort(found.begin(), found.end());
    std::vector<NodeId> out;
    for (const auto &[level, v] : found) {
        out.push_back(v);
    }
    return out;
}

std::uint64_t out_degree_cap(int i, int k) {
    return (std::uint64_t{1} << (i - 1)) * static_cast<std::uint64_t>(k - 1);
}

SparsifiedFamily build_sparsification(const Graph &g, const LevelSets &ls) {
    ls.validate(g);
    const std::size_t n = g.node_count();
    const int k = ls.k;
    SparsifiedFamily fam;
    fam.k = k;

    for (NodeId w : ls.levels[0].members()) {
        NodeFamily f;
        f.level = 0;
        std::vector<BipartiteEdge> out;
        for (NodeId s : g.neighbors(w)) {
            if (ls.S.contains(s)) {
                out.push_back({s, w});
            }
        }
        f.out = EdgeSubset(std::move(out));
        fam.nodes.emplace(w, std::move(f));
    }

    for (int i = 1; i < k; ++i) {
        const std::uint64_t cap = out_degree_cap(i, k);
        for (NodeId v : ls.levels[static_cast<std::size_t>(i)].members()) {
            NodeFamily f;
            f.level = i;
            f.q = (k - i) / 2;

            // H(v): union of OUT(v') over neighbors v' in V_{i-1}; neighbors
            // are visited in ascending order so the first contributor is kept.
            std::map<BipartiteEdge, NodeId> union_edges;
            for (NodeId u : g.neighbors(v)) {
                if (!ls.levels[static_cast<std::size_t>(i - 1)].contains(u)) {
                    continue;
                }
                for (const BipartiteEdge &e : fam.nodes.at(u).out.edges()) {
                    union_edges.emplace(e, u);
                }
            }
            std::vector<BipartiteEdge> h_edges;
            for (const auto &[e, from] : union_edges) {
                h_edges.push_back(e);
                f.provenance.push_back(from);
            }
            f.H = EdgeSubset(std::move(h_edges));

            f.chain.assign(static_cast<std::size_t>(2 * f.q + 1), EdgeSubset{});
            std::vector<BipartiteEdge> top;
            std::vector<BipartiteEdge> out;
            {
                auto deg = f.H.degrees(n);
                for (const BipartiteEdge &e : f.H.edges()) {
                    (deg[e.s] > cap ? top : out).push_back(e);
                }
            }
            f.chain[static_cast<std::size_t>(2 * f.q)] = EdgeSubset(std::move(top));
            for (int gamma = f.q; gamma >= 1; --gamma) {
                const EdgeSubset &even = f.chain[static_cast<std::size_t>(2 * gamma)];
                auto deg_even = even.degrees(n);
                std::vector<BipartiteEdge> odd_edges;
                for (const BipartiteEdge &e : even.edges()) {
                    if (deg_even[e.w] > static_cast<std::uint32_t>(2 * gamma)) {
                        odd_edges.push_back(e);
                    }
                }
                f.chain[static_cast<std::size_t>(2 * gamma - 1)] = EdgeSubset(std::move(odd_edges));
                const EdgeSubset &odd = f.chain[static_cast<std::size_t>(2 * gamma - 1)];
                auto deg_odd = odd.degrees(n);
                std::vector<BipartiteEdge> next;
                for (const BipartiteEdge &e : odd.edges()) {
                    if (deg_odd[e.s] > static_cast<std::uint32_t>(2 * gamma - 1)) {
                        next.push_back(e);
                    } else {
                        out.push_back(e);
                    }
                }
                f.chain[static_cast<std::size_t>(2 * gamma - 2)] = EdgeSubset(std::move(next));
            }
            f.out = EdgeSubset(std::move(out));
            fam.nodes.emplace(v, std::move(f));
        }
    }
    return fam;
}

nlohmann::json CycleWitness::to_json() const {
    return {
        {"v", v}, {"i", level}, {"cycle", cycle}, {"P", P}, {"P'", P_prime}, {"P''", P_double_prime},
    };
}

namespace {

/// Lowest w with {s, w} in `edges` and w not in `used`.
std::optional<NodeId> lowest_w(const EdgeSubset &edges, NodeId s, const std::set<NodeId> &used) {
    for (const BipartiteEdge &e : edges.edges()) {
        if (e.s == s && !used.contains(e.w)) {
            return e.w;
        }
    }
    return std::nullopt;
}

/// Lowest s with {s, w} in `edges` and s not in `used`.
std::optional<NodeId> lowest_s(const EdgeSubset &edges, NodeId w, const std::set<NodeId> &used) {
    for (const BipartiteEdge &e : edges.edges()) {
        if (e.w == w && !used.contains(e.s)) {
            return e.s;
        }
    }
    return std::nullopt;
}

/// (w, v_1, ..., v_{i-1}, v) following provenance links of `e` down from v.
std::vector<NodeId> trace_path(const SparsifiedFamily &fam, NodeId v, const BipartiteEdge &e) {
    std::vector<NodeId> down{v};
    NodeId cur = v;
    while (fam.at(cur).level > 0) {
        cur = fam.at(cur).provenance_of(e);
        down.push_back(cur);
    }
    std::reverse(down.begin(), down.end());
    if (down.front() != e.w) {
        throw std::logic_error("provenance trace does not end at the W_0 endpoint");
    }
    return down;
}

NodeId require(std::optional<NodeId> x, const char *what) {
    if (!x) {
        throw std::logic_error(std::string("cycle extraction: no candidate for ") + what);
    }
    return *x;
}

}  // namespace

std::optional<CycleWitness> extract_cycle(const Graph &g, const LevelSets &ls, NodeId v, const SparsifiedFamily &fam) {
    const NodeFamily &f = fam.at(v);
    const int i = f.level;
    const int k = ls.k;
    if (i < 1) {
        throw std::invalid_argument("extract_cycle needs v in V_i with i >= 1");
    }
    if (f.chain.empty() || f.chain[0].empty()) {
        return std::nullopt;
    }
    const int q = f.q;

    // Path P_gamma grown symmetrically from s_1, both ends in S.
    const NodeId s1 = f.chain[0].edges().front().s;
    std::vector<NodeId> left;
    std::vector<NodeId> right;
    std::set<NodeId> used_w;
    std::set<NodeId> used_s{s1};
    NodeId end_left = s1;
    NodeId end_right = s1;
    for (int gamma = 0; gamma < q; ++gamma) {
        const EdgeSubset &odd = f.chain[static_cast<std::size_t>(2 * gamma + 1)];
        const EdgeSubset &even = f.chain[static_cast<std::size_t>(2 * gamma + 2)];
        NodeId wl = require(lowest_w(odd, end_left, used_w), "left W_0 extension");
        used_w.insert(wl);
        NodeId wr = require(lowest_w(odd, end_right, used_w), "right W_0 extension");
        used_w.insert(wr);
        NodeId sl = require(lowest_s(even, wl, used_s), "left S extension");
        used_s.insert(sl);
        NodeId sr = require(lowest_s(even, wr, used_s), "right S extension");
        used_s.insert(sr);
        left.push_back(wl);
        left.push_back(sl);
        right.push_back(wr);
        right.push_back(sr);
        end_left = sl;
        end_right = sr;
    }
    std::vector<NodeId> P(left.rbegin(), left.rend());
    P.push_back(s1);
    P.insert(P.end(), right.begin(), right.end());
    if ((k - i) % 2 == 0) {
        P.erase(P.begin());
    } else {
        const EdgeSubset &top = f.chain[static_cast<std::size_t>(2 * q)];
        NodeId w = require(lowest_w(top, end_left, used_w), "final W_0 extension");
        used_w.insert(w);
        P.insert(P.begin(), w);
    }
    const NodeId w = P.front();
    const NodeId s = P.back();

    CycleWitness out;
    out.v = v;
    out.level = i;
    out.P = P;
    out.P_prime = trace_path(fam, v, BipartiteEdge{P[1], w});

    // P'': an edge {s, w''} of H(v) avoiding P and every OUT(v'_j).
    std::optional<BipartiteEdge> chosen;
    for (const BipartiteEdge &e : f.H.edges()) {
        if (e.s != s || used_w.contains(e.w)) {
            continue;
        }
        bool clash = false;
        for (int j = 1; j < i && !clash; ++j) {
            clash = fam.at(out.P_prime[static_cast<std::size_t>(j)]).out.contains(e);
        }
        if (!clash) {
            chosen = e;
            break;
        }
    }
    if (!chosen) {
        throw std::logic_error("cycle extraction: no edge {s, w''} avoids P and OUT(v'_j)");
    }
    std::vector<NodeId> tail = trace_path(fam, v, *chosen);
    out.P_double_prime.push_back(s);
    out.P_double_prime.insert(out.P_double_prime.end(), tail.begin(), tail.end());

    out.cycle = P;
    out.cycle.insert(out.cycle.end(), tail.begin(), tail.end());
    for (int j = i - 1; j >= 1; --j) {
        out.cycle.push_back(out.P_prime[static_cast<std::size_t>(j)]);
    }

    CycleQuery query = CycleQuery::exact(static_cast<std::size_t>(2 * k));
    query.must_intersect = ls.S;
    if (!validate_cycle(g, out.cycle, query)) {
        throw std::logic_error("cycle extraction produced an invalid cycle");
    }
    return out;
}

std::vector<NodeId> w0_of(const Graph &g, const LevelSets &ls, NodeId v) {
    const int i = ls.level_of(v);
    if (i < 1) {
        throw std::invalid_argument("w0_of needs v in V_i with i >= 1");
    }
    std::vector<std::uint8_t> frontier(g.node_count(), 0);
    frontier[v] = 1;
    for (int j = i - 1; j >= 0; --j) {
        std::vector<std::uint8_t> next(g.node_count(), 0);
        for (NodeId u = 0; u < g.node_count(); ++u) {
            if (!frontier[u]) {
                continue;
            }
            for (NodeId x : g.neighbors(u)) {
                if (ls.levels[static_cast<std::size_t>(j)].contains(x)) {
                    next[x] = 1;
                }
            }
        }
        frontier.swap(next);
    }
    std::vector<NodeId> out;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (frontier[u]) {
            out.push_back(u);
        }
    }
    return out;
}

W0Bound bound_W0v(const Graph &g, const LevelSets &ls, NodeId v) {
    const int i = ls.level_of(v);
    W0Bound b;
    b.size = w0_of(g, ls, v).size();
    b.bound = out_degree_cap(i, ls.k) * ls.S.size();
    b.holds = b.size <= b.bound;
    return b;
}

std::vector<NodeId> degeneracy_path_grow(const EdgeSubset &edges, int k) {
    if (k < 1) {
        throw std::invalid_argument("degeneracy_path_grow needs k >= 1");
    }
    std::map<NodeId, std::vector<NodeId>> adj;
    std::set<NodeId> s_side;
    std::set<NodeId> w_side;
    for (const BipartiteEdge &e : edges.edges()) {
        adj[e.s].push_back(e.w);
        adj[e.w].push_back(e.s);
        s_side.insert(e.s);
        w_side.insert(e.w);
    }
    for (NodeId s : s_side) {
        if (w_side.contains(s)) {
            throw std::invalid_argument("edge set is not bipartite: node on both sides");
        }
    }

    std::map<NodeId, std::size_t> degree;
    std::set<NodeId> alive;
    for (const auto &[u, nb] : adj) {
        degree[u] = nb.size();
        alive.insert(u);
    }
    std::vector<NodeId> stack;
    for (const auto &[u, d] : degree) {
        if (d < static_cast<std::size_t>(k)) {
            stack.push_back(u);
        }
    }
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        if (!alive.erase(u)) {
            continue;
        }
        for (NodeId x : adj[u]) {
            if (alive.contains(x) && degree[x]-- == static_cast<std::size_t>(k)) {
                stack.push_back(x);
            }
        }
    }
    if (alive.empty()) {
        throw std::runtime_error("degeneracy core is empty: no subgraph of minimum degree " + std::to_string(k));
    }

    std::vector<NodeId> path{*alive.begin()};
    std::set<NodeId> used{path.front()};
    while (path.size() < static_cast<std::size_t>(2 * k)) {
        std::vector<NodeId> nb = adj[path.back()];
        std::sort(nb.begin(), nb.end());
        auto it = std::find_if(nb.begin(), nb.end(), [&](NodeId x) { return alive.contains(x) && !used.contains(x); });
        if (it == nb.end()) {
            throw std::logic_error("greedy path growth got stuck inside the core");
        }
        path.push_back(*it);
        used.insert(*it);
    }
    return path;
}

}  // namespace c2k
