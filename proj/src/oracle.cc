#include "c2k/oracle.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

namespace c2k {

void CycleQuery::validate() const {
    if (length < 3) {
        throw std::invalid_argument("cycle length must be >= 3");
    }
    if (coloring.has_value() != !color_pattern.empty()) {
        throw std::invalid_argument("color pattern and coloring must be given together");
    }
    if (!color_pattern.empty()) {
        if (at_most) {
            throw std::invalid_argument("color pattern requires exact length");
        }
        if (color_pattern.size() != length) {
            throw std::invalid_argument("color pattern length must equal cycle length");
        }
        std::vector<int> sorted = color_pattern;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("color pattern entries must be distinct");
        }
    }
    if (first_in && color_pattern.empty()) {
        throw std::invalid_argument("first_in requires a color pattern");
    }
}

CycleQuery CycleQuery::exact(std::size_t length) {
    CycleQuery q;
    q.length = length;
    return q;
}

CycleQuery CycleQuery::up_to(std::size_t length) {
    CycleQuery q;
    q.length = length;
    q.at_most = true;
    return q;
}

CycleQuery CycleQuery::well_colored(const Coloring &coloring, std::size_t m) {
    CycleQuery q;
    q.length = m;
    q.coloring = coloring;
    q.color_pattern.resize(m);
    std::iota(q.color_pattern.begin(), q.color_pattern.end(), 0);
    return q;
}

std::vector<NodeId> canonical_cycle(std::span<const NodeId> cycle) {
    std::vector<NodeId> out;
    if (cycle.empty()) {
        return out;
    }
    const std::size_t len = cycle.size();
    std::size_t start = static_cast<std::size_t>(std::min_element(cycle.begin(), cycle.end()) - cycle.begin());
    NodeId next = cycle[(start + 1) % len];
    NodeId prev = cycle[(start + len - 1) % len];
    bool forward = next <= prev;
    out.reserve(len);
    for (std::size_t j = 0; j < len; ++j) {
        std::size_t idx = forward ? (start + j) % len : (start + len - j) % len;
        out.push_back(cycle[idx]);
    }
    return out;
}

namespace {

void check_size(const Graph &g, std::size_t limit, const char *what) {
    if (g.node_count() > limit) {
        throw OracleLimitError(std::string(what) + ": graph has " + std::to_string(g.node_count()) +
                               " nodes, limit is " + std::to_string(limit));
    }
}

bool meets_intersection(std::span<const NodeId> cyc, const CycleQuery &q) {
    if (!q.must_intersect) {
        return true;
    }
    return std::any_of(cyc.begin(), cyc.end(), [&](NodeId v) { return q.must_intersect->contains(v); });
}

/// Cycles whose minimum vertex is `start`, of exact length `len`.
class PlainSearch {
   public:
    PlainSearch(const Graph &g, const CycleQuery &q, std::size_t len)
        : g_(g), q_(q), len_(len), dist_(g.node_count()), on_path_(g.node_count(), 0) {}

    std::optional<std::vector<NodeId>> from(NodeId start) {
        start_ = start;
        // Distances to start inside the vertex range >= start, for pruning.
        std::fill(dist_.begin(), dist_.end(), std::numeric_limits<std::size_t>::max());
        std::deque<NodeId> queue{start};
        dist_[start] = 0;
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            for (NodeId w : g_.neighbors(u)) {
                if (w > start && dist_[w] == std::numeric_limits<std::size_t>::max()) {
                    dist_[w] = dist_[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        path_.assign(1, start);
        on_path_[start] = 1;
        bool found = dfs(start);
        on_path_[start] = 0;
        if (!found) {
            for (NodeId v : path_) {
                on_path_[v] = 0;
            }
            return std::nullopt;
        }
        for (NodeId v : path_) {
            on_path_[v] = 0;
        }
        return canonical_cycle(path_);
    }

   private:
    bool dfs(NodeId u) {
        const std::size_t depth = path_.size();
        if (depth == len_) {
            if (g_.has_edge(u, start_) && path_[1] < u && meets_intersection(path_, q_)) {
                return true;
            }
            return false;
        }
        for (NodeId w : g_.neighbors(u)) {
            if (w <= start_ || on_path_[w]) {
                continue;
            }
            if (dist_[w] > len_ - depth) {
                continue;
            }
            on_path_[w] = 1;
            path_.push_back(w);
            if (dfs(w)) {
                return true;
            }
            path_.pop_back();
            on_path_[w] = 0;
        }
        return false;
    }

    const Graph &g_;
    const CycleQuery &q_;
    std::size_t len_;
    NodeId start_ = 0;
    std::vector<std::size_t> dist_;
    std::vector<std::uint8_t> on_path_;
    std::vector<NodeId> path_;
};

/// Cycles (x = v_0, v_1, ..., v_{len-1}) with c(v_j) = pattern[j]. Distinct
/// pattern colors make every such path simple.
std::optional<std::vector<NodeId>> colored_search(const Graph &g, const CycleQuery &q) {
    const Coloring &c = *q.coloring;
    const std::vector<int> &pattern = q.color_pattern;
    const std::size_t len = pattern.size();
    std::vector<NodeId> path;
    std::optional<std::vector<NodeId>> best;

    auto dfs = [&](auto &&self, NodeId u) -> void {
        if (path.size() == len) {
            if (g.has_edge(u, path.front()) && meets_intersection(path, q)) {
                auto cand = canonical_cycle(path);
                if (!best || cand < *best) {
                    best = std::move(cand);
                }
            }
            return;
        }
        int want = pattern[path.size()];
        for (NodeId w : g.neighbors(u)) {
            if (c[w] == want) {
                path.push_back(w);
                self(self, w);
                path.pop_back();
            }
        }
    };

    for (NodeId x = 0; x < g.node_count(); ++x) {
        if (c[x] != pattern[0] || (q.first_in && !q.first_in->contains(x))) {
            continue;
        }
        path.assign(1, x);
        dfs(dfs, x);
    }
    return best;
}

}  // namespace

std::optional<std::vector<NodeId>> find_cycle(const Graph &g, const CycleQuery &q) {
    q.validate();
    check_size(g, kFindCycleNodeLimit, "find_cycle");
    if (q.coloring) {
        if (q.coloring->size() != g.node_count()) {
            throw std::invalid_argument("coloring size does not match graph");
        }
        return colored_search(g, q);
    }
    const std::size_t lo = q.at_most ? 3 : q.length;
    for (std::size_t len = lo; len <= q.length; ++len) {
        if (len > g.node_count()) {
            break;
        }
        PlainSearch search(g, q, len);
        for (NodeId s = 0; s < g.node_count(); ++s) {
            if (auto cyc = search.from(s)) {
                return cyc;
            }
        }
    }
    return std::nullopt;
}

bool validate_cycle(const Graph &g, std::span<const NodeId> vertices, const CycleQuery &q) {
    q.validate();
    const std::size_t len = vertices.size();
    if (q.at_most ? (len < 3 || len > q.length) : len != q.length) {
        return false;
    }
    std::vector<NodeId> sorted(vertices.begin(), vertices.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        return false;
    }
    if (sorted.back() >= g.node_count()) {
        return false;
    }
    for (std::size_t j = 0; j < len; ++j) {
        if (!g.has_edge(vertices[j], vertices[(j + 1) % len])) {
            return false;
        }
    }
    if (!meets_intersection(vertices, q)) {
        return false;
    }
    if (q.coloring) {
        const Coloring &c = *q.coloring;
        if (c.size() != g.node_count()) {
            return false;
        }
        bool matched = false;
        for (std::size_t start = 0; start < len && !matched; ++start) {
            for (int dir : {1, -1}) {
                bool ok = true;
                for (std::size_t j = 0; j < len && ok; ++j) {
                    std::size_t idx = dir == 1 ? (start + j) % len : (start + len - j) % len;
                    ok = c[vertices[idx]] == q.color_pattern[j];
                }
                if (ok && q.first_in && !q.first_in->contains(vertices[start])) {
                    ok = false;
                }
                if (ok) {
                    matched = true;
                    break;
                }
            }
        }
        if (!matched) {
            return false;
        }
    }
    return true;
}

std::optional<std::size_t> girth(const Graph &g, Exec exec, std::size_t node_limit) {
    check_size(g, node_limit, "girth");
    const std::size_t n = g.node_count();
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    std::size_t best = none;
    const bool parallel = exec == Exec::parallel;

#pragma omp parallel if (parallel)
    {
        std::vector<std::size_t> dist(n);
        std::vector<NodeId> parent(n);
        std::vector<NodeId> queue;
        queue.reserve(n);
        std::size_t local = none;
#pragma omp for schedule(dynamic, 4) nowait
        for (std::size_t root = 0; root < n; ++root) {
            std::fill(dist.begin(), dist.end(), none);
            dist[root] = 0;
            parent[root] = static_cast<NodeId>(root);
            queue.assign(1, static_cast<NodeId>(root));
            for (std::size_t head = 0; head < queue.size(); ++head) {
                NodeId u = queue[head];
                if (2 * dist[u] + 1 >= local) {
                    break;
                }
                for (NodeId w : g.neighbors(u)) {
                    if (dist[w] == none) {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if (parent[u] != w) {
                        local = std::min(local, dist[u] + dist[w] + 1);
                    }
                }
            }
        }
#pragma omp critical
        best = std::min(best, local);
    }
    if (best == none) {
        return std::nullopt;
    }
    return best;
}

namespace {

void check_x0_inputs(const Graph &h, const Coloring &coloring, const NodeSet &x, int k) {
    const int m = coloring.num_colors();
    if (k < 1 || k >= m) {
        throw std::invalid_argument("compute_X0: k out of range for the palette");
    }
    if (coloring.size() != h.node_count() || x.universe() != h.node_count()) {
        throw std::invalid_argument("compute_X0: size mismatch");
    }
}

}  // namespace

std::vector<std::vector<NodeId>> compute_X0(const Graph &h, const Coloring &coloring, const NodeSet &x, int k) {
    check_x0_inputs(h, coloring, x, k);
    const std::size_t n = h.node_count();
    const int m = coloring.num_colors();
    std::vector<std::vector<NodeId>> sets(n);

    std::vector<std::vector<NodeId>> by_color(static_cast<std::size_t>(m));
    for (NodeId v = 0; v < n; ++v) {
        by_color[static_cast<std::size_t>(coloring[v])].push_back(v);
    }
    auto pull = [&](NodeId v, int from_color) {
        std::vector<NodeId> acc;
        for (NodeId u : h.neighbors(v)) {
            if (coloring[u] != from_color) {
                continue;
            }
            if (from_color == 0) {
                if (x.contains(u)) {
                    acc.push_back(u);
                }
            } else {
                acc.insert(acc.end(), sets[u].begin(), sets[u].end());
            }
        }
        std::sort(acc.begin(), acc.end());
        acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
        sets[v] = std::move(acc);
    };
    for (int color = 1; color <= k - 1; ++color) {
        for (NodeId v : by_color[static_cast<std::size_t>(color)]) {
            pull(v, color - 1);
        }
    }
    for (int color = m - 1; color >= k + 1; --color) {
        for (NodeId v : by_color[static_cast<std::size_t>(color)]) {
            pull(v, (color + 1) % m);
        }
    }
    return sets;
}

std::vector<std::vector<NodeId>> compute_X0_by_enumeration(const Graph &h, const Coloring &coloring,
                                                           const NodeSet &x, int k) {
    check_x0_inputs(h, coloring, x, k);
    const std::size_t n = h.node_count();
    const int m = coloring.num_colors();
    std::vector<std::vector<NodeId>> sets(n);

    // Walk every well-colored path from each source; each node reached at
    // step j with the expected color records the source.
    auto walk = [&](NodeId source, int step_dir, int max_steps) {
        std::vector<NodeId> path{source};
        auto rec = [&](auto &&self, NodeId u, int step) -> void {
            if (step == max_steps) {
                return;
            }
            int want = ((step + 1) * step_dir % m + m) % m;
            for (NodeId w : h.neighbors(u)) {
                if (coloring[w] != want || std::find(path.begin(), path.end(), w) != path.end()) {
                    continue;
                }
                sets[w].push_back(source);
                path.push_back(w);
                self(self, w, step + 1);
                path.pop_back();
            }
        };
        rec(rec, source, 0);
    };
    for (NodeId s = 0; s < n; ++s) {
        if (coloring[s] != 0 || !x.contains(s)) {
            continue;
        }
        walk(s, 1, k - 1);
        walk(s, -1, m - 1 - k);
    }
    for (auto &set : sets) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    return sets;
}

}  // namespace c2k
