#include "c2k/fixtures.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "c2k/generators.h"
#include "c2k/rng.h"

namespace c2k {

namespace {

std::vector<NodeId> range_ids(NodeId from, NodeId to) {
    std::vector<NodeId> out(to - from);
    std::iota(out.begin(), out.end(), from);
    return out;
}

/// Coloring of n nodes with color 1 everywhere except the cycle, colored 0..len-1 in order.
Coloring cycle_coloring(std::size_t n, const std::vector<NodeId> &cycle, int num_colors) {
    Coloring c = Coloring::uniform(n, 1, num_colors);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        c.set(cycle[i], static_cast<int>(i));
    }
    return c;
}

std::vector<Edge> c4_edges() { return {{0, 1}, {1, 2}, {2, 3}, {3, 0}}; }

}  // namespace

LevelInstance k45_instance() {
    std::vector<Edge> edges;
    for (NodeId s = 0; s < 4; ++s) {
        for (NodeId w = 4; w < 9; ++w) {
            edges.push_back({s, w});
        }
    }
    for (NodeId w = 4; w < 9; ++w) {
        edges.push_back({w, 9});
    }
    LevelInstance out;
    out.graph = Graph::from_edges(10, edges);
    out.levels.k = 2;
    auto s = range_ids(0, 4);
    auto w0 = range_ids(4, 9);
    std::vector<NodeId> v1{9};
    out.levels.S = NodeSet::of(10, s);
    out.levels.levels = {NodeSet::of(10, w0), NodeSet::of(10, v1)};
    return out;
}

Graph heawood_graph() { return projective_plane_incidence(2); }

ForcedScenario light_cycle_scenario() {
    const std::size_t n = 32;
    ForcedScenario out;
    out.k = 2;
    out.graph = Graph::from_edges(n, c4_edges());
    out.cycle = {0, 1, 2, 3};
    out.coloring = cycle_coloring(n, out.cycle, 4);
    out.selection = NodeSet(n);
    out.designated_node = 2;
    out.designated_call = Stage::light;
    return out;
}

ForcedScenario selected_cycle_scenario() {
    const std::size_t n = 32;
    std::vector<Edge> edges = c4_edges();
    for (NodeId p = 4; p <= 10; ++p) {
        edges.push_back({0, p});
    }
    ForcedScenario out;
    out.k = 2;
    out.graph = Graph::from_edges(n, edges);
    out.cycle = {0, 1, 2, 3};
    out.coloring = cycle_coloring(n, out.cycle, 4);
    std::vector<NodeId> s{0};
    out.selection = NodeSet::of(n, s);
    out.designated_node = 2;
    out.designated_call = Stage::selected;
    return out;
}

ForcedScenario heavy_cycle_scenario() {
    const std::size_t n = 32;
    std::vector<Edge> edges = c4_edges();
    for (NodeId p = 4; p <= 10; ++p) {
        edges.push_back({0, p});
    }
    ForcedScenario out;
    out.k = 2;
    out.graph = Graph::from_edges(n, edges);
    out.cycle = {0, 1, 2, 3};
    out.coloring = cycle_coloring(n, out.cycle, 4);
    out.selection = NodeSet::of(n, range_ids(4, 8));
    out.designated_node = 2;
    out.designated_call = Stage::heavy;
    return out;
}

PlantedInstance planted_c4_heavy_hub(std::uint64_t seed) {
    Graph base = with_extra_nodes(random_tree(24, derive_seed(seed, 1)), 8);
    PlantedCycle planted = plant_cycle(base, 4, true, derive_seed(seed, 2));
    if (planted.graph.node_count() != 32) {
        throw std::logic_error("planted instance grew beyond 32 nodes");
    }
    return {planted.graph, planted.cycle};
}

ColoredInstance well_colored_c4(std::size_t n) {
    if (n < 4) {
        throw std::invalid_argument("well_colored_c4 needs n >= 4");
    }
    ColoredInstance out;
    out.graph = Graph::from_edges(n, c4_edges());
    out.cycle = {0, 1, 2, 3};
    out.coloring = cycle_coloring(n, out.cycle, 4);
    return out;
}

Graph girth3_instance() {
    std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 0}};
    for (NodeId v = 2; v + 1 < 16; ++v) {
        edges.push_back({v, v + 1});
    }
    return Graph::from_edges(16, edges);
}

std::vector<Graph> girth9_fixtures() {
    return {cycle_graph(9), subdivide(complete_graph(4), 3), subdivide(petersen_graph(), 2)};
}

LevelInstance random_level_instance(int k, std::uint64_t seed) {
    if (k < 2 || k > 4) {
        throw std::invalid_argument("random_level_instance supports k in {2, 3, 4}");
    }
    constexpr std::size_t kMaxNodes = 40;
    StreamRng rng(derive_seed(seed, static_cast<std::uint64_t>(Stream::generator), 7, static_cast<std::uint64_t>(k)));
    auto uniform = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };

    const std::size_t kk = static_cast<std::size_t>(k * k);
    const bool dense = coin(0.5);
    const std::size_t s_size = kk + uniform(0, 2);
    std::vector<std::size_t> level_sizes(static_cast<std::size_t>(k));
    std::size_t used = s_size;
    for (int i = 1; i < k; ++i) {
        level_sizes[i] = uniform(1, 3);
        used += level_sizes[i];
    }
    const std::size_t outsiders = uniform(0, 2);
    used += outsiders;
    if (used >= kMaxNodes) {
        throw std::logic_error("level instance budget exceeded");
    }
    const std::size_t room = kMaxNodes - used;
    level_sizes[0] = dense ? uniform(std::max<std::size_t>(1, room / 2), room) : uniform(1, std::min<std::size_t>(room, 8));
    const std::size_t n = used + level_sizes[0];

    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::size_t next = 0;
    auto take = [&](std::size_t count) {
        std::vector<NodeId> out(perm.begin() + next, perm.begin() + next + count);
        next += count;
        return out;
    };
    std::vector<NodeId> s = take(s_size);
    std::vector<std::vector<NodeId>> levels(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        levels[i] = take(level_sizes[i]);
    }

    std::vector<Edge> edges;
    for (NodeId w : levels[0]) {
        std::vector<NodeId> pool = s;
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(uniform(kk, s.size()));
        for (NodeId x : pool) {
            edges.push_back({w, x});
        }
    }
    for (int i = 1; i < k; ++i) {
        const double p = dense && i == 1 ? 0.85 : 0.5;
        for (NodeId a : levels[i - 1]) {
            for (NodeId b : levels[i]) {
                if (coin(p)) {
                    edges.push_back({a, b});
                }
            }
        }
    }
    for (NodeId a = 0; a < n; ++a) {
        for (NodeId b = a + 1; b < n; ++b) {
            if (coin(0.02)) {
                edges.push_back({a, b});
            }
        }
    }

    LevelInstance out;
    out.graph = Graph::from_edges(n, edges);
    out.levels.k = k;
    out.levels.S = NodeSet::of(n, s);
    for (const auto &level : levels) {
        out.levels.levels.push_back(NodeSet::of(n, level));
    }
    out.levels.validate(out.graph);
    return out;
}

}  // namespace c2k
