#include "c2k/fixtures.h"
#include "c2k/generators.h"
#include "c2k/oracle.h"
#include "c2k/witness.h"
#include "gtest/gtest.h"

using namespace c2k;

namespace {

void expect_witness_valid(const Graph &g, const LevelSets &ls, const CycleWitness &w) {
    const std::size_t len = static_cast<std::size_t>(2 * ls.k);
    CycleQuery q = CycleQuery::exact(len);
    q.must_intersect = ls.S;
    EXPECT_TRUE(validate_cycle(g, w.cycle, q));
    EXPECT_EQ((w.P.size() - 1) + (w.P_prime.size() - 1) + (w.P_double_prime.size() - 1), len);
    EXPECT_EQ(w.P.size(), static_cast<std::size_t>(2 * (ls.k - w.level)));
    EXPECT_EQ(w.P_prime.back(), w.v);
    EXPECT_EQ(w.P_double_prime.back(), w.v);
    EXPECT_EQ(w.P_prime.front(), w.P.front());
    EXPECT_EQ(w.P_double_prime.front(), w.P.back());
}

/// Follows provenance from (s, w) in H(v) down to level 0 and checks the path.
void expect_trace(const Graph &g, const LevelSets &ls, const SparsifiedFamily &fam, NodeId v,
                  const BipartiteEdge &e) {
    NodeId cur = v;
    int level = ls.level_of(v);
    while (level > 0) {
        const NodeFamily &f = fam.at(cur);
        NodeId prev = f.provenance_of(e);
        ASSERT_TRUE(g.has_edge(cur, prev));
        ASSERT_EQ(ls.level_of(prev), level - 1);
        ASSERT_TRUE(fam.at(prev).out.contains(e));
        cur = prev;
        --level;
    }
    EXPECT_EQ(cur, e.w);
}

}  // namespace

TEST(witness, out_of_w0_node_is_its_s_edges) {
    LevelInstance inst = k45_instance();
    SparsifiedFamily fam = build_sparsification(inst.graph, inst.levels);
    const NodeFamily &f = fam.at(4);
    EXPECT_EQ(f.level, 0);
    ASSERT_EQ(f.out.size(), 4u);
    for (NodeId s = 0; s < 4; ++s) {
        EXPECT_TRUE(f.out.contains({s, 4}));
    }
}

TEST(witness, single_neighbor_h_equals_out) {
    std::vector<Edge> edges{{0, 5}, {1, 5}, {2, 5}, {3, 5}, {4, 5}, {5, 6}};
    Graph g = Graph::from_edges(7, edges);
    LevelSets ls;
    ls.k = 2;
    std::vector<NodeId> s{0, 1, 2, 3, 4};
    std::vector<NodeId> w0{5};
    std::vector<NodeId> v1{6};
    ls.S = NodeSet::of(7, s);
    ls.levels = {NodeSet::of(7, w0), NodeSet::of(7, v1)};
    SparsifiedFamily fam = build_sparsification(g, ls);
    EXPECT_EQ(fam.at(5).out.size(), 5u);
    EXPECT_FALSE(fam.at(6).H.empty());
    EXPECT_TRUE(fam.at(6).H.subset_of(fam.at(5).out));
    EXPECT_TRUE(fam.at(5).out.subset_of(fam.at(6).H));
}

TEST(witness, k45_extracts_a_four_cycle_through_s) {
    LevelInstance inst = k45_instance();
    SparsifiedFamily fam = build_sparsification(inst.graph, inst.levels);
    EXPECT_FALSE(fam.at(9).chain[0].empty());
    EXPECT_EQ(fam.nonempty_base(), std::vector<NodeId>{9});
    auto w = extract_cycle(inst.graph, inst.levels, 9, fam);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->cycle, (std::vector<NodeId>{4, 0, 5, 9}));
    expect_witness_valid(inst.graph, inst.levels, *w);
    nlohmann::json j = w->to_json();
    EXPECT_EQ(j["i"], 1);
    EXPECT_TRUE(j.contains("P''"));

    W0Bound b = bound_W0v(inst.graph, inst.levels, 9);
    EXPECT_EQ(b.size, 5u);
    EXPECT_EQ(b.bound, 4u);
    EXPECT_FALSE(b.holds);
}

TEST(witness, no_witness_when_base_is_empty) {
    // v = 6 sees only w = 4, so every s has degree 1 in H(6) and nothing passes the cap of 1.
    std::vector<Edge> edges;
    for (NodeId s = 0; s < 4; ++s) {
        edges.push_back({s, 4});
        edges.push_back({s, 5});
    }
    edges.push_back({4, 6});
    Graph g = Graph::from_edges(7, edges);
    LevelSets ls;
    ls.k = 2;
    std::vector<NodeId> s{0, 1, 2, 3};
    std::vector<NodeId> w0{4, 5};
    std::vector<NodeId> v1{6};
    ls.S = NodeSet::of(7, s);
    ls.levels = {NodeSet::of(7, w0), NodeSet::of(7, v1)};
    SparsifiedFamily fam = build_sparsification(g, ls);
    EXPECT_TRUE(fam.at(6).chain[0].empty());
    EXPECT_FALSE(extract_cycle(g, ls, 6, fam).has_value());
    EXPECT_TRUE(bound_W0v(g, ls, 6).holds);
}

TEST(witness, isolated_level_node_has_empty_w0) {
    LevelInstance inst = k45_instance();
    Graph g = with_extra_nodes(inst.graph, 1);
    LevelSets ls = inst.levels;
    std::vector<NodeId> w0{4, 5, 6, 7, 8};
    std::vector<NodeId> v1{9, 10};
    ls.S = NodeSet::of(11, std::vector<NodeId>{0, 1, 2, 3});
    ls.levels = {NodeSet::of(11, w0), NodeSet::of(11, v1)};
    W0Bound b = bound_W0v(g, ls, 10);
    EXPECT_EQ(b.size, 0u);
    EXPECT_TRUE(b.holds);
}

TEST(witness, level_sets_validation) {
    LevelInstance inst = k45_instance();
    LevelSets bad = inst.levels;
    bad.levels[1].insert(4);
    EXPECT_THROW(bad.validate(inst.graph), std::invalid_argument);
    LevelSets thin = inst.levels;
    thin.k = 3;
    thin.levels.push_back(NodeSet(10));
    EXPECT_THROW(thin.validate(inst.graph), std::invalid_argument);
    nlohmann::json j = inst.levels.to_json();
    LevelSets back = LevelSets::from_json(j, 10);
    EXPECT_EQ(back.S, inst.levels.S);
    EXPECT_EQ(back.levels, inst.levels.levels);
}

TEST(witness, random_instance_invariants) {
    int witnesses = 0;
    int violations = 0;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const int k = 2 + static_cast<int>(seed % 3);
        LevelInstance inst = random_level_instance(k, seed);
        const Graph &g = inst.graph;
        const LevelSets &ls = inst.levels;
        ASSERT_LE(g.node_count(), 40u);
        SparsifiedFamily fam = build_sparsification(g, ls);
        bool base_empty_so_far = true;
        for (int i = 1; i < k; ++i) {
            const std::uint64_t cap = out_degree_cap(i, k);
            int q_sum = 0;
            for (int j = 1; j <= i; ++j) {
                q_sum += (k - j) / 2;
            }
            for (NodeId v : ls.levels[static_cast<std::size_t>(i)].members()) {
                const NodeFamily &f = fam.at(v);
                ASSERT_EQ(f.chain.size(), static_cast<std::size_t>(2 * f.q + 1));
                for (std::size_t c = 0; c + 1 < f.chain.size(); ++c) {
                    EXPECT_TRUE(f.chain[c].subset_of(f.chain[c + 1]));
                }
                EXPECT_TRUE(f.chain.back().subset_of(f.H));
                EXPECT_TRUE(f.out.subset_of(f.H));
                for (const BipartiteEdge &e : f.out.edges()) {
                    EXPECT_LE(f.out.degree_of_s(e.s), cap);
                }
                // Partition of H(v).
                for (const BipartiteEdge &e : f.H.edges()) {
                    int places = (f.chain[0].contains(e) ? 1 : 0) + (f.out.contains(e) ? 1 : 0);
                    for (int gamma = 1; gamma <= f.q; ++gamma) {
                        if (f.chain[2 * gamma].contains(e) && !f.chain[2 * gamma - 1].contains(e)) {
                            ++places;
                        }
                    }
                    EXPECT_EQ(places, 1);
                    expect_trace(g, ls, fam, v, e);
                }
                if (!f.chain[0].empty()) {
                    auto w = extract_cycle(g, ls, v, fam);
                    ASSERT_TRUE(w.has_value());
                    expect_witness_valid(g, ls, *w);
                    ++witnesses;
                }
            }
            for (NodeId v : ls.levels[static_cast<std::size_t>(i)].members()) {
                if (!fam.at(v).chain[0].empty()) {
                    base_empty_so_far = false;
                }
            }
            if (base_empty_so_far) {
                for (NodeId v : ls.levels[static_cast<std::size_t>(i)].members()) {
                    W0Bound b = bound_W0v(g, ls, v);
                    violations += b.holds ? 0 : 1;
                    for (NodeId w : w0_of(g, ls, v)) {
                        EXPECT_GE(static_cast<int>(fam.at(v).out.degree_of_w(w)), k * k - 2 * q_sum)
                            << "seed " << seed << " v " << v << " w " << w;
                    }
                }
            }
        }
    }
    EXPECT_EQ(violations, 0);
    EXPECT_GT(witnesses, 0);
}

TEST(witness, degeneracy_path_grow) {
    std::vector<BipartiteEdge> edges;
    for (NodeId s = 0; s < 3; ++s) {
        for (NodeId w = 3; w < 7; ++w) {
            edges.push_back({s, w});
        }
    }
    EdgeSubset kk(edges);
    std::vector<NodeId> path = degeneracy_path_grow(kk, 3);
    ASSERT_EQ(path.size(), 6u);
    std::vector<NodeId> sorted = path;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        bool a = path[i] < 3;
        bool b = path[i + 1] < 3;
        EXPECT_NE(a, b);
        BipartiteEdge e = a ? BipartiteEdge{path[i], path[i + 1]} : BipartiteEdge{path[i + 1], path[i]};
        EXPECT_TRUE(kk.contains(e));
    }

    EdgeSubset sparse(std::vector<BipartiteEdge>{{0, 3}, {1, 3}, {1, 4}});
    EXPECT_THROW(degeneracy_path_grow(sparse, 3), std::runtime_error);
}

TEST(witness, out_degree_cap_values) {
    EXPECT_EQ(out_degree_cap(1, 2), 1u);
    EXPECT_EQ(out_degree_cap(2, 4), 6u);
    EXPECT_EQ(out_degree_cap(3, 4), 12u);
}
