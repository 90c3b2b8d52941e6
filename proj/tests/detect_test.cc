#include <cmath>

#include "c2k/detect.h"
#include "c2k/fixtures.h"
#include "c2k/generators.h"
#include "c2k/oracle.h"
#include "c2k/stats.h"
#include "gtest/gtest.h"

using namespace c2k;

namespace {

void expect_certificate(const Graph &g, const DetectionStats &s, std::size_t length) {
    ASSERT_TRUE(s.reject);
    EXPECT_TRUE(validate_cycle(g, s.certificate_cycle, CycleQuery::exact(length)));
    for (const CallRecord &call : s.rejecting_calls) {
        EXPECT_TRUE(validate_cycle(g, call.certificate, CycleQuery::exact(call.certificate.size())));
    }
}

ParamOverrides with_K(std::uint64_t K) {
    ParamOverrides ov;
    ov.K = K;
    return ov;
}

}  // namespace

TEST(detect_params, defaults_at_n32_k2) {
    DetectionParams d = DetectionParams::make(Variant::even, 32, 2);
    EXPECT_NEAR(d.epsilon_hat, std::log(9.0), 1e-12);
    EXPECT_EQ(d.p, 1.0);
    EXPECT_EQ(d.K, 563u);
    EXPECT_EQ(d.tau, 256u);
    EXPECT_FALSE(d.p_overridden || d.K_overridden || d.tau_overridden);
}

TEST(detect_params, formulas_hold_without_overrides) {
    for (std::size_t n : {64u, 1000u, 100000u}) {
        for (int k : {2, 3, 4}) {
            DetectionParams d = DetectionParams::make(Variant::even, n, k, 0.1);
            double eh = std::log(30.0);
            double p = std::min(1.0, eh * 2 * k * k / std::pow(static_cast<double>(n), 1.0 / k));
            EXPECT_DOUBLE_EQ(d.p, p);
            EXPECT_EQ(d.K, static_cast<std::uint64_t>(std::ceil(eh * std::pow(2.0 * k, 2.0 * k))));
            EXPECT_EQ(d.tau, static_cast<std::uint64_t>(std::ceil(k * std::pow(2.0, k) * n * p)));
        }
    }
}

TEST(detect_params, overrides_are_flagged) {
    ParamOverrides ov;
    ov.p = 0.25;
    DetectionParams d = DetectionParams::make(Variant::even, 32, 2, 1.0 / 3.0, ov);
    EXPECT_TRUE(d.p_overridden);
    EXPECT_EQ(d.p, 0.25);
    EXPECT_EQ(d.tau, 64u);
    ov.tau = 10;
    ov.K = 3;
    d = DetectionParams::make(Variant::even, 32, 2, 1.0 / 3.0, ov);
    EXPECT_EQ(d.tau, 10u);
    EXPECT_EQ(d.K, 3u);
    EXPECT_TRUE(d.to_json()["overrides"]["tau"].get<bool>());
    ParamOverrides bad;
    bad.p = 1.5;
    EXPECT_THROW(DetectionParams::make(Variant::even, 32, 2, 1.0 / 3.0, bad), std::invalid_argument);
    EXPECT_THROW(DetectionParams::make(Variant::even, 32, 2, 1.5), std::invalid_argument);
    EXPECT_THROW(DetectionParams::make(Variant::even, 32, 1), std::invalid_argument);
}

TEST(detect_params, odd_and_bounded) {
    DetectionParams odd = DetectionParams::make(Variant::odd, 20, 2);
    EXPECT_EQ(odd.K, static_cast<std::uint64_t>(std::ceil(std::log(9.0) * std::pow(5.0, 5.0))));
    EXPECT_EQ(odd.tau, 20u);
    EXPECT_EQ(odd.num_colors(), 5);
    DetectionParams b = DetectionParams::bounded_pass(100, 3);
    double p = std::min(1.0, std::log(9.0) * 18 / std::cbrt(100.0));
    EXPECT_DOUBLE_EQ(b.p, p);
    EXPECT_EQ(b.tau, static_cast<std::uint64_t>(std::ceil(200 * p)));
    EXPECT_EQ(parse_variant(to_string(Variant::even_low_prob)), Variant::even_low_prob);
    EXPECT_THROW(parse_variant("triangle"), std::invalid_argument);
}

TEST(detect_roles, light_nodes_use_exact_powers) {
    // Degree 5 at n = 25 sits exactly on the boundary deg^2 = n.
    Graph boundary = with_extra_nodes(star_graph(6), 19);
    EXPECT_TRUE(light_nodes(boundary, 2).contains(0));
    Graph over = with_extra_nodes(star_graph(7), 28);
    EXPECT_FALSE(light_nodes(over, 2).contains(0));
    EXPECT_TRUE(light_nodes(over, 2).contains(1));
    // Degree 3 at n = 27 is light for k = 3, degree 4 at n = 63 is not.
    EXPECT_TRUE(light_nodes(with_extra_nodes(star_graph(4), 23), 3).contains(0));
    EXPECT_FALSE(light_nodes(with_extra_nodes(star_graph(5), 58), 3).contains(0));
}

TEST(detect_roles, heavy_witnesses_and_neighborhood) {
    Graph g = heavy_cycle_scenario().graph;
    NodeSet s = heavy_cycle_scenario().selection;
    NodeSet w = heavy_witnesses(g, s, 4);
    EXPECT_EQ(w.members(), std::vector<NodeId>{0});
    EXPECT_EQ(neighborhood(g, s).members(), std::vector<NodeId>{0});
}

TEST(detect_roles, selection_and_coloring_are_reproducible) {
    EXPECT_EQ(draw_selection(100, 0.3, 5), draw_selection(100, 0.3, 5));
    EXPECT_NE(draw_selection(100, 0.3, 5), draw_selection(100, 0.3, 6));
    EXPECT_EQ(draw_selection(10, 1.0, 1).size(), 10u);
    EXPECT_EQ(draw_coloring(50, 4, 1, 2).values(), draw_coloring(50, 4, 1, 2).values());
    EXPECT_NE(draw_coloring(50, 4, 1, 2).values(), draw_coloring(50, 4, 1, 3).values());
    for (NodeId v = 0; v < 50; ++v) {
        EXPECT_EQ(draw_coloring(50, 4, 1, 2)[v], draw_color(1, 2, v, 4));
    }
}

TEST(detect_even, tree_accepts_every_seed) {
    Graph t = random_tree(32, 1);
    DetectionParams d = DetectionParams::make(Variant::even, 32, 2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        DetectionStats s = detect_even(t, d, seed);
        EXPECT_FALSE(s.reject);
        EXPECT_EQ(s.iterations_run, d.K);
    }
}

TEST(detect_even, c6_accepts_for_k2) {
    Graph c6 = with_extra_nodes(cycle_graph(6), 10);
    ASSERT_FALSE(find_cycle(c6, CycleQuery::exact(4)).has_value());
    DetectionParams d = DetectionParams::make(Variant::even, c6.node_count(), 2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        EXPECT_FALSE(detect_even(c6, d, seed).reject);
    }
}

TEST(detect_even, padded_c4_rejects_often) {
    Graph g = well_colored_c4(32).graph;
    DetectionParams d = DetectionParams::make(Variant::even, 32, 2);
    std::uint64_t rejections = 0;
    const std::uint64_t trials = 30;
    for (std::uint64_t seed = 0; seed < trials; ++seed) {
        DetectOptions o;
        o.stop_on_reject = true;
        DetectionStats s = detect_even(g, d, seed, o);
        if (s.reject) {
            ++rejections;
            expect_certificate(g, s, 4);
        }
    }
    EXPECT_GE(wilson_interval(rejections, trials).upper, 2.0 / 3.0);
    EXPECT_GE(rejections, 20u);
}

TEST(detect_even, forced_scenarios_reject_in_designated_call) {
    for (const ForcedScenario &sc : {light_cycle_scenario(), selected_cycle_scenario(), heavy_cycle_scenario()}) {
        DetectOptions o;
        o.forced_coloring = sc.coloring;
        o.forced_selection = sc.selection;
        DetectionStats s = detect_even(sc.graph, DetectionParams::make(Variant::even, 32, 2, 1.0 / 3.0, with_K(2)), 1, o);
        ASSERT_TRUE(s.reject);
        EXPECT_EQ(s.iteration_of_first_reject, std::optional<std::uint64_t>(0));
        EXPECT_EQ(s.call_of_first_reject, std::optional<Stage>(sc.designated_call));
        EXPECT_EQ(s.rejecting_nodes, std::vector<NodeId>{sc.designated_node});
        for (const CallRecord &call : s.rejecting_calls) {
            EXPECT_EQ(call.stage, sc.designated_call);
        }
        expect_certificate(sc.graph, s, 4);
    }
}

TEST(detect_even, round_bound_and_json) {
    PlantedInstance inst = planted_c4_heavy_hub(3);
    DetectionParams d = DetectionParams::make(Variant::even, 32, 2);
    DetectionStats s = detect_even(inst.graph, d, 7);
    EXPECT_LE(s.rounds(), 3 * d.K * d.k * d.tau + 10 * d.K);
    nlohmann::json j = s.to_json();
    for (const char *key : {"variant", "k", "n", "params", "verdict", "rejecting_nodes", "certificate_cycle", "rounds",
                            "max_congestion", "iteration_of_first_reject"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["rounds"], s.rounds());
}

TEST(detect_even, serial_and_parallel_agree) {
    Graph g = erdos_renyi(40, 0.15, 2);
    DetectionParams d = DetectionParams::make(Variant::even, 40, 2, 1.0 / 3.0, with_K(30));
    DetectOptions par;
    par.exec = Exec::parallel;
    EXPECT_EQ(detect_even(g, d, 3).to_json(), detect_even(g, d, 3, par).to_json());
}

TEST(detect_even, k3_soundness_and_completeness_small) {
    ParamOverrides ov = with_K(300);
    Graph t = random_tree(40, 4);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        EXPECT_FALSE(detect(t, Variant::even, 3, 1.0 / 3.0, ov, seed).reject);
    }
    Graph c6 = with_extra_nodes(cycle_graph(6), 10);
    DetectOptions o;
    o.stop_on_reject = true;
    Coloring forced = Coloring::uniform(16, 1, 6);
    for (NodeId v = 0; v < 6; ++v) {
        forced.set(v, static_cast<int>(v));
    }
    o.forced_coloring = forced;
    DetectionStats s = detect(c6, Variant::even, 3, 1.0 / 3.0, ov, 1, o);
    EXPECT_EQ(s.rejecting_nodes, std::vector<NodeId>{3});
    expect_certificate(c6, s, 6);
}

TEST(detect_low_prob, acyclic_accepts_and_rounds_are_bounded) {
    Graph t = random_tree(32, 9);
    DetectionParams d = DetectionParams::make(Variant::even_low_prob, 32, 2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        DetectionStats s = detect_even_low_prob(t, d, seed);
        EXPECT_FALSE(s.reject);
        EXPECT_LE(s.rounds(), 4 * d.k * d.K + 16);
    }
}

TEST(detect_odd, c5_rejects_and_bipartite_accepts) {
    Graph c5 = with_extra_nodes(cycle_graph(5), 3);
    DetectionParams d = DetectionParams::make(Variant::odd, 8, 2, 1.0 / 3.0, with_K(400));
    std::uint64_t rejections = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        DetectionStats s = detect_odd(c5, d, seed);
        if (s.reject) {
            ++rejections;
            expect_certificate(c5, s, 5);
        }
    }
    EXPECT_GT(rejections, 0u);

    Graph bip = projective_plane_incidence(2);
    DetectionParams db = DetectionParams::make(Variant::odd, bip.node_count(), 2, 1.0 / 3.0, with_K(400));
    ParamOverrides all_active = with_K(400);
    all_active.tau = 1;
    DetectionParams dense = DetectionParams::make(Variant::odd, bip.node_count(), 2, 1.0 / 3.0, all_active);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        EXPECT_FALSE(detect_odd(bip, db, seed).reject);
        EXPECT_FALSE(detect_odd(bip, dense, seed).reject);
    }

    Graph c7 = cycle_graph(7);
    ParamOverrides ov7 = with_K(400);
    ov7.tau = 1;
    DetectionParams d7 = DetectionParams::make(Variant::odd, 7, 2, 1.0 / 3.0, ov7);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        EXPECT_FALSE(detect_odd(c7, d7, seed).reject);
    }
}

TEST(detect_bounded, triangle_rejects_in_first_pass) {
    Graph g = girth3_instance();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        DetectionStats s = detect_bounded(g, 3, seed, 1.0 / 3.0, with_K(200));
        ASSERT_TRUE(s.reject);
        EXPECT_EQ(s.pass_of_first_reject, std::optional<int>(2));
        EXPECT_EQ(s.params.size(), 1u);
        expect_certificate(g, s, s.certificate_cycle.size());
        EXPECT_LE(s.certificate_cycle.size(), 4u);
    }
}

TEST(detect_bounded, accepts_trees_and_high_girth) {
    Graph t = random_tree(30, 2);
    EXPECT_FALSE(detect_bounded(t, 4, 1, 1.0 / 3.0, with_K(50)).reject);
    for (const Graph &g : girth9_fixtures()) {
        DetectionStats s = detect_bounded(g, 4, 1, 1.0 / 3.0, with_K(50));
        EXPECT_FALSE(s.reject);
        EXPECT_EQ(s.params.size(), 3u);
    }
}

TEST(detect_bounded, finds_c5_and_c6_in_later_passes) {
    for (std::size_t len : {5u, 6u}) {
        Graph g = with_extra_nodes(cycle_graph(len), 6);
        DetectOptions o;
        o.stop_on_reject = true;
        DetectionStats s = detect_bounded(g, 3, 11, 1.0 / 3.0, with_K(6000), o);
        ASSERT_TRUE(s.reject) << len;
        EXPECT_EQ(s.pass_of_first_reject, std::optional<int>(3));
        expect_certificate(g, s, len);
    }
}
