#include <cstdio>
#include <fstream>
#include <sstream>

#include "c2k/experiment.h"
#include "c2k/generators.h"
#include "gtest/gtest.h"

using namespace c2k;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.generator = "tree:24";
    c.trials = 12;
    c.seed = 17;
    c.overrides.K = 20;
    return c;
}

}  // namespace

TEST(experiment, config_validation) {
    ExperimentConfig c = small_config();
    EXPECT_NO_THROW(c.validate());
    c.trials = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config();
    c.graph_file = "x.edges";
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config();
    c.generator.clear();
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config();
    c.plant_hub = true;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config();
    c.format = "xml";
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config();
    c.epsilon = 1.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(experiment, tree_sweep_never_rejects) {
    ExperimentReport r = run_experiment(small_config());
    EXPECT_EQ(r.aggregates.trials, 12u);
    EXPECT_EQ(r.aggregates.rejections, 0u);
    EXPECT_EQ(r.aggregates.wilson.lower, 0.0);
}

TEST(experiment, reproducible_and_parallel_invariant) {
    ExperimentConfig c = small_config();
    c.generator = "erdos_renyi:20:0.2";
    ExperimentReport a = run_experiment(c);
    ExperimentReport b = run_experiment(c);
    EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
    EXPECT_EQ(a.to_csv(), b.to_csv());
    c.exec = Exec::parallel;
    ExperimentReport p = run_experiment(c);
    nlohmann::json ja = a.to_json();
    nlohmann::json jp = p.to_json();
    EXPECT_EQ(ja["trials"], jp["trials"]);
    EXPECT_EQ(ja["aggregates"], jp["aggregates"]);
}

TEST(experiment, aggregates_recompute_from_rows) {
    ExperimentConfig c = small_config();
    c.generator = "empty:24";
    c.plant_length = 4;
    c.overrides.K = 40;
    ExperimentReport r = run_experiment(c);
    EXPECT_EQ(Aggregates::from(r.records), r.aggregates);
    EXPECT_GT(r.aggregates.rejections, 0u);
    std::uint64_t rejections = 0;
    nlohmann::json j = r.to_json();
    for (const auto &row : j["trials"]) {
        rejections += row["verdict"] == "reject" ? 1 : 0;
    }
    EXPECT_EQ(rejections, r.aggregates.rejections);
}

TEST(experiment, trial_seeds_are_distinct) {
    ExperimentReport r = run_experiment(small_config());
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        EXPECT_EQ(r.records[i].seed, trial_seed(17, i));
        for (std::size_t j = 0; j < i; ++j) {
            EXPECT_NE(r.records[i].seed, r.records[j].seed);
        }
    }
}

TEST(experiment, config_echo_and_csv_shape) {
    ExperimentConfig c = small_config();
    c.format = "csv";
    ExperimentReport r = run_experiment(c);
    nlohmann::json j = r.to_json();
    EXPECT_EQ(j["config"]["overrides"]["K"], 20);
    EXPECT_TRUE(j["params"]["overrides"]["K"].get<bool>());
    std::stringstream csv(r.to_csv());
    std::string line;
    int comments = 0;
    int rows = 0;
    while (std::getline(csv, line)) {
        if (line.rfind("#", 0) == 0) {
            ++comments;
        } else {
            ++rows;
        }
    }
    EXPECT_EQ(comments, 3);
    EXPECT_EQ(rows, 13);
}

TEST(experiment, graph_file_instances) {
    std::string path = ::testing::TempDir() + "c2k_experiment_test.edges";
    write_edge_list_file(path, cycle_graph(6));
    ExperimentConfig c = small_config();
    c.generator.clear();
    c.graph_file = path;
    EXPECT_EQ(build_instance(c), cycle_graph(6));
    c.graph_file = path + ".missing";
    EXPECT_THROW(build_instance(c), IoError);
    std::remove(path.c_str());
}

TEST(experiment, every_variant_runs) {
    for (Variant v : {Variant::even, Variant::even_low_prob, Variant::odd, Variant::bounded}) {
        ExperimentConfig c = small_config();
        c.variant = v;
        c.k = 3;
        c.trials = 3;
        c.overrides.K = 5;
        ExperimentReport r = run_experiment(c);
        EXPECT_EQ(r.records.size(), 3u);
        EXPECT_EQ(r.aggregates.rejections, 0u);
    }
}
