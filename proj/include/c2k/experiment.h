#ifndef C2K_EXPERIMENT_H
#define C2K_EXPERIMENT_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "c2k/detect.h"
#include "c2k/graph.h"
#include "c2k/parallel.h"
#include "c2k/stats.h"
#include "json.hpp"

namespace c2k {

/// Runs f(t) for t in [0, trials), concurrently when exec is parallel.
/// f must only write to per-trial state.
template <class F>
void for_each_trial(std::uint64_t trials, Exec exec, F &&f) {
    const bool parallel = exec == Exec::parallel;
    const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t t = 0; t < count; ++t) {
        f(static_cast<std::uint64_t>(t));
    }
}

/// Seed of trial t of an experiment.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct ExperimentConfig {
    Variant variant = Variant::even;
    int k = 2;
    double epsilon = 1.0 / 3.0;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    /// Instance source: a generator spec ("tree:32") or an edge-list file.
    std::string generator;
    std::string graph_file;
    /// Optionally plant a cycle of this length, through a heavy hub if set.
    std::size_t plant_length = 0;
    bool plant_hub = false;
    ParamOverrides overrides;
    std::string format = "json";
    Exec exec = Exec::serial;

    void validate() const;
    nlohmann::json to_json() const;
};

/// Builds the instance named by the config (generator seeds derive from config.seed).
Graph build_instance(const ExperimentConfig &config);

struct TrialRecord {
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    bool reject = false;
    std::uint64_t rounds = 0;
    std::uint64_t max_congestion = 0;
    std::optional<std::uint64_t> iteration_of_first_reject;
    std::string call_of_first_reject;
    std::vector<NodeId> certificate;
};

struct Aggregates {
    std::uint64_t trials = 0;
    std::uint64_t rejections = 0;
    double frequency = 0.0;
    Interval wilson;
    double rounds_p50 = 0.0;
    double rounds_p90 = 0.0;
    double rounds_p99 = 0.0;
    double rounds_max = 0.0;
    std::uint64_t max_congestion = 0;

    static Aggregates from(const std::vector<TrialRecord> &records);
    nlohmann::json to_json() const;
    bool operator==(const Aggregates &) const = default;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::size_t n = 0;
    std::size_t edges = 0;
    nlohmann::json params;
    std::vector<TrialRecord> records;
    Aggregates aggregates;

    nlohmann::json to_json() const;
    /// One row per trial; a comment header carries the effective config and aggregates.
    std::string to_csv() const;
};

ExperimentReport run_experiment(const ExperimentConfig &config, const Graph &g);
ExperimentReport run_experiment(const ExperimentConfig &config);

}  // namespace c2k

#endif
