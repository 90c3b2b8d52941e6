#include "c2k/experiment.h"

#include <sstream>
#include <stdexcept>

#include "c2k/generators.h"

namespace c2k {

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    return derive_seed(seed, static_cast<std::uint64_t>(Stream::trial), trial);
}

void ExperimentConfig::validate() const {
    if (trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    if (k < 2) {
        throw std::invalid_argument("k must be >= 2");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    if (generator.empty() == graph_file.empty()) {
        throw std::invalid_argument("give exactly one of a generator spec or a graph file");
    }
    if (plant_length != 0 && plant_length < 3) {
        throw std::invalid_argument("planted cycle length must be >= 3");
    }
    if (plant_hub && plant_length == 0) {
        throw std::invalid_argument("a heavy hub needs a planted cycle");
    }
    if (format != "json" && format != "csv") {
        throw std::invalid_argument("format must be json or csv");
    }
    if (overrides.p && !(*overrides.p > 0.0 && *overrides.p <= 1.0)) {
        throw std::invalid_argument("p override must lie in (0, 1]");
    }
    if ((overrides.K && *overrides.K < 1) || (overrides.tau && *overrides.tau < 1)) {
        throw std::invalid_argument("K and tau overrides must be >= 1");
    }
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json o = nlohmann::json::object();
    if (overrides.p) {
        o["p"] = *overrides.p;
    }
    if (overrides.K) {
        o["K"] = *overrides.K;
    }
    if (overrides.tau) {
        o["tau"] = *overrides.tau;
    }
    return {
        {"variant", to_string(variant)},
        {"k", k},
        {"epsilon", epsilon},
        {"trials", trials},
        {"seed", seed},
        {"generator", generator},
        {"graph_file", graph_file},
        {"plant_length", plant_length},
        {"plant_hub", plant_hub},
        {"overrides", o},
        {"format", format},
    };
}

Graph build_instance(const ExperimentConfig &config) {
    Graph g = config.graph_file.empty()
                  ? generate(parse_generator_spec(config.generator),
                             derive_seed(config.seed, static_cast<std::uint64_t>(Stream::generator)))
                  : read_edge_list_file(config.graph_file);
    if (config.plant_length != 0) {
        g = plant_cycle(g, config.plant_length, config.plant_hub,
                        derive_seed(config.seed, static_cast<std::uint64_t>(Stream::generator), 1))
                .graph;
    }
    return g;
}

Aggregates Aggregates::from(const std::vector<TrialRecord> &records) {
    Aggregates a;
    a.trials = records.size();
    std::vector<double> rounds;
    for (const TrialRecord &r : records) {
        a.rejections += r.reject ? 1 : 0;
        rounds.push_back(static_cast<double>(r.rounds));
        a.max_congestion = std::max(a.max_congestion, r.max_congestion);
    }
    if (a.trials > 0) {
        a.frequency = static_cast<double>(a.rejections) / static_cast<double>(a.trials);
        a.rounds_p50 = percentile(rounds, 50);
        a.rounds_p90 = percentile(rounds, 90);
        a.rounds_p99 = percentile(rounds, 99);
        a.rounds_max = percentile(rounds, 100);
    }
    a.wilson = wilson_interval(a.rejections, a.trials);
    return a;
}

nlohmann::json Aggregates::to_json() const {
    return {
        {"trials", trials},
        {"rejections", rejections},
        {"rejection_frequency", frequency},
        {"wilson99", {{"lower", wilson.lower}, {"upper", wilson.upper}}},
        {"rounds", {{"p50", rounds_p50}, {"p90", rounds_p90}, {"p99", rounds_p99}, {"max", rounds_max}}},
        {"max_congestion", max_congestion},
    };
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const TrialRecord &r : records) {
        rows.push_back({
            {"trial", r.trial},
            {"seed", r.seed},
            {"verdict", r.reject ? "reject" : "accept"},
            {"rounds", r.rounds},
            {"max_congestion", r.max_congestion},
            {"iteration_of_first_reject",
             r.iteration_of_first_reject ? nlohmann::json(*r.iteration_of_first_reject) : nlohmann::json(nullptr)},
            {"call_of_first_reject", r.call_of_first_reject},
            {"certificate_cycle", r.certificate},
        });
    }
    return {
        {"config", config.to_json()},
        {"instance", {{"n", n}, {"edges", edges}}},
        {"params", params},
        {"aggregates", aggregates.to_json()},
        {"trials", rows},
    };
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream out;
    out << "# config " << config.to_json().dump() << "\n";
    out << "# params " << params.dump() << "\n";
    out << "# aggregates " << aggregates.to_json().dump() << "\n";
    out << "trial,seed,verdict,rounds,max_congestion,iteration_of_first_reject,call_of_first_reject,certificate\n";
    for (const TrialRecord &r : records) {
        out << r.trial << ',' << r.seed << ',' << (r.reject ? "reject" : "accept") << ',' << r.rounds << ','
            << r.max_congestion << ',';
        if (r.iteration_of_first_reject) {
            out << *r.iteration_of_first_reject;
        }
        out << ',' << r.call_of_first_reject << ',';
        for (std::size_t i = 0; i < r.certificate.size(); ++i) {
            out << (i ? " " : "") << r.certificate[i];
        }
        out << '\n';
    }
    return out.str();
}

ExperimentReport run_experiment(const ExperimentConfig &config, const Graph &g) {
    config.validate();
    ExperimentReport report;
    report.config = config;
    report.n = g.node_count();
    report.edges = g.edge_count();
    report.records.resize(config.trials);

    // Build parameters once so config errors surface before any trial runs.
    if (config.variant == Variant::bounded) {
        nlohmann::json passes = nlohmann::json::array();
        for (int l = 2; l <= config.k; ++l) {
            passes.push_back(DetectionParams::bounded_pass(g.node_count(), l, config.epsilon, config.overrides).to_json());
        }
        report.params = passes;
    } else {
        report.params =
            DetectionParams::make(config.variant, g.node_count(), config.k, config.epsilon, config.overrides).to_json();
    }

    for_each_trial(config.trials, config.exec, [&](std::uint64_t t) {
        const std::uint64_t seed = trial_seed(config.seed, t);
        DetectionStats stats = detect(g, config.variant, config.k, config.epsilon, config.overrides, seed);
        TrialRecord &r = report.records[t];
        r.trial = t;
        r.seed = seed;
        r.reject = stats.reject;
        r.rounds = stats.rounds();
        r.max_congestion = stats.max_congestion();
        r.iteration_of_first_reject = stats.iteration_of_first_reject;
        r.call_of_first_reject = stats.call_of_first_reject ? stage_name(*stats.call_of_first_reject) : "";
        r.certificate = stats.certificate_cycle;
    });
    report.aggregates = Aggregates::from(report.records);
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig &config) {
    config.validate();
    return run_experiment(config, build_instance(config));
}

}  // namespace c2k
