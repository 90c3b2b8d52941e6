// Command-line driver: instance generation, detection sweeps, oracle queries,
// witness extraction and the quantum cost model.

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "c2k/experiment.h"
#include "c2k/fixtures.h"
#include "c2k/generators.h"
#include "c2k/oracle.h"
#include "c2k/quantum_cost.h"
#include "c2k/witness.h"
#include "json.hpp"

namespace {

using namespace c2k;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitOracleGate = 4;

Graph load_graph(const std::string &path) { return read_edge_list_file(path); }

nlohmann::json load_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    return nlohmann::json::parse(in);
}

/// Writes text to `path`, or to stdout when path is empty or "-".
void emit(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    out << text;
}

std::vector<NodeId> parse_id_list(const std::string &text) {
    std::vector<NodeId> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(static_cast<NodeId>(std::stoul(item)));
        }
    }
    return out;
}

struct GraphGenArgs {
    std::string spec;
    std::uint64_t seed = 0;
    std::size_t plant = 0;
    bool hub = false;
    std::string out;
};

int cmd_graph_gen(const GraphGenArgs &a) {
    Graph g = generate(parse_generator_spec(a.spec), a.seed);
    if (a.plant != 0) {
        g = plant_cycle(g, a.plant, a.hub, derive_seed(a.seed, 1)).graph;
    }
    std::ostringstream text;
    write_edge_list(text, g);
    emit(a.out, text.str());
    return kExitOk;
}

struct DetectArgs {
    ExperimentConfig config;
    std::string variant = "even";
    std::optional<double> p;
    std::optional<std::uint64_t> K;
    std::optional<std::uint64_t> tau;
    bool parallel = false;
    std::string out;
};

int cmd_detect(DetectArgs a) {
    a.config.variant = parse_variant(a.variant);
    a.config.overrides = {a.p, a.K, a.tau};
    a.config.exec = a.parallel ? Exec::parallel : Exec::serial;
    a.config.validate();
    ExperimentReport report = run_experiment(a.config);
    emit(a.out, a.config.format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n");
    return kExitOk;
}

struct OracleArgs {
    std::string graph;
    std::size_t length = 4;
    bool at_most = false;
    std::string cycle;
    bool parallel = false;
    std::string out;
};

int cmd_oracle_find(const OracleArgs &a) {
    Graph g = load_graph(a.graph);
    CycleQuery q = a.at_most ? CycleQuery::up_to(a.length) : CycleQuery::exact(a.length);
    auto found = find_cycle(g, q);
    nlohmann::json j = {{"length", a.length}, {"at_most", a.at_most}, {"found", found.has_value()}};
    j["cycle"] = found ? nlohmann::json(*found) : nlohmann::json(nullptr);
    emit(a.out, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_oracle_girth(const OracleArgs &a) {
    Graph g = load_graph(a.graph);
    auto value = girth(g, a.parallel ? Exec::parallel : Exec::serial);
    nlohmann::json j = {{"n", g.node_count()}, {"edges", g.edge_count()}};
    j["girth"] = value ? nlohmann::json(*value) : nlohmann::json(nullptr);
    emit(a.out, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_oracle_validate(const OracleArgs &a) {
    Graph g = load_graph(a.graph);
    std::vector<NodeId> cycle = parse_id_list(a.cycle);
    for (NodeId v : cycle) {
        if (v >= g.node_count()) {
            throw std::invalid_argument("cycle node " + std::to_string(v) + " outside the graph");
        }
    }
    const bool ok = validate_cycle(g, cycle, CycleQuery::exact(std::max<std::size_t>(3, cycle.size())));
    emit(a.out, nlohmann::json({{"cycle", cycle}, {"valid", ok}}).dump(2) + "\n");
    return kExitOk;
}

struct ExtractArgs {
    std::string graph;
    std::string levels;
    std::string fixture;
    std::optional<NodeId> node;
    std::string out;
};

int cmd_extract(const ExtractArgs &a) {
    Graph g;
    LevelSets ls;
    if (!a.fixture.empty()) {
        if (a.fixture != "k45") {
            throw std::invalid_argument("unknown fixture '" + a.fixture + "'");
        }
        LevelInstance inst = k45_instance();
        g = inst.graph;
        ls = inst.levels;
    } else {
        if (a.graph.empty() || a.levels.empty()) {
            throw std::invalid_argument("extract needs --graph and --levels, or --fixture");
        }
        g = load_graph(a.graph);
        ls = LevelSets::from_json(load_json(a.levels), g.node_count());
    }
    ls.validate(g);
    SparsifiedFamily fam = build_sparsification(g, ls);

    std::vector<NodeId> targets;
    if (a.node) {
        targets.push_back(*a.node);
    } else {
        targets = fam.nonempty_base();
    }
    CycleQuery through_s = CycleQuery::exact(static_cast<std::size_t>(2 * ls.k));
    through_s.must_intersect = ls.S;
    nlohmann::json witnesses = nlohmann::json::array();
    for (NodeId v : targets) {
        auto w = extract_cycle(g, ls, v, fam);
        nlohmann::json entry = w ? w->to_json() : nlohmann::json({{"v", v}, {"witness", nullptr}});
        entry["valid"] = w && validate_cycle(g, w->cycle, through_s);
        W0Bound b = bound_W0v(g, ls, v);
        entry["W0_size"] = b.size;
        entry["W0_bound"] = b.bound;
        entry["W0_bound_holds"] = b.holds;
        witnesses.push_back(entry);
    }
    nlohmann::json j = {{"k", ls.k}, {"levels", ls.to_json()}, {"witnesses", witnesses}};
    emit(a.out, j.dump(2) + "\n");
    return kExitOk;
}

struct CostArgs {
    std::vector<int> ks{2};
    int from = 10;
    int to = 30;
    double delta = 0.1;
    bool clamp_p = false;
    std::string out;
};

int cmd_cost(const CostArgs &a) {
    QuantumCostOptions opts;
    opts.clamp_p = a.clamp_p;
    std::vector<CostSweepRow> rows = cost_sweep(a.ks, a.from, a.to, a.delta, opts);
    std::ostringstream csv;
    csv.precision(17);
    for (int k : a.ks) {
        std::vector<CostSweepRow> own;
        for (const auto &r : rows) {
            if (r.k == k) {
                own.push_back(r);
            }
        }
        if (own.size() >= 2) {
            csv << "# k=" << k << " fitted_exponent=" << fitted_exponent(own) << "\n";
        }
    }
    csv << "k,n,tau,K,T,D,success_probability,amplified,total,dominant,classical_bound\n";
    for (const auto &r : rows) {
        const QuantumCost &c = r.cost;
        csv << r.k << ',' << r.n << ',' << c.tau << ',' << c.K << ',' << c.T_base << ',' << c.D_reduced << ','
            << c.success_probability << ',' << c.amplified << ',' << c.total << ',' << c.dominant << ','
            << c.classical_bound << '\n';
    }
    emit(a.out, csv.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Distributed C_2k-freeness detection toolkit"};
    app.set_config("--config", "", "Read options from a TOML/INI file (command-line flags take precedence)");
    app.require_subcommand(1);

    GraphGenArgs gen;
    DetectArgs det;
    OracleArgs orc;
    ExtractArgs ext;
    CostArgs cost;
    std::function<int()> action;

    auto *graph = app.add_subcommand("graph", "Graph utilities");
    graph->require_subcommand(1);
    auto *graph_gen = graph->add_subcommand("gen", "Generate an edge list");
    graph_gen->add_option("--spec", gen.spec, "Generator spec, e.g. tree:32, cycle:6, projective_plane:3")->required();
    graph_gen->add_option("--seed", gen.seed, "Generator seed")->envname("C2K_SEED");
    graph_gen->add_option("--plant", gen.plant, "Plant a cycle of this length");
    graph_gen->add_flag("--hub", gen.hub, "Route the planted cycle through a heavy hub");
    graph_gen->add_option("-o,--out", gen.out, "Output path (default stdout)");
    graph_gen->callback([&] { action = [&] { return cmd_graph_gen(gen); }; });

    auto *detect = app.add_subcommand("detect", "Run a detection variant over seeded trials");
    detect->add_option("--variant", det.variant, "even | even_low_prob | odd | bounded")->capture_default_str();
    detect->add_option("-k", det.config.k, "Half cycle length (cycle length 2k)")->capture_default_str();
    detect->add_option("--epsilon", det.config.epsilon, "Target one-sided error")->capture_default_str();
    detect->add_option("--trials", det.config.trials, "Number of seeded trials")->capture_default_str();
    detect->add_option("--seed", det.config.seed, "Experiment seed")->envname("C2K_SEED");
    detect->add_option("--generator", det.config.generator, "Generator spec for the instance");
    detect->add_option("--graph", det.config.graph_file, "Edge-list file for the instance");
    detect->add_option("--plant", det.config.plant_length, "Plant a cycle of this length");
    detect->add_flag("--hub", det.config.plant_hub, "Route the planted cycle through a heavy hub");
    detect->add_option("--p", det.p, "Override the selection probability");
    detect->add_option("--K", det.K, "Override the number of iterations");
    detect->add_option("--tau", det.tau, "Override the threshold tau");
    detect->add_option("--format", det.config.format, "json | csv")->capture_default_str();
    detect->add_flag("--parallel", det.parallel, "Run trials concurrently");
    detect->add_option("-o,--out", det.out, "Output path (default stdout)");
    detect->callback([&] { action = [&] { return cmd_detect(det); }; });

    auto *oracle = app.add_subcommand("oracle", "Centralized brute-force queries");
    oracle->require_subcommand(1);
    auto *find = oracle->add_subcommand("find", "Find a cycle of a given length");
    find->add_option("--graph", orc.graph, "Edge-list file")->required();
    find->add_option("--length", orc.length, "Cycle length")->capture_default_str();
    find->add_flag("--at-most", orc.at_most, "Accept any length from 3 to --length");
    find->add_option("-o,--out", orc.out, "Output path (default stdout)");
    find->callback([&] { action = [&] { return cmd_oracle_find(orc); }; });
    auto *gir = oracle->add_subcommand("girth", "Length of a shortest cycle");
    gir->add_option("--graph", orc.graph, "Edge-list file")->required();
    gir->add_flag("--parallel", orc.parallel, "Parallel BFS roots");
    gir->add_option("-o,--out", orc.out, "Output path (default stdout)");
    gir->callback([&] { action = [&] { return cmd_oracle_girth(orc); }; });
    auto *val = oracle->add_subcommand("validate", "Check a vertex sequence is a simple cycle");
    val->add_option("--graph", orc.graph, "Edge-list file")->required();
    val->add_option("--cycle", orc.cycle, "Comma-separated vertex ids")->required();
    val->add_option("-o,--out", orc.out, "Output path (default stdout)");
    val->callback([&] { action = [&] { return cmd_oracle_validate(orc); }; });

    auto *extract = app.add_subcommand("extract", "Sparsify a level structure and extract 2k-cycles through S");
    extract->add_option("--graph", ext.graph, "Edge-list file");
    extract->add_option("--levels", ext.levels, "Level sets JSON {k, S, levels}");
    extract->add_option("--fixture", ext.fixture, "Built-in instance (k45)");
    extract->add_option("--node", ext.node, "Only extract at this node");
    extract->add_option("-o,--out", ext.out, "Output path (default stdout)");
    extract->callback([&] { action = [&] { return cmd_extract(ext); }; });

    auto *cost_cmd = app.add_subcommand("cost", "Quantum round-cost sweep as CSV");
    cost_cmd->add_option("-k", cost.ks, "Values of k")->delimiter(',')->capture_default_str();
    cost_cmd->add_option("--from", cost.from, "Smallest log2 n")->capture_default_str();
    cost_cmd->add_option("--to", cost.to, "Largest log2 n")->capture_default_str();
    cost_cmd->add_option("--delta", cost.delta, "Failure probability")->capture_default_str();
    cost_cmd->add_flag("--clamp-p", cost.clamp_p, "Clamp p to 1 when deriving tau");
    cost_cmd->add_option("-o,--out", cost.out, "Output path (default stdout)");
    cost_cmd->callback([&] { action = [&] { return cmd_cost(cost); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        return action();
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const OracleLimitError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOracleGate;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::out_of_range &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
