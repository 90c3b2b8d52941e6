#include "c2k/detect.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace c2k {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::even:
            return "even";
        case Variant::even_low_prob:
            return "even_low_prob";
        case Variant::odd:
            return "odd";
        case Variant::bounded:
            return "bounded";
    }
    return "?";
}

Variant parse_variant(const std::string &text) {
    for (Variant v : {Variant::even, Variant::even_low_prob, Variant::odd, Variant::bounded}) {
        if (to_string(v) == text) {
            return v;
        }
    }
    throw std::invalid_argument("unknown variant '" + text + "' (expected even, even_low_prob, odd, bounded)");
}

double epsilon_hat(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    return std::log(3.0 / epsilon);
}

double selection_probability(std::size_t n, int k, double eps_hat) {
    double root = std::pow(static_cast<double>(n), 1.0 / k);
    return std::min(1.0, eps_hat * 2.0 * k * k / root);
}

std::uint64_t repetitions(int cycle_length, double eps_hat) {
    double value = eps_hat * std::pow(static_cast<double>(cycle_length), cycle_length);
    if (!(value < 1.8e19)) {
        throw std::overflow_error("repetition count does not fit in 64 bits");
    }
    return static_cast<std::uint64_t>(std::ceil(value));
}

namespace {

std::uint64_t ceil_positive(double x) {
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(x)));
}

void apply_overrides(DetectionParams &d, const ParamOverrides &o, bool recompute_tau_from_p, double tau_factor) {
    if (o.p) {
        d.p = *o.p;
        d.p_overridden = true;
        if (recompute_tau_from_p) {
            d.tau = ceil_positive(tau_factor * d.p);
        }
    }
    if (o.K) {
        d.K = *o.K;
        d.K_overridden = true;
    }
    if (o.tau) {
        d.tau = *o.tau;
        d.tau_overridden = true;
    }
}

}  // namespace

DetectionParams DetectionParams::make(Variant variant, std::size_t n, int k, double epsilon,
                                      const ParamOverrides &overrides) {
    if (variant == Variant::bounded) {
        return bounded_pass(n, k, epsilon, overrides);
    }
    if (k < 2) {
        throw std::invalid_argument("k must be >= 2");
    }
    DetectionParams d;
    d.variant = variant;
    d.k = k;
    d.n = n;
    d.epsilon = epsilon;
    d.epsilon_hat = c2k::epsilon_hat(epsilon);
    if (variant == Variant::odd) {
        d.p = 1.0;
        d.K = repetitions(2 * k + 1, d.epsilon_hat);
        d.tau = std::max<std::uint64_t>(1, n);
        apply_overrides(d, overrides, false, 0.0);
    } else {
        d.p = selection_probability(n, k, d.epsilon_hat);
        d.K = repetitions(2 * k, d.epsilon_hat);
        double factor = static_cast<double>(k) * std::ldexp(1.0, k) * static_cast<double>(n);
        d.tau = ceil_positive(factor * d.p);
        apply_overrides(d, overrides, true, factor);
    }
    d.validate();
    return d;
}

DetectionParams DetectionParams::bounded_pass(std::size_t n, int l, double epsilon, const ParamOverrides &overrides) {
    if (l < 2) {
        throw std::invalid_argument("bounded pass needs l >= 2");
    }
    DetectionParams d;
    d.variant = Variant::bounded;
    d.k = l;
    d.n = n;
    d.epsilon = epsilon;
    d.epsilon_hat = c2k::epsilon_hat(epsilon);
    d.p = selection_probability(n, l, d.epsilon_hat);
    d.K = repetitions(2 * l, d.epsilon_hat);
    double factor = 2.0 * static_cast<double>(n);
    d.tau = ceil_positive(factor * d.p);
    apply_overrides(d, overrides, true, factor);
    d.validate();
    return d;
}

int DetectionParams::num_colors() const {
    return variant == Variant::odd ? 2 * k + 1 : 2 * k;
}

void DetectionParams::validate() const {
    if (k < 2) {
        throw std::invalid_argument("k must be >= 2");
    }
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p must lie in (0, 1]");
    }
    if (K < 1) {
        throw std::invalid_argument("K must be >= 1");
    }
    if (tau < 1) {
        throw std::invalid_argument("tau must be >= 1");
    }
}

nlohmann::json DetectionParams::to_json() const {
    return {
        {"variant", to_string(variant)},
        {"k", k},
        {"n", n},
        {"epsilon", epsilon},
        {"epsilon_hat", epsilon_hat},
        {"p", p},
        {"K", K},
        {"tau", tau},
        {"overrides", {{"p", p_overridden}, {"K", K_overridden}, {"tau", tau_overridden}}},
    };
}

NodeSet light_nodes(const Graph &g, int k) {
    NodeSet u(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (power_at_most(g.degree(v), k, g.node_count())) {
            u.insert(v);
        }
    }
    return u;
}

NodeSet draw_selection(std::size_t n, double p, std::uint64_t seed) {
    NodeSet s(n);
    std::bernoulli_distribution coin(p);
    for (NodeId v = 0; v < n; ++v) {
        StreamRng rng(derive_seed(seed, static_cast<std::uint64_t>(Stream::selection), v));
        if (coin(rng)) {
            s.insert(v);
        }
    }
    return s;
}

NodeSet heavy_witnesses(const Graph &g, const NodeSet &s, std::size_t min_neighbors) {
    NodeSet w(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (s.contains(u)) {
            continue;
        }
        std::size_t count = 0;
        for (NodeId x : g.neighbors(u)) {
            count += s.contains(x) ? 1 : 0;
        }
        if (count >= min_neighbors) {
            w.insert(u);
        }
    }
    return w;
}

NodeSet neighborhood(const Graph &g, const NodeSet &s) {
    NodeSet out(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId x : g.neighbors(u)) {
            if (s.contains(x)) {
                out.insert(u);
                break;
            }
        }
    }
    return out;
}

int draw_color(std::uint64_t seed, std::uint64_t iteration, NodeId v, int m) {
    StreamRng rng(derive_seed(seed, static_cast<std::uint64_t>(Stream::coloring), v, iteration));
    return std::uniform_int_distribution<int>(0, m - 1)(rng);
}

Coloring draw_coloring(std::size_t n, int m, std::uint64_t seed, std::uint64_t iteration) {
    std::vector<std::uint8_t> colors(n);
    for (NodeId v = 0; v < n; ++v) {
        colors[v] = static_cast<std::uint8_t>(draw_color(seed, iteration, v, m));
    }
    return Coloring(std::move(colors), m);
}

nlohmann::json DetectionStats::to_json() const {
    nlohmann::json j;
    j["variant"] = to_string(variant);
    j["k"] = k;
    j["n"] = n;
    if (variant == Variant::bounded) {
        nlohmann::json passes = nlohmann::json::array();
        for (const auto &p : params) {
            passes.push_back(p.to_json());
        }
        j["params"] = passes;
    } else if (!params.empty()) {
        j["params"] = params.front().to_json();
    }
    j["verdict"] = reject ? "reject" : "accept";
    j["rejecting_nodes"] = rejecting_nodes;
    j["certificate_cycle"] = certificate_cycle;
    j["rounds"] = rounds();
    j["max_congestion"] = max_congestion();
    j["iteration_of_first_reject"] =
        iteration_of_first_reject ? nlohmann::json(*iteration_of_first_reject) : nlohmann::json(nullptr);
    j["call_of_first_reject"] =
        call_of_first_reject ? nlohmann::json(stage_name(*call_of_first_reject)) : nlohmann::json(nullptr);
    if (variant == Variant::bounded) {
        j["pass_of_first_reject"] =
            pass_of_first_reject ? nlohmann::json(*pass_of_first_reject) : nlohmann::json(nullptr);
    }
    j["iterations_run"] = iterations_run;
    j["role_sizes"] = {{"U", light_count}, {"S", selected_count}, {"W", witness_count}};
    j["ledger"] = ledger.to_json();
    return j;
}

namespace {

/// One-phase exchange: every sender transmits a single unit to all its
/// neighbors; receivers count what arrives.
class LocalBroadcast : public NodeProgram {
   public:
    void reset(const NodeSet *senders, Stage stage, std::size_t n) {
        senders_ = senders;
        stage_ = stage;
        counts_.assign(n, 0);
        graph_ = nullptr;
    }
    void bind(const Graph &g) { graph_ = &g; }

    std::size_t phase_count() const override { return 2; }
    PhaseLabel phase_label(std::size_t phase) const override {
        return {stage_, static_cast<std::uint16_t>(phase)};
    }
    void step(NodeId v, const StepContext &ctx, std::span<const Incoming> inbox, Outbox &out) override {
        if (ctx.phase == 0) {
            if (senders_ == nullptr || senders_->contains(v)) {
                for (NodeId u : graph_->neighbors(v)) {
                    out.send(u, Message{v, 0});
                }
            }
            return;
        }
        counts_[v] = static_cast<std::uint32_t>(inbox.size());
    }
    Verdict verdict(NodeId) const override { return Verdict::accept; }
    std::uint32_t count(NodeId v) const { return counts_[v]; }

   private:
    const Graph *graph_ = nullptr;
    const NodeSet *senders_ = nullptr;
    Stage stage_ = Stage::setup;
    std::vector<std::uint32_t> counts_;
};

class Runner {
   public:
    Runner(const Graph &g, DetectionStats &stats, Exec exec) : g_(g), sim_(g), stats_(stats), exec_(exec) {}

    /// Runs the exchange and returns per-node receive counts.
    const LocalBroadcast &exchange(const NodeSet *senders, Stage stage) {
        broadcast_.reset(senders, stage, g_.node_count());
        broadcast_.bind(g_);
        RunOptions options;
        options.exec = exec_;
        merge(sim_.run(broadcast_, options));
        return broadcast_;
    }

    bool call(const Graph &h, const Coloring &coloring, const NodeSet &sources, const ColorBfsConfig &config,
              std::uint64_t seed, std::uint64_t iteration, int pass) {
        if (!bfs_) {
            bfs_.emplace(h, coloring, sources, config);
        } else {
            bfs_->reset(h, coloring, sources, config);
        }
        RunOptions options;
        options.seed = seed;
        options.exec = exec_;
        merge(sim_.run(*bfs_, options));
        if (!bfs_->any_rejected()) {
            return false;
        }
        CallRecord rec;
        rec.iteration = iteration;
        rec.pass = pass;
        rec.stage = config.stage;
        rec.rejecting_nodes = bfs_->rejecting_nodes();
        if (auto cert = bfs_->certificate(rec.rejecting_nodes.front())) {
            rec.certificate = cert->cycle;
        }
        if (!stats_.reject) {
            stats_.reject = true;
            stats_.iteration_of_first_reject = iteration;
            stats_.call_of_first_reject = config.stage;
            stats_.certificate_cycle = rec.certificate;
            if (stats_.variant == Variant::bounded) {
                stats_.pass_of_first_reject = pass;
            }
        }
        for (NodeId v : rec.rejecting_nodes) {
            auto &all = stats_.rejecting_nodes;
            auto it = std::lower_bound(all.begin(), all.end(), v);
            if (it == all.end() || *it != v) {
                all.insert(it, v);
            }
        }
        stats_.rejecting_calls.push_back(std::move(rec));
        return true;
    }

   private:
    void merge(const RunResult &r) {
        if (r.fault) {
            throw std::logic_error("protocol fault: " + r.fault->describe());
        }
        stats_.ledger.merge(r.ledger);
    }

    const Graph &g_;
    Simulator sim_;
    DetectionStats &stats_;
    Exec exec_;
    LocalBroadcast broadcast_;
    std::optional<ColorBfs> bfs_;
};

std::uint64_t call_seed(std::uint64_t seed, std::uint64_t iteration, int pass, int call) {
    return derive_seed(seed, static_cast<std::uint64_t>(Stream::call), iteration,
                       static_cast<std::uint64_t>(pass) * 16 + static_cast<std::uint64_t>(call));
}

void check_size(const Graph &g, std::size_t min_nodes, const char *what) {
    if (g.node_count() < min_nodes) {
        throw std::invalid_argument(std::string(what) + ": graph needs at least " + std::to_string(min_nodes) +
                                    " nodes");
    }
}

void check_forced(const DetectOptions &o, std::size_t n) {
    if (o.forced_coloring && o.forced_coloring->size() != n) {
        throw std::invalid_argument("forced coloring size does not match graph");
    }
    if (o.forced_selection && o.forced_selection->universe() != n) {
        throw std::invalid_argument("forced selection size does not match graph");
    }
}

DetectionStats init_stats(const Graph &g, Variant variant, int k) {
    DetectionStats stats;
    stats.variant = variant;
    stats.k = k;
    stats.n = g.node_count();
    return stats;
}

DetectionStats run_algorithm1(const Graph &g, const DetectionParams &params, std::uint64_t seed,
                              const DetectOptions &options, bool randomized) {
    params.validate();
    const int k = params.k;
    const std::size_t n = g.node_count();
    check_size(g, static_cast<std::size_t>(2 * k), randomized ? "detect_even_low_prob" : "detect_even");
    check_forced(options, n);
    if (options.forced_coloring && options.forced_coloring->num_colors() != 2 * k) {
        throw std::invalid_argument("forced coloring must use 2k colors");
    }

    DetectionStats stats = init_stats(g, randomized ? Variant::even_low_prob : Variant::even, k);
    stats.params.push_back(params);
    stats.params.back().variant = stats.variant;

    Runner runner(g, stats, options.exec);
    const NodeSet U = light_nodes(g, k);
    const NodeSet S = options.forced_selection ? *options.forced_selection : draw_selection(n, params.p, seed);
    const LocalBroadcast &setup = runner.exchange(&S, Stage::setup);
    NodeSet W(n);
    for (NodeId v = 0; v < n; ++v) {
        if (!S.contains(v) && setup.count(v) >= static_cast<std::uint32_t>(k * k)) {
            W.insert(v);
        }
    }
    stats.light_count = U.size();
    stats.selected_count = S.size();
    stats.witness_count = W.size();

    const Graph g_light = induced_subgraph(g, U);
    const Graph g_unselected = induced_subgraph(g, S.complement());
    auto config = [&](Stage stage) {
        return randomized ? ColorBfsConfig::randomized(k, params.tau, stage)
                          : ColorBfsConfig::even(k, params.tau, stage);
    };
    const ColorBfsConfig light = config(Stage::light);
    const ColorBfsConfig selected = config(Stage::selected);
    const ColorBfsConfig heavy = config(Stage::heavy);

    for (std::uint64_t it = 0; it < params.K; ++it) {
        const Coloring coloring = options.forced_coloring ? *options.forced_coloring : draw_coloring(n, 2 * k, seed, it);
        runner.exchange(nullptr, Stage::color_exchange);
        runner.call(g_light, coloring, U, light, call_seed(seed, it, 0, 0), it, 0);
        runner.call(g, coloring, S, selected, call_seed(seed, it, 0, 1), it, 0);
        runner.call(g_unselected, coloring, W, heavy, call_seed(seed, it, 0, 2), it, 0);
        stats.iterations_run = it + 1;
        if (options.stop_on_reject && stats.reject) {
            break;
        }
    }
    return stats;
}

}  // namespace

DetectionStats detect_even(const Graph &g, const DetectionParams &params, std::uint64_t seed,
                           const DetectOptions &options) {
    return run_algorithm1(g, params, seed, options, false);
}

DetectionStats detect_even_low_prob(const Graph &g, const DetectionParams &params, std::uint64_t seed,
                                    const DetectOptions &options) {
    return run_algorithm1(g, params, seed, options, true);
}

DetectionStats detect_odd(const Graph &g, const DetectionParams &params, std::uint64_t seed,
                          const DetectOptions &options) {
    params.validate();
    const int k = params.k;
    const int m = 2 * k + 1;
    const std::size_t n = g.node_count();
    check_size(g, static_cast<std::size_t>(m), "detect_odd");
    check_forced(options, n);
    if (options.forced_coloring && options.forced_coloring->num_colors() != m) {
        throw std::invalid_argument("forced coloring must use 2k+1 colors");
    }

    DetectionStats stats = init_stats(g, Variant::odd, k);
    stats.params.push_back(params);
    stats.params.back().variant = Variant::odd;

    Runner runner(g, stats, options.exec);
    const NodeSet all = NodeSet::all(n);
    ColorBfsConfig config;
    config.k = k;
    config.num_colors = m;
    config.threshold = kRandomizedThreshold;
    config.activation = 1.0 / static_cast<double>(params.tau);
    config.stage = Stage::single;

    for (std::uint64_t it = 0; it < params.K; ++it) {
        const Coloring coloring = options.forced_coloring ? *options.forced_coloring : draw_coloring(n, m, seed, it);
        runner.exchange(nullptr, Stage::color_exchange);
        runner.call(g, coloring, all, config, call_seed(seed, it, 0, 0), it, 0);
        stats.iterations_run = it + 1;
        if (options.stop_on_reject && stats.reject) {
            break;
        }
    }
    return stats;
}

DetectionStats detect_bounded(const Graph &g, int k, std::uint64_t seed, double epsilon,
                              const ParamOverrides &overrides, const DetectOptions &options) {
    if (k < 2) {
        throw std::invalid_argument("k must be >= 2");
    }
    const std::size_t n = g.node_count();
    check_size(g, static_cast<std::size_t>(2 * k), "detect_bounded");
    check_forced(options, n);

    DetectionStats stats = init_stats(g, Variant::bounded, k);
    Runner runner(g, stats, options.exec);

    for (int l = 2; l <= k; ++l) {
        const DetectionParams params = DetectionParams::bounded_pass(n, l, epsilon, overrides);
        stats.params.push_back(params);
        const std::uint64_t pass_seed = derive_seed(seed, static_cast<std::uint64_t>(l));
        const NodeSet U = light_nodes(g, l);
        const NodeSet S =
            options.forced_selection ? *options.forced_selection : draw_selection(n, params.p, pass_seed);
        const LocalBroadcast &setup = runner.exchange(&S, Stage::setup);
        NodeSet W(n);
        for (NodeId v = 0; v < n; ++v) {
            if (setup.count(v) > 0) {
                W.insert(v);
            }
        }
        stats.light_count = U.size();
        stats.selected_count = S.size();
        stats.witness_count = W.size();

        const Graph g_light = induced_subgraph(g, U);
        ColorBfsConfig light = ColorBfsConfig::even(l, params.tau, Stage::light);
        ColorBfsConfig merged = ColorBfsConfig::even(l, params.tau, Stage::merged);
        light.odd_bridge = true;
        merged.odd_bridge = true;
        const bool use_forced = options.forced_coloring && options.forced_coloring->num_colors() == 2 * l;

        for (std::uint64_t it = 0; it < params.K; ++it) {
            const Coloring coloring = use_forced ? *options.forced_coloring : draw_coloring(n, 2 * l, pass_seed, it);
            runner.exchange(nullptr, Stage::color_exchange);
            runner.call(g_light, coloring, U, light, call_seed(seed, it, l, 0), it, l);
            runner.call(g, coloring, W, merged, call_seed(seed, it, l, 1), it, l);
            stats.iterations_run += 1;
            if (options.stop_on_reject && stats.reject) {
                break;
            }
        }
        if (stats.reject) {
            break;
        }
    }
    return stats;
}

DetectionStats detect(const Graph &g, Variant variant, int k, double epsilon, const ParamOverrides &overrides,
                      std::uint64_t seed, const DetectOptions &options) {
    switch (variant) {
        case Variant::even:
            return detect_even(g, DetectionParams::make(variant, g.node_count(), k, epsilon, overrides), seed,
                               options);
        case Variant::even_low_prob:
            return detect_even_low_prob(g, DetectionParams::make(variant, g.node_count(), k, epsilon, overrides),
                                        seed, options);
        case Variant::odd:
            return detect_odd(g, DetectionParams::make(variant, g.node_count(), k, epsilon, overrides), seed,
                              options);
        case Variant::bounded:
            return detect_bounded(g, k, seed, epsilon, overrides, options);
    }
    throw std::invalid_argument("unknown variant");
}

}  // namespace c2k
