#ifndef C2K_DETECT_H
#define C2K_DETECT_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "c2k/color_bfs.h"
#include "c2k/congest.h"
#include "c2k/graph.h"
#include "json.hpp"

namespace c2k {

enum class Variant { even, even_low_prob, odd, bounded };

std::string to_string(Variant v);
Variant parse_variant(const std::string &text);

/// Replacements for the default constants; each one used is flagged in output.
struct ParamOverrides {
    std::optional<double> p;
    std::optional<std::uint64_t> K;
    std::optional<std::uint64_t> tau;
    bool any() const { return p || K || tau; }
};

/// Constants of one detection run.
///
/// even / even_low_prob: eps_hat = ln(3/eps), p = min(1, eps_hat 2k^2 / n^{1/k}),
///   K = ceil(eps_hat (2k)^{2k}), tau = ceil(k 2^k n p).
/// odd: K = ceil(eps_hat (2k+1)^{2k+1}), tau = n (activation 1/tau), p unused (1).
/// bounded pass l: the even formulas with k = l except tau = ceil(2 n p).
struct DetectionParams {
    Variant variant = Variant::even;
    int k = 2;
    std::size_t n = 0;
    double epsilon = 1.0 / 3.0;
    double epsilon_hat = 0.0;
    double p = 1.0;
    std::uint64_t K = 1;
    std::uint64_t tau = 1;
    bool p_overridden = false;
    bool K_overridden = false;
    bool tau_overridden = false;

    static DetectionParams make(Variant variant, std::size_t n, int k, double epsilon = 1.0 / 3.0,
                                const ParamOverrides &overrides = {});
    /// Parameters of pass l of the bounded-length variant.
    static DetectionParams bounded_pass(std::size_t n, int l, double epsilon = 1.0 / 3.0,
                                        const ParamOverrides &overrides = {});

    /// Number of colors used by the variant (2k, or 2k+1 for odd).
    int num_colors() const;
    void validate() const;
    nlohmann::json to_json() const;
};

double epsilon_hat(double epsilon);
double selection_probability(std::size_t n, int k, double eps_hat);
std::uint64_t repetitions(int cycle_length, double eps_hat);

struct RoleSets {
    NodeSet U;
    NodeSet S;
    NodeSet W;
};

/// U = {u : deg(u)^k <= n}, exact integer test.
NodeSet light_nodes(const Graph &g, int k);
/// Each node joins S independently with probability p (selection stream).
NodeSet draw_selection(std::size_t n, double p, std::uint64_t seed);
/// W = {u not in S : |N(u) ∩ S| >= min_neighbors}.
NodeSet heavy_witnesses(const Graph &g, const NodeSet &s, std::size_t min_neighbors);
/// N(S): every node with at least one neighbor in S.
NodeSet neighborhood(const Graph &g, const NodeSet &s);

/// Uniform color in [0, m) of node v in a given iteration (coloring stream).
int draw_color(std::uint64_t seed, std::uint64_t iteration, NodeId v, int m);
Coloring draw_coloring(std::size_t n, int m, std::uint64_t seed, std::uint64_t iteration);

struct DetectOptions {
    /// Used in place of the per-iteration uniform coloring.
    std::optional<Coloring> forced_coloring;
    /// Used in place of the Bernoulli(p) draw of S.
    std::optional<NodeSet> forced_selection;
    /// Stop after the first iteration with a rejecting node.
    bool stop_on_reject = false;
    Exec exec = Exec::serial;
};

/// One color-BFS call in which some node rejected.
struct CallRecord {
    std::uint64_t iteration = 0;
    int pass = 0;
    Stage stage = Stage::single;
    std::vector<NodeId> rejecting_nodes;
    std::vector<NodeId> certificate;
};

struct DetectionStats {
    Variant variant = Variant::even;
    int k = 2;
    std::size_t n = 0;
    /// One entry, or one per pass for the bounded variant.
    std::vector<DetectionParams> params;
    bool reject = false;
    std::vector<NodeId> rejecting_nodes;
    std::vector<NodeId> certificate_cycle;
    std::optional<std::uint64_t> iteration_of_first_reject;
    std::optional<Stage> call_of_first_reject;
    std::optional<int> pass_of_first_reject;
    std::vector<CallRecord> rejecting_calls;
    std::uint64_t iterations_run = 0;
    std::size_t light_count = 0;
    std::size_t selected_count = 0;
    std::size_t witness_count = 0;
    RoundLedger ledger;

    std::uint64_t rounds() const { return ledger.rounds_elapsed(); }
    std::uint64_t max_congestion() const { return ledger.max_congestion(); }
    Verdict verdict() const { return reject ? Verdict::reject : Verdict::accept; }
    nlohmann::json to_json() const;
};

/// Even-cycle detection: K iterations of three thresholded color-BFS calls
/// (G[U], U), (G, S), (G[V \ S], W).
DetectionStats detect_even(const Graph &g, const DetectionParams &params, std::uint64_t seed,
                           const DetectOptions &options = {});

/// detect_even with every call replaced by randomized color-BFS.
DetectionStats detect_even_low_prob(const Graph &g, const DetectionParams &params, std::uint64_t seed,
                                    const DetectOptions &options = {});

/// K iterations of randomized color-BFS over 2k+1 colors with X = V,
/// activation 1/tau (tau = n by default) and threshold 4.
DetectionStats detect_odd(const Graph &g, const DetectionParams &params, std::uint64_t seed,
                          const DetectOptions &options = {});

/// Passes l = 2..k in order, each testing C_{2l-1} and C_{2l} with a light
/// call (G[U], U) and a merged call (G, N(S)); stops after the first pass
/// that rejects. Overrides apply to every pass.
DetectionStats detect_bounded(const Graph &g, int k, std::uint64_t seed, double epsilon = 1.0 / 3.0,
                              const ParamOverrides &overrides = {}, const DetectOptions &options = {});

/// Builds the variant's parameters for g and runs it.
DetectionStats detect(const Graph &g, Variant variant, int k, double epsilon, const ParamOverrides &overrides,
                      std::uint64_t seed, const DetectOptions &options = {});

}  // namespace c2k

#endif
