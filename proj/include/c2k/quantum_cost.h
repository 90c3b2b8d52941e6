#ifndef C2K_QUANTUM_COST_H
#define C2K_QUANTUM_COST_H

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace c2k {

/// Multipliers and polylog exponents of the cost model. Defaults: every
/// multiplier 1, both polylog factors squared.
struct CostConstants {
    double c_amp = 1.0;
    double c_dec = 1.0;
    double c_D = 1.0;
    int amp_log_exponent = 2;
    int dec_log_exponent = 2;
    nlohmann::json to_json() const;
};

struct CostParams {
    double n = 0.0;
    double D = 1.0;
    double epsilon = 1.0;
    double delta = 0.5;
    double T = 0.0;
    CostConstants constants;

    void validate() const;
};

/// ceil(ln(1/delta)).
double delta_log_factor(double delta);
/// ceil(log2 n), at least 1.
double n_log_factor(double n);

/// c_amp * ceil(ln(1/delta))^a * (1/sqrt(eps)) * (D + T).
double amplified_rounds(const CostParams &cp);

/// Round count T(n, D) of the algorithm being diameter-reduced.
using RoundFunction = std::function<double(double n, double D)>;

/// c_dec * ceil(log2 n)^b * (T_fn(n, c_D k ceil(log2 n)) + k).
double diameter_reduced_rounds(double n, int k, const RoundFunction &t_fn, const CostConstants &constants = {});

struct QuantumCostOptions {
    CostConstants constants;
    /// Clamp p to 1 when computing tau (the simulator's choice). The
    /// asymptotic model leaves it unclamped.
    bool clamp_p = false;
    double epsilon = 1.0 / 3.0;
    /// Measured values replace the closed forms when present.
    std::optional<double> measured_T;
    std::optional<double> measured_tau;
};

struct QuantumCost {
    double n = 0.0;
    int k = 2;
    double delta = 0.0;
    double tau = 0.0;
    double success_probability = 0.0;
    double K = 0.0;
    double T_base = 0.0;
    std::string T_source;
    std::string tau_source;
    double D_reduced = 0.0;
    double amplified = 0.0;
    double total = 0.0;
    /// total with every polylog factor and additive term divided out: sqrt(3 tau).
    double dominant = 0.0;
    double classical_bound = 0.0;
    CostConstants constants;

    nlohmann::json to_json() const;
};

/// Base algorithm with success probability 1/(3 tau) and T = 4kK rounds,
/// amplified and then diameter-reduced.
QuantumCost quantum_c2k_rounds(double n, int k, double delta, const QuantumCostOptions &options = {});

/// Smallest power of two n such that the modeled quantum rounds stay below
/// K k tau for every power of two from n up to 2^max_log2. Nothing if the
/// inequality fails at 2^max_log2.
std::optional<double> crossover_threshold(int k, double delta, int max_log2 = 256,
                                          const QuantumCostOptions &options = {});

struct CostSweepRow {
    double n;
    int k;
    QuantumCost cost;
};

std::vector<CostSweepRow> cost_sweep(const std::vector<int> &ks, int log2_from, int log2_to, double delta,
                                     const QuantumCostOptions &options = {});

/// Least-squares slope of log(dominant) against log(n) over a sweep.
double fitted_exponent(const std::vector<CostSweepRow> &rows);

}  // namespace c2k

#endif
