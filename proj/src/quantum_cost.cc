#include "c2k/quantum_cost.h"

#include <cmath>
#include <stdexcept>

#include "c2k/detect.h"
#include "c2k/stats.h"

namespace c2k {

nlohmann::json CostConstants::to_json() const {
    return {
        {"c_amp", c_amp},
        {"c_dec", c_dec},
        {"c_D", c_D},
        {"amp_log_exponent", amp_log_exponent},
        {"dec_log_exponent", dec_log_exponent},
    };
}

void CostParams::validate() const {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    if (!(D >= 1.0)) {
        throw std::invalid_argument("D must be >= 1");
    }
    if (!(T >= 0.0)) {
        throw std::invalid_argument("T must be >= 0");
    }
}

double delta_log_factor(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    // Guard against ln(1/e^{-m}) landing a hair above m.
    double x = std::log(1.0 / delta);
    double r = std::round(x);
    if (std::abs(x - r) < 1e-9) {
        x = r;
    }
    return std::max(1.0, std::ceil(x));
}

double n_log_factor(double n) {
    if (!(n >= 1.0)) {
        throw std::invalid_argument("n must be >= 1");
    }
    return std::max(1.0, std::ceil(std::log2(n) - 1e-12));
}

double amplified_rounds(const CostParams &cp) {
    cp.validate();
    const CostConstants &c = cp.constants;
    return c.c_amp * std::pow(delta_log_factor(cp.delta), c.amp_log_exponent) / std::sqrt(cp.epsilon) * (cp.D + cp.T);
}

double diameter_reduced_rounds(double n, int k, const RoundFunction &t_fn, const CostConstants &constants) {
    if (k < 1) {
        throw std::invalid_argument("k must be >= 1");
    }
    const double L = n_log_factor(n);
    const double D = constants.c_D * k * L;
    return constants.c_dec * std::pow(L, constants.dec_log_exponent) * (t_fn(n, D) + k);
}

nlohmann::json QuantumCost::to_json() const {
    return {
        {"n", n},
        {"k", k},
        {"delta", delta},
        {"tau", tau},
        {"tau_source", tau_source},
        {"success_probability", success_probability},
        {"K", K},
        {"T_base", T_base},
        {"T_source", T_source},
        {"D_reduced", D_reduced},
        {"amplified", amplified},
        {"total", total},
        {"dominant", dominant},
        {"classical_bound", classical_bound},
        {"constants", constants.to_json()},
        {"polylog_model", "log^2 for amplification and decomposition (modeling choice)"},
    };
}

QuantumCost quantum_c2k_rounds(double n, int k, double delta, const QuantumCostOptions &options) {
    if (k < 2) {
        throw std::invalid_argument("k must be >= 2");
    }
    if (!(n >= 2.0)) {
        throw std::invalid_argument("n must be >= 2");
    }
    QuantumCost out;
    out.n = n;
    out.k = k;
    out.delta = delta;
    out.constants = options.constants;

    const double eps_hat = epsilon_hat(options.epsilon);
    out.K = std::ceil(eps_hat * std::pow(2.0 * k, 2.0 * k));
    if (options.measured_tau) {
        out.tau = *options.measured_tau;
        out.tau_source = "measured";
    } else {
        double p = eps_hat * 2.0 * k * k / std::pow(n, 1.0 / k);
        if (options.clamp_p) {
            p = std::min(1.0, p);
        }
        out.tau = std::ceil(k * std::ldexp(1.0, k) * n * p);
        out.tau_source = options.clamp_p ? "closed_form_clamped" : "closed_form";
    }
    if (options.measured_T) {
        out.T_base = *options.measured_T;
        out.T_source = "measured";
    } else {
        out.T_base = 4.0 * k * out.K;
        out.T_source = "closed_form";
    }
    out.success_probability = 1.0 / (3.0 * out.tau);

    const CostConstants &c = options.constants;
    const double L = n_log_factor(n);
    out.D_reduced = c.c_D * k * L;
    CostParams cp;
    cp.n = n;
    cp.D = out.D_reduced;
    cp.epsilon = out.success_probability;
    cp.delta = delta;
    cp.T = out.T_base;
    cp.constants = c;
    out.amplified = amplified_rounds(cp);
    out.total = diameter_reduced_rounds(
        n, k,
        [&](double nn, double D) {
            CostParams inner = cp;
            inner.n = nn;
            inner.D = D;
            return amplified_rounds(inner);
        },
        c);

    const double dec = c.c_dec * std::pow(L, c.dec_log_exponent);
    const double amp = c.c_amp * std::pow(delta_log_factor(delta), c.amp_log_exponent);
    out.dominant = (out.total / dec - k) / (amp * (out.D_reduced + out.T_base));
    out.classical_bound = out.K * k * out.tau;
    return out;
}

std::optional<double> crossover_threshold(int k, double delta, int max_log2, const QuantumCostOptions &options) {
    std::optional<double> threshold;
    for (int e = 1; e <= max_log2; ++e) {
        double n = std::ldexp(1.0, e);
        QuantumCost cost = quantum_c2k_rounds(n, k, delta, options);
        if (cost.total < cost.classical_bound) {
            if (!threshold) {
                threshold = n;
            }
        } else {
            threshold.reset();
        }
    }
    return threshold;
}

std::vector<CostSweepRow> cost_sweep(const std::vector<int> &ks, int log2_from, int log2_to, double delta,
                                     const QuantumCostOptions &options) {
    if (log2_from < 1 || log2_to < log2_from) {
        throw std::invalid_argument("invalid sweep range");
    }
    std::vector<CostSweepRow> rows;
    for (int k : ks) {
        for (int e = log2_from; e <= log2_to; ++e) {
            double n = std::ldexp(1.0, e);
            rows.push_back({n, k, quantum_c2k_rounds(n, k, delta, options)});
        }
    }
    return rows;
}

double fitted_exponent(const std::vector<CostSweepRow> &rows) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto &r : rows) {
        xs.push_back(std::log(r.n));
        ys.push_back(std::log(r.cost.dominant));
    }
    return least_squares_slope(xs, ys);
}

}  // namespace c2k
