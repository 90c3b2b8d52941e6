#include <cmath>

#include "c2k/detect.h"
#include "c2k/quantum_cost.h"
#include "gtest/gtest.h"

using namespace c2k;

namespace {

CostParams base_params() {
    CostParams cp;
    cp.n = 1024;
    cp.D = 3;
    cp.epsilon = 1.0;
    cp.delta = std::exp(-1.0);
    cp.T = 7;
    return cp;
}

}  // namespace

TEST(quantum_cost, amplified_example) { EXPECT_DOUBLE_EQ(amplified_rounds(base_params()), 10.0); }

TEST(quantum_cost, quartering_epsilon_doubles) {
    CostParams a = base_params();
    a.epsilon = 0.5;
    CostParams b = a;
    b.epsilon = 0.125;
    EXPECT_DOUBLE_EQ(amplified_rounds(b), 2.0 * amplified_rounds(a));
}

TEST(quantum_cost, amplified_is_monotone) {
    CostParams cp = base_params();
    double prev = amplified_rounds(cp);
    for (double t : {8.0, 20.0, 100.0}) {
        cp.T = t;
        double next = amplified_rounds(cp);
        EXPECT_GE(next, prev);
        prev = next;
    }
    for (double d : {4.0, 10.0}) {
        cp.D = d;
        double next = amplified_rounds(cp);
        EXPECT_GE(next, prev);
        prev = next;
    }
    for (double delta : {0.1, 0.01, 1e-6}) {
        cp.delta = delta;
        double next = amplified_rounds(cp);
        EXPECT_GE(next, prev);
        prev = next;
    }
}

TEST(quantum_cost, parameter_errors) {
    CostParams cp = base_params();
    cp.epsilon = 0.0;
    EXPECT_THROW(amplified_rounds(cp), std::invalid_argument);
    cp = base_params();
    cp.delta = 1.0;
    EXPECT_THROW(amplified_rounds(cp), std::invalid_argument);
    cp = base_params();
    cp.D = 0.5;
    EXPECT_THROW(amplified_rounds(cp), std::invalid_argument);
    EXPECT_THROW(quantum_c2k_rounds(1024, 1, 0.1), std::invalid_argument);
}

TEST(quantum_cost, diameter_reduction_with_constant_base) {
    const double n = 1 << 16;
    const double T0 = 50;
    auto constant = [&](double, double) { return T0; };
    EXPECT_DOUBLE_EQ(diameter_reduced_rounds(n, 3, constant), 16.0 * 16.0 * (T0 + 3));
    EXPECT_DOUBLE_EQ(diameter_reduced_rounds(n, 6, constant) - diameter_reduced_rounds(n, 3, constant),
                     16.0 * 16.0 * 3);
    double seen_D = 0;
    diameter_reduced_rounds(n, 3, [&](double, double D) {
        seen_D = D;
        return 0.0;
    });
    EXPECT_DOUBLE_EQ(seen_D, 3 * 16.0);
}

TEST(quantum_cost, dominant_term_is_sqrt_three_tau) {
    for (int k : {2, 3, 4}) {
        QuantumCost c = quantum_c2k_rounds(std::ldexp(1.0, 20), k, 0.1);
        EXPECT_NEAR(c.dominant, std::sqrt(3.0 * c.tau), 1e-6 * c.dominant);
        EXPECT_EQ(c.T_base, 4.0 * k * c.K);
        EXPECT_EQ(c.tau_source, "closed_form");
        EXPECT_DOUBLE_EQ(c.classical_bound, c.K * k * c.tau);
    }
}

TEST(quantum_cost, closed_form_matches_detection_params) {
    const std::size_t n = 1 << 20;
    for (int k : {2, 3, 4}) {
        DetectionParams d = DetectionParams::make(Variant::even, n, k);
        QuantumCostOptions opts;
        opts.clamp_p = true;
        QuantumCost c = quantum_c2k_rounds(static_cast<double>(n), k, 0.1, opts);
        EXPECT_EQ(c.K, static_cast<double>(d.K));
        EXPECT_EQ(c.tau, static_cast<double>(d.tau));
    }
}

TEST(quantum_cost, ratio_approaches_exponent) {
    for (int k : {2, 3, 4, 5}) {
        const double n = std::ldexp(1.0, 30);
        QuantumCost a = quantum_c2k_rounds(n, k, 0.1);
        QuantumCost b = quantum_c2k_rounds(2 * n, k, 0.1);
        const double expected = std::pow(2.0, 0.5 - 0.5 / k);
        EXPECT_NEAR(b.dominant / a.dominant, expected, 0.05 * expected) << "k " << k;
    }
}

TEST(quantum_cost, squaring_delta_at_most_quadruples) {
    for (double delta : {0.1, 0.01, 0.3}) {
        QuantumCost a = quantum_c2k_rounds(1 << 20, 2, delta);
        QuantumCost b = quantum_c2k_rounds(1 << 20, 2, delta * delta);
        EXPECT_LE(b.total, 4.0 * a.total);
        EXPECT_GE(b.total, a.total);
    }
}

TEST(quantum_cost, fitted_slope_per_k) {
    for (int k : {2, 3, 4, 5}) {
        double slope = fitted_exponent(cost_sweep({k}, 10, 30, 0.1));
        EXPECT_NEAR(slope, 0.5 - 0.5 / k, 0.02) << "k " << k;
    }
    EXPECT_NEAR(fitted_exponent(cost_sweep({2}, 10, 30, 0.1)), 0.25, 0.02);
}

TEST(quantum_cost, measured_inputs_are_tagged) {
    QuantumCostOptions opts;
    opts.measured_T = 900;
    opts.measured_tau = 256;
    QuantumCost c = quantum_c2k_rounds(32, 2, 0.1, opts);
    EXPECT_EQ(c.T_source, "measured");
    EXPECT_EQ(c.tau_source, "measured");
    EXPECT_EQ(c.T_base, 900);
    EXPECT_DOUBLE_EQ(c.success_probability, 1.0 / 768.0);
    nlohmann::json j = c.to_json();
    EXPECT_EQ(j["T_source"], "measured");
    EXPECT_TRUE(j.contains("constants"));
}

TEST(quantum_cost, quantum_beats_classical_eventually) {
    for (int k = 2; k <= 6; ++k) {
        auto threshold = crossover_threshold(k, 0.1);
        ASSERT_TRUE(threshold.has_value()) << "k " << k;
        for (int e = static_cast<int>(std::log2(*threshold)); e <= 256; e += 7) {
            QuantumCost c = quantum_c2k_rounds(std::ldexp(1.0, e), k, 0.1);
            EXPECT_LT(c.total, c.classical_bound);
        }
    }
}

TEST(quantum_cost, total_nondecreasing_in_n) {
    for (int k : {2, 3}) {
        double prev = 0;
        for (int e = 4; e <= 40; ++e) {
            double total = quantum_c2k_rounds(std::ldexp(1.0, e), k, 0.1).total;
            EXPECT_GE(total, prev);
            prev = total;
        }
    }
}
