#ifndef C2K_STATS_H
#define C2K_STATS_H

#include <cstdint>
#include <span>
#include <vector>

namespace c2k {

/// Two-sided standard normal quantile for 99% confidence.
inline constexpr double kZ99 = 2.5758293035489004;

struct Interval {
    double lower = 0.0;
    double upper = 1.0;
    bool contains(double x) const { return lower <= x && x <= upper; }
    bool operator==(const Interval &) const = default;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ99);

/// sqrt(p(1-p)/trials).
double binomial_sigma(double p, std::uint64_t trials);

/// Nearest-rank percentile (q in [0, 100]) of unsorted values.
double percentile(std::vector<double> values, double q);

double mean(std::span<const double> values);

double least_squares_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace c2k

#endif
