#pragma once

#include <cstdint>

#include "uutest/dataset.hpp"

namespace uutest {

// Segments holding at most this many observations pass the uniformity check
// outright; the asymptotic p-value is meaningless at such sizes.
inline constexpr std::int64_t ks_min_points = 3;

struct KsOutcome {
    double statistic = 0.0;
    double p_value = 1.0;
    std::int64_t n = 0;
    bool uniform = false;
};

// Sup-norm distance between the empirical cdf of d and the uniform cdf on
// [a, b]. Requires a < b and all values of d inside [a, b]; ties contribute
// through their multiplicities. Throws std::invalid_argument on a degenerate
// interval or out-of-range values.
double ks_statistic_uniform(const Dataset& d, double a, double b);

// Same statistic over the index window [lo, hi] of d, with no copying.
double ks_statistic_uniform(const Dataset& d, std::size_t lo, std::size_t hi,
                            double a, double b);

// Tail probability of the Kolmogorov distribution, Q(lambda) =
// 2 * sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2), truncated when terms drop
// below 1e-16 and clamped to [0, 1].
double kolmogorov_sf(double lambda);

// Asymptotic p-value for a one-sample statistic at sample size n, using the
// finite-n effective lambda (sqrt(n) + 0.12 + 0.11/sqrt(n)) * d_stat.
double ks_pvalue(double d_stat, std::int64_t n);

// Decision rule used throughout the unimodality search: auto-accept tiny
// segments (n <= ks_min_points), otherwise accept iff p > alpha.
bool check_uniformity(const Dataset& d, double a, double b, double alpha);

// check_uniformity with the full evidence attached.
KsOutcome ks_uniformity(const Dataset& d, double a, double b, double alpha);

}  // namespace uutest
