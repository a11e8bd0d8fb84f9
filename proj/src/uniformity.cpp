#include "uutest/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uutest {

double ks_statistic_uniform(const Dataset& d, std::size_t lo, std::size_t hi,
                            double a, double b) {
    if (!(a < b)) {
        throw std::invalid_argument("degenerate interval");
    }
    const auto& values = d.values();
    if (lo > hi || hi >= values.size()) {
        throw std::invalid_argument("empty interval");
    }
    if (values[lo] < a || values[hi] > b) {
        throw std::invalid_argument("values outside interval");
    }

    const std::int64_t base = lo == 0 ? 0 : d.cum_count(lo - 1);
    const double n = static_cast<double>(d.cum_count(hi) - base);
    const double width = b - a;

    // The step ecdf deviates most at a jump: just before it the ecdf sits at
    // the rank below the tied block, at it the full block has arrived.
    double d_stat = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        const double u = (values[i] - a) / width;
        const double f_hi = static_cast<double>(d.cum_count(i) - base) / n;
        const double f_lo =
            static_cast<double>((i == lo ? 0 : d.cum_count(i - 1) - base)) / n;
        d_stat = std::max(d_stat, std::max(f_hi - u, u - f_lo));
    }
    return d_stat;
}

double ks_statistic_uniform(const Dataset& d, double a, double b) {
    if (d.size() == 0) {
        throw std::invalid_argument("empty interval");
    }
    return ks_statistic_uniform(d, 0, d.size() - 1, a, b);
}

double kolmogorov_sf(double lambda) {
    if (lambda < 0.15) {
        // Q(0.15) differs from 1 by less than 1e-22; below that the
        // alternating series only burns iterations.
        return 1.0;
    }
    const double e = -2.0 * lambda * lambda;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(e * k * k);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_pvalue(double d_stat, std::int64_t n) {
    if (n <= 0 || d_stat < 0.0) {
        throw std::invalid_argument("invalid value");
    }
    const double rn = std::sqrt(static_cast<double>(n));
    return kolmogorov_sf((rn + 0.12 + 0.11 / rn) * d_stat);
}

KsOutcome ks_uniformity(const Dataset& d, double a, double b, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("invalid value");
    }
    KsOutcome out;
    out.n = d.n_total();
    if (out.n <= ks_min_points) {
        out.uniform = true;
        return out;
    }
    out.statistic = ks_statistic_uniform(d, a, b);
    out.p_value = ks_pvalue(out.statistic, out.n);
    out.uniform = out.p_value > alpha;
    return out;
}

bool check_uniformity(const Dataset& d, double a, double b, double alpha) {
    return ks_uniformity(d, a, b, alpha).uniform;
}

}  // namespace uutest
