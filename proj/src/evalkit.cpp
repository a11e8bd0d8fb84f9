#include "uutest/evalkit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "uutest/rng.hpp"
#include "uutest/umm.hpp"
#include "uutest/uniformity.hpp"

namespace uutest {

BaselineModel fit_gaussian(const Dataset& d) {
    const double n = static_cast<double>(d.n_total());
    double mean = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        mean += d.values()[i] * static_cast<double>(d.counts()[i]);
    }
    mean /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double dev = d.values()[i] - mean;
        var += dev * dev * static_cast<double>(d.counts()[i]);
    }
    var /= n;
    if (var <= 0.0) {
        throw std::invalid_argument("degenerate data");
    }
    return {BaselineModel::Kind::gaussian, mean, std::sqrt(var), d.n_total()};
}

BaselineModel fit_uniform(const Dataset& d) {
    if (d.min() == d.max()) {
        throw std::invalid_argument("degenerate data");
    }
    return {BaselineModel::Kind::uniform, d.min(), d.max(), d.n_total()};
}

double baseline_log_likelihood(const BaselineModel& m, const Dataset& d) {
    double total = 0.0;
    if (m.kind == BaselineModel::Kind::gaussian) {
        const double log_norm =
            -0.5 * std::log(2.0 * std::numbers::pi) - std::log(m.b);
        const double inv2v = 0.5 / (m.b * m.b);
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double dev = d.values()[i] - m.a;
            total += static_cast<double>(d.counts()[i]) *
                     (log_norm - dev * dev * inv2v);
        }
        return total;
    }
    const double inside = std::max(1.0 / (m.b - m.a), density_floor);
    const double log_in = std::log(inside);
    const double log_out = std::log(density_floor);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double v = d.values()[i];
        const bool in = v >= m.a && v <= m.b;
        total += static_cast<double>(d.counts()[i]) * (in ? log_in : log_out);
    }
    return total;
}

std::vector<double> baseline_sample(const BaselineModel& m, std::size_t n,
                                    std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(m.kind == BaselineModel::Kind::gaussian
                          ? rng.normal(m.a, m.b)
                          : rng.uniform(m.a, m.b));
    }
    return out;
}

double two_sample_ks(const Dataset& x, const Dataset& y) {
    const double nx = static_cast<double>(x.n_total());
    const double ny = static_cast<double>(y.n_total());
    std::size_t i = 0;
    std::size_t j = 0;
    double d_stat = 0.0;
    // advance past every distinct value of either sample and compare the
    // ecdfs just after it
    while (i < x.size() || j < y.size()) {
        double t;
        if (j == y.size() || (i < x.size() && x.values()[i] <= y.values()[j])) {
            t = x.values()[i];
        } else {
            t = y.values()[j];
        }
        while (i < x.size() && x.values()[i] <= t) ++i;
        while (j < y.size() && y.values()[j] <= t) ++j;
        const double fx = i == 0 ? 0.0 : static_cast<double>(x.cum_count(i - 1)) / nx;
        const double fy = j == 0 ? 0.0 : static_cast<double>(y.cum_count(j - 1)) / ny;
        d_stat = std::max(d_stat, std::fabs(fx - fy));
    }
    return d_stat;
}

double two_sample_ks_pvalue(double d_stat, std::int64_t n, std::int64_t m) {
    if (n <= 0 || m <= 0 || d_stat < 0.0) {
        throw std::invalid_argument("invalid value");
    }
    const double ne = static_cast<double>(n) * static_cast<double>(m) /
                      static_cast<double>(n + m);
    const double rn = std::sqrt(ne);
    return kolmogorov_sf((rn + 0.12 + 0.11 / rn) * d_stat);
}

ModelComparison rank_models(std::vector<ModelScore> scores) {
    if (scores.empty()) {
        throw std::invalid_argument("insufficient data");
    }
    ModelComparison cmp;
    cmp.scores = std::move(scores);
    for (std::size_t i = 1; i < cmp.scores.size(); ++i) {
        if (cmp.scores[i].log_likelihood >
            cmp.scores[cmp.winner_log_likelihood].log_likelihood) {
            cmp.winner_log_likelihood = i;
        }
        if (cmp.scores[i].ks_distance < cmp.scores[cmp.winner_ks].ks_distance) {
            cmp.winner_ks = i;
        }
    }
    return cmp;
}

}  // namespace uutest
