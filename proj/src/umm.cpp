#include "uutest/umm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "uutest/rng.hpp"

namespace uutest {

Umm Umm::from_parts(std::vector<double> breakpoints, std::vector<double> weights,
                    double alpha, std::int64_t n_train) {
    if (breakpoints.size() < 2 || weights.size() + 1 != breakpoints.size()) {
        throw std::invalid_argument("invalid breakpoints");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("invalid model");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("invalid model");
    }
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!std::isfinite(breakpoints[i]) ||
            (i > 0 && breakpoints[i] <= breakpoints[i - 1])) {
            throw std::invalid_argument("invalid breakpoints");
        }
    }
    Umm m;
    m.breakpoints_ = std::move(breakpoints);
    m.weights_ = std::move(weights);
    m.alpha_ = alpha;
    m.n_train_ = n_train;
    m.cum_weights_.resize(m.weights_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < m.weights_.size(); ++i) {
        acc += m.weights_[i];
        m.cum_weights_[i] = acc;
    }
    m.cum_weights_.back() = 1.0;
    return m;
}

Umm Umm::fit(const std::vector<double>& s_points, const Dataset& d, double alpha) {
    if (s_points.size() < 2 || s_points.front() != d.min() ||
        s_points.back() != d.max()) {
        throw std::invalid_argument("invalid breakpoints");
    }
    std::vector<std::size_t> idx(s_points.size());
    for (std::size_t i = 0; i < s_points.size(); ++i) {
        if (i > 0 && s_points[i] <= s_points[i - 1]) {
            throw std::invalid_argument("invalid breakpoints");
        }
        idx[i] = d.index_of(s_points[i]);  // throws when not a member
    }

    const double n = static_cast<double>(d.n_total());
    std::vector<double> weights(s_points.size() - 1);
    for (std::size_t i = 0; i + 1 < s_points.size(); ++i) {
        // [s_i, s_i+1), except the final interval which takes its right end
        const std::size_t hi = i + 2 == s_points.size() ? idx[i + 1] : idx[i + 1] - 1;
        weights[i] = static_cast<double>(d.count_in(idx[i], hi)) / n;
    }
    return from_parts(s_points, std::move(weights), alpha, d.n_total());
}

double Umm::pdf(double x) const {
    if (x < breakpoints_.front() || x > breakpoints_.back()) {
        return 0.0;
    }
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin());
    i = i == 0 ? 0 : i - 1;
    if (i >= weights_.size()) i = weights_.size() - 1;  // x == last breakpoint
    return weights_[i] / (breakpoints_[i + 1] - breakpoints_[i]);
}

double Umm::cdf(double x) const {
    if (x <= breakpoints_.front()) return 0.0;
    if (x >= breakpoints_.back()) return 1.0;
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    const double below = i == 0 ? 0.0 : cum_weights_[i - 1];
    const double span = breakpoints_[i + 1] - breakpoints_[i];
    return below + weights_[i] * (x - breakpoints_[i]) / span;
}

double Umm::log_likelihood(const Dataset& d) const {
    // Fitted models hold at least one training point per segment, so their
    // interior densities never drop below the stray level; the floor then
    // only applies outside the support.
    const double stray =
        stray_density(n_train_, breakpoints_.back() - breakpoints_.front());
    double total = 0.0;
    const auto& values = d.values();
    const auto& counts = d.counts();
    for (std::size_t i = 0; i < values.size(); ++i) {
        total += static_cast<double>(counts[i]) *
                 std::log(std::max(pdf(values[i]), stray));
    }
    return total;
}

std::vector<double> Umm::sample(std::size_t n, std::uint64_t seed) const {
    Rng rng(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = rng.uniform01();
        auto it = std::lower_bound(cum_weights_.begin(), cum_weights_.end(), u);
        std::size_t i = static_cast<std::size_t>(it - cum_weights_.begin());
        if (i >= weights_.size()) i = weights_.size() - 1;
        out.push_back(breakpoints_[i] +
                      rng.uniform01() * (breakpoints_[i + 1] - breakpoints_[i]));
    }
    return out;
}

std::string Umm::to_json() const {
    nlohmann::json doc;
    doc["type"] = "umm";
    doc["breakpoints"] = breakpoints_;
    doc["weights"] = weights_;
    doc["alpha"] = alpha_;
    doc["n_train"] = n_train_;
    return doc.dump();
}

Umm Umm::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument("parse error");
    }
    try {
        if (!doc.is_object() || doc.at("type").get<std::string>() != "umm") {
            throw std::invalid_argument("invalid model");
        }
        auto breakpoints = doc.at("breakpoints").get<std::vector<double>>();
        auto weights = doc.at("weights").get<std::vector<double>>();
        const double alpha = doc.at("alpha").get<double>();
        const std::int64_t n_train = doc.at("n_train").get<std::int64_t>();
        return from_parts(std::move(breakpoints), std::move(weights), alpha,
                          n_train);
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument("invalid model");
    }
}

}  // namespace uutest
