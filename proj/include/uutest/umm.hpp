#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uutest/dataset.hpp"

namespace uutest {

// Density charged where a bounded-support model holds zero mass: one stray
// pseudo-observation smeared over the model's span. Out-of-support points
// then penalize a model in proportion to how much data failed to warn of
// them, instead of sinking the likelihood to -inf, the charge is invariant
// under affine rescaling of the data, and models fitted to the same
// training set charge strays identically, keeping their orderings fair.
inline double stray_density(std::int64_t n_train, double span) {
    return 1.0 / (static_cast<double>(n_train < 1 ? 1 : n_train) * span);
}

// Mixture of uniform components over consecutive breakpoint intervals: the
// piecewise-linear cdf through the accepted breakpoints, differentiated.
class Umm {
public:
    // Weighs each [s_i, s_i+1) by its share of observations (final interval
    // closed). Breakpoints must be member values of d, strictly increasing,
    // spanning [min, max]; otherwise throws "invalid breakpoints".
    static Umm fit(const std::vector<double>& s_points, const Dataset& d,
                   double alpha);

    // Direct assembly from validated parts (deserialization, tests).
    static Umm from_parts(std::vector<double> breakpoints,
                          std::vector<double> weights, double alpha,
                          std::int64_t n_train);

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& weights() const { return weights_; }
    double alpha() const { return alpha_; }
    std::int64_t n_train() const { return n_train_; }
    std::size_t segment_count() const { return weights_.size(); }

    // Constant on each interval, zero outside the support.
    double pdf(double x) const;
    // Piecewise linear, 0 before the first breakpoint, 1 after the last.
    double cdf(double x) const;

    // Sum of log densities over d (multiplicities included); out-of-support
    // values contribute the stray density of this fit.
    double log_likelihood(const Dataset& d) const;

    // Inversion sampling from one seeded stream: a segment pick by weight,
    // then a position inside it.
    std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

    std::string to_json() const;
    // Throws "parse error" on malformed text, "invalid model" on a document
    // violating the shape or weight constraints.
    static Umm from_json(std::string_view text);

private:
    std::vector<double> breakpoints_;
    std::vector<double> weights_;
    std::vector<double> cum_weights_;
    double alpha_ = 0.0;
    std::int64_t n_train_ = 0;
};

}  // namespace uutest
