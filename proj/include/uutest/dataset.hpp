#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace uutest {

// One-dimensional sample stored as sorted unique values with multiplicities.
// Tied observations collapse into a single (value, count) entry, so ecdf and
// rank arithmetic stay exact in the presence of duplicates.
class Dataset {
public:
    Dataset() = default;

    // Builds a Dataset from raw observations. Sorts, collapses exact ties.
    // Throws std::invalid_argument on non-finite input ("invalid value") or
    // fewer than two observations ("insufficient data").
    static Dataset from_raw(std::span<const double> raw);

    // Assembles a Dataset from already sorted unique values and positive
    // counts. Used by restriction and by tests that need exact layouts.
    static Dataset from_sorted_unique(std::vector<double> values,
                                      std::vector<std::int64_t> counts);

    const std::vector<double>& values() const { return values_; }
    const std::vector<std::int64_t>& counts() const { return counts_; }

    std::size_t size() const { return values_.size(); }  // unique values
    std::int64_t n_total() const { return n_total_; }
    double min() const { return values_.front(); }
    double max() const { return values_.back(); }

    // Observations with value <= values_[i], counting multiplicity.
    std::int64_t cum_count(std::size_t i) const { return cum_[i]; }

    // Observations with value in the closed interval [values_[lo], values_[hi]].
    std::int64_t count_in(std::size_t lo, std::size_t hi) const {
        return cum_[hi] - (lo == 0 ? 0 : cum_[lo - 1]);
    }

    // Index of the smallest value >= x (values_.size() when none).
    std::size_t lower_index(double x) const;
    // Index of the largest value <= x (throws when none).
    std::size_t upper_index(double x) const;
    // Index of an exact member value; throws std::invalid_argument otherwise.
    std::size_t index_of(double v) const;

    // Sub-dataset with values in [a, b], multiplicities preserved.
    // Throws std::invalid_argument when a > b or no value falls inside
    // ("empty interval").
    Dataset restrict(double a, double b) const;

private:
    std::vector<double> values_;
    std::vector<std::int64_t> counts_;
    std::vector<std::int64_t> cum_;  // inclusive prefix sums of counts_
    std::int64_t n_total_ = 0;

    void rebuild_cum();
};

// Empirical cdf as upper step corners: f[i] = P(X <= x[i]).
// Evaluation follows step semantics: 0 below x.front(), f[i] on
// [x[i], x[i+1]), 1 at and above x.back().
struct StepEcdf {
    std::vector<double> x;
    std::vector<double> f;

    double operator()(double t) const;
};

StepEcdf ecdf(const Dataset& d);

}  // namespace uutest
