#include "uutest/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uutest {

Dataset Dataset::from_raw(std::span<const double> raw) {
    if (raw.size() < 2) {
        throw std::invalid_argument("insufficient data");
    }
    std::vector<double> sorted(raw.begin(), raw.end());
    for (double v : sorted) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("invalid value");
        }
    }
    std::sort(sorted.begin(), sorted.end());

    Dataset d;
    d.values_.reserve(sorted.size());
    d.counts_.reserve(sorted.size());
    for (double v : sorted) {
        if (!d.values_.empty() && d.values_.back() == v) {
            ++d.counts_.back();
        } else {
            d.values_.push_back(v);
            d.counts_.push_back(1);
        }
    }
    d.rebuild_cum();
    return d;
}

Dataset Dataset::from_sorted_unique(std::vector<double> values,
                                    std::vector<std::int64_t> counts) {
    if (values.empty() || values.size() != counts.size()) {
        throw std::invalid_argument("insufficient data");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw std::invalid_argument("invalid value");
        }
        if (counts[i] <= 0 || (i > 0 && values[i] <= values[i - 1])) {
            throw std::invalid_argument("invalid value");
        }
    }
    Dataset d;
    d.values_ = std::move(values);
    d.counts_ = std::move(counts);
    d.rebuild_cum();
    return d;
}

void Dataset::rebuild_cum() {
    cum_.resize(counts_.size());
    std::int64_t running = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        running += counts_[i];
        cum_[i] = running;
    }
    n_total_ = running;
}

std::size_t Dataset::lower_index(double x) const {
    return static_cast<std::size_t>(
        std::lower_bound(values_.begin(), values_.end(), x) - values_.begin());
}

std::size_t Dataset::upper_index(double x) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), x);
    if (it == values_.begin()) {
        throw std::invalid_argument("empty interval");
    }
    return static_cast<std::size_t>(it - values_.begin()) - 1;
}

std::size_t Dataset::index_of(double v) const {
    std::size_t i = lower_index(v);
    if (i == values_.size() || values_[i] != v) {
        throw std::invalid_argument("value not in dataset");
    }
    return i;
}

Dataset Dataset::restrict(double a, double b) const {
    if (a > b) {
        throw std::invalid_argument("empty interval");
    }
    std::size_t lo = lower_index(a);
    if (lo == values_.size() || values_[lo] > b) {
        throw std::invalid_argument("empty interval");
    }
    std::size_t hi = upper_index(b);
    Dataset d;
    d.values_.assign(values_.begin() + lo, values_.begin() + hi + 1);
    d.counts_.assign(counts_.begin() + lo, counts_.begin() + hi + 1);
    d.rebuild_cum();
    return d;
}

double StepEcdf::operator()(double t) const {
    auto it = std::upper_bound(x.begin(), x.end(), t);
    if (it == x.begin()) {
        return 0.0;
    }
    return f[static_cast<std::size_t>(it - x.begin()) - 1];
}

StepEcdf ecdf(const Dataset& d) {
    StepEcdf e;
    e.x = d.values();
    e.f.resize(d.size());
    const double n = static_cast<double>(d.n_total());
    for (std::size_t i = 0; i < d.size(); ++i) {
        e.f[i] = static_cast<double>(d.cum_count(i)) / n;
    }
    return e;
}

}  // namespace uutest
