#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uutest/dataset.hpp"

namespace uutest {

// Reference fits used when scoring a mixture model against simpler
// explanations of the same data.
struct BaselineModel {
    enum class Kind { gaussian, uniform };
    Kind kind = Kind::gaussian;
    // gaussian: a = mean, b = standard deviation; uniform: [a, b] support.
    double a = 0.0;
    double b = 1.0;
    std::int64_t n_train = 0;  // sets the stray charge for bounded supports
};

// Maximum-likelihood Gaussian (biased variance). Throws "degenerate data"
// when the sample has zero spread.
BaselineModel fit_gaussian(const Dataset& d);

// Support-matching uniform fit.
BaselineModel fit_uniform(const Dataset& d);

// Sum of log densities of d under the baseline. The Gaussian term is
// evaluated in log space (no underflow); points outside a uniform support
// contribute the stray density of the fit, as with Umm::log_likelihood.
double baseline_log_likelihood(const BaselineModel& m, const Dataset& d);

// Seeded draws from a baseline, matching the transforms used elsewhere.
std::vector<double> baseline_sample(const BaselineModel& m, std::size_t n,
                                    std::uint64_t seed);

// Sup distance between the ecdfs of two samples, one merge pass.
double two_sample_ks(const Dataset& x, const Dataset& y);

// Asymptotic p-value for a two-sample distance at sizes n and m, using the
// effective size n*m/(n+m) in the finite-sample lambda correction.
double two_sample_ks_pvalue(double d_stat, std::int64_t n, std::int64_t m);

// One scored candidate in a comparison report.
struct ModelScore {
    std::string name;
    double log_likelihood = 0.0;
    double ks_distance = 0.0;
};

struct ModelComparison {
    std::vector<ModelScore> scores;
    std::size_t winner_log_likelihood = 0;  // index of the highest likelihood
    std::size_t winner_ks = 0;              // index of the smallest distance
};

// Ranks pre-filled scores; ties resolve to the earliest index.
ModelComparison rank_models(std::vector<ModelScore> scores);

}  // namespace uutest
