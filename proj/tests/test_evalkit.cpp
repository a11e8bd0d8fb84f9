#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "uutest/dataset.hpp"
#include "uutest/evalkit.hpp"
#include "uutest/rng.hpp"
#include "uutest/umm.hpp"

using namespace uutest;

TEST_CASE("gaussian fit uses the biased variance") {
    const Dataset d = Dataset::from_raw(std::vector<double>{0, 0, 0, 2, 2, 2});
    const BaselineModel m = fit_gaussian(d);
    CHECK(m.kind == BaselineModel::Kind::gaussian);
    CHECK(m.a == doctest::Approx(1.0));
    CHECK(m.b == doctest::Approx(1.0));

    const Dataset flat = Dataset::from_raw(std::vector<double>{3, 3, 3});
    CHECK_THROWS_AS(fit_gaussian(flat), std::invalid_argument);
}

TEST_CASE("uniform fit matches the support") {
    const Dataset d = Dataset::from_raw(std::vector<double>{-2, 0, 5});
    const BaselineModel m = fit_uniform(d);
    CHECK(m.kind == BaselineModel::Kind::uniform);
    CHECK(m.a == -2.0);
    CHECK(m.b == 5.0);
}

TEST_CASE("baseline log likelihoods by hand") {
    const Dataset d = Dataset::from_raw(std::vector<double>{0.0, 1.0});

    const BaselineModel g{BaselineModel::Kind::gaussian, 0.0, 1.0};
    const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi);
    CHECK(baseline_log_likelihood(g, d) ==
          doctest::Approx(2.0 * log_norm - 0.5));

    const BaselineModel u{BaselineModel::Kind::uniform, 0.0, 2.0};
    CHECK(baseline_log_likelihood(u, d) == doctest::Approx(2.0 * std::log(0.5)));

    // Points outside the uniform support fall to the density floor.
    const Dataset wide = Dataset::from_raw(std::vector<double>{0.5, 5.0});
    CHECK(baseline_log_likelihood(u, wide) ==
          doctest::Approx(std::log(0.5) + std::log(density_floor)));
}

TEST_CASE("extreme gaussian tails stay finite") {
    const BaselineModel g{BaselineModel::Kind::gaussian, 0.0, 1.0};
    const Dataset far = Dataset::from_raw(std::vector<double>{-60.0, 60.0});
    const double ll = baseline_log_likelihood(g, far);
    CHECK(std::isfinite(ll));
    CHECK(ll < -3000.0);  // two tails at z = 60
}

TEST_CASE("two-sample distance on hand-checked pairs") {
    const Dataset x = Dataset::from_raw(std::vector<double>{1, 2, 3});
    const Dataset y = Dataset::from_raw(std::vector<double>{1.5, 2.5});
    CHECK(two_sample_ks(x, y) == doctest::Approx(1.0 / 3.0));

    const Dataset same = Dataset::from_raw(std::vector<double>{1, 2, 3});
    CHECK(two_sample_ks(x, same) == 0.0);

    const Dataset left = Dataset::from_raw(std::vector<double>{0, 1});
    const Dataset right = Dataset::from_raw(std::vector<double>{5, 6});
    CHECK(two_sample_ks(left, right) == 1.0);
}

TEST_CASE("two-sample distance equals the quadratic brute force") {
    Rng rng(246);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 49.0);
        const int m = 2 + static_cast<int>(rng.uniform01() * 49.0);
        std::vector<double> xs(static_cast<std::size_t>(n));
        std::vector<double> ys(static_cast<std::size_t>(m));
        for (double& v : xs) v = rng.normal(0.0, 1.0);
        for (double& v : ys) v = rng.normal(0.3, 1.2);
        if (trial % 3 == 0) ys[0] = xs[0];  // exercise shared values
        const Dataset dx = Dataset::from_raw(xs);
        const Dataset dy = Dataset::from_raw(ys);
        CAPTURE(trial);
        CHECK(two_sample_ks(dx, dy) == oracle::ks_two_sample_brute(dx, dy));
    }
}

TEST_CASE("two-sample p-value behaves like a p-value") {
    // Equal distributions: the distance should not look significant.
    Rng rng(1717);
    std::vector<double> a(500), b(500);
    for (double& v : a) v = rng.normal(0.0, 1.0);
    for (double& v : b) v = rng.normal(0.0, 1.0);
    const Dataset da = Dataset::from_raw(a);
    const Dataset db = Dataset::from_raw(b);
    CHECK(two_sample_ks_pvalue(two_sample_ks(da, db), 500, 500) > 0.01);

    // A clear shift is flagged.
    std::vector<double> c(500);
    for (double& v : c) v = rng.normal(1.5, 1.0);
    const Dataset dc = Dataset::from_raw(c);
    CHECK(two_sample_ks_pvalue(two_sample_ks(da, dc), 500, 500) < 1e-6);

    // Monotone in the distance.
    CHECK(two_sample_ks_pvalue(0.05, 400, 400) >
          two_sample_ks_pvalue(0.10, 400, 400));
}

TEST_CASE("baseline samples are deterministic and plausible") {
    const BaselineModel g{BaselineModel::Kind::gaussian, 3.0, 2.0};
    const std::vector<double> s1 = baseline_sample(g, 50000, 11);
    const std::vector<double> s2 = baseline_sample(g, 50000, 11);
    CHECK(s1 == s2);

    double mean = 0.0;
    for (double v : s1) mean += v;
    mean /= static_cast<double>(s1.size());
    double var = 0.0;
    for (double v : s1) var += (v - mean) * (v - mean);
    var /= static_cast<double>(s1.size());
    CHECK(mean == doctest::Approx(3.0).epsilon(0.02));
    CHECK(std::sqrt(var) == doctest::Approx(2.0).epsilon(0.02));

    const BaselineModel u{BaselineModel::Kind::uniform, -1.0, 4.0};
    const std::vector<double> su = baseline_sample(u, 10000, 5);
    double lo = su[0], hi = su[0], acc = 0.0;
    for (double v : su) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        acc += v;
    }
    CHECK(lo >= -1.0);
    CHECK(hi <= 4.0);
    CHECK(acc / 10000.0 == doctest::Approx(1.5).epsilon(0.05));
}

TEST_CASE("model ranking picks the right winners") {
    ModelComparison cmp = rank_models({{"a", -120.0, 0.04},
                                       {"b", -100.0, 0.09},
                                       {"c", -150.0, 0.02}});
    CHECK(cmp.winner_log_likelihood == 1);
    CHECK(cmp.winner_ks == 2);
    CHECK(cmp.scores.size() == 3);

    // Ties resolve to the earliest entry.
    ModelComparison tie = rank_models({{"a", -5.0, 0.1}, {"b", -5.0, 0.1}});
    CHECK(tie.winner_log_likelihood == 0);
    CHECK(tie.winner_ks == 0);
}
