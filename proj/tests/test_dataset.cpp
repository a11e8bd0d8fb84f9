#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "uutest/dataset.hpp"

using uutest::Dataset;
using uutest::StepEcdf;

TEST_CASE("from_raw sorts and collapses ties") {
    const std::vector<double> raw = {3.0, 1.0, 2.0, 1.0, 3.0, 3.0};
    const Dataset d = Dataset::from_raw(raw);

    CHECK(d.size() == 3);
    CHECK(d.n_total() == 6);
    CHECK(d.values() == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(d.counts() == std::vector<std::int64_t>{2, 1, 3});
    CHECK(d.min() == 1.0);
    CHECK(d.max() == 3.0);
}

TEST_CASE("from_raw rejects bad input") {
    CHECK_THROWS_AS(Dataset::from_raw(std::vector<double>{1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Dataset::from_raw(std::vector<double>{}),
                    std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Dataset::from_raw(std::vector<double>{1.0, nan}),
                    std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(Dataset::from_raw(std::vector<double>{1.0, inf}),
                    std::invalid_argument);
}

TEST_CASE("cumulative and interval counts") {
    const Dataset d = Dataset::from_raw(std::vector<double>{1, 1, 2, 3, 3, 3});
    CHECK(d.cum_count(0) == 2);
    CHECK(d.cum_count(1) == 3);
    CHECK(d.cum_count(2) == 6);
    CHECK(d.count_in(0, 2) == 6);
    CHECK(d.count_in(1, 2) == 4);
    CHECK(d.count_in(1, 1) == 1);
    CHECK(d.count_in(2, 2) == 3);
}

TEST_CASE("index lookups") {
    const Dataset d = Dataset::from_raw(std::vector<double>{10, 20, 30});

    CHECK(d.lower_index(5.0) == 0);
    CHECK(d.lower_index(10.0) == 0);
    CHECK(d.lower_index(10.5) == 1);
    CHECK(d.lower_index(30.0) == 2);
    CHECK(d.lower_index(31.0) == 3);

    CHECK(d.upper_index(10.0) == 0);
    CHECK(d.upper_index(15.0) == 0);
    CHECK(d.upper_index(30.0) == 2);
    CHECK(d.upper_index(99.0) == 2);
    CHECK_THROWS_AS(d.upper_index(9.0), std::invalid_argument);

    CHECK(d.index_of(20.0) == 1);
    CHECK_THROWS_AS(d.index_of(21.0), std::invalid_argument);
}

TEST_CASE("restrict keeps the closed interval") {
    const Dataset d = Dataset::from_raw(std::vector<double>{1, 2, 2, 3, 4, 5});

    const Dataset mid = d.restrict(2.0, 4.0);
    CHECK(mid.values() == std::vector<double>{2.0, 3.0, 4.0});
    CHECK(mid.counts() == std::vector<std::int64_t>{2, 1, 1});
    CHECK(mid.n_total() == 4);

    const Dataset all = d.restrict(0.0, 9.0);
    CHECK(all.n_total() == d.n_total());

    CHECK_THROWS_AS(d.restrict(4.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(d.restrict(2.2, 2.8), std::invalid_argument);
}

TEST_CASE("from_sorted_unique round trip") {
    const Dataset d =
        Dataset::from_sorted_unique({1.0, 4.0, 9.0}, {2, 1, 1});
    CHECK(d.n_total() == 4);
    CHECK(d.cum_count(2) == 4);
}

TEST_CASE("ecdf corners and step evaluation") {
    const Dataset d = Dataset::from_raw(std::vector<double>{1, 1, 2, 4});
    const StepEcdf e = uutest::ecdf(d);

    CHECK(e.x == std::vector<double>{1.0, 2.0, 4.0});
    CHECK(e.f[0] == doctest::Approx(0.5));
    CHECK(e.f[1] == doctest::Approx(0.75));
    CHECK(e.f[2] == doctest::Approx(1.0));

    CHECK(e(0.5) == 0.0);
    CHECK(e(1.0) == doctest::Approx(0.5));
    CHECK(e(1.5) == doctest::Approx(0.5));
    CHECK(e(2.0) == doctest::Approx(0.75));
    CHECK(e(3.9) == doctest::Approx(0.75));
    CHECK(e(4.0) == doctest::Approx(1.0));
    CHECK(e(99.0) == doctest::Approx(1.0));
}
