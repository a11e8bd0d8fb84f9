#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uutest/dataset.hpp"
#include "uutest/rng.hpp"
#include "uutest/uutest.hpp"

namespace uutest {

enum class Family {
    gaussian,
    student_t,
    gamma,
    exponential,
    cauchy,
    triangular,
    uniform,
    mixture,
};

// One-sided rejection bound applied after drawing.
struct Truncation {
    enum class Keep { below, above };
    Keep keep = Keep::below;
    double bound = 0.0;
};

// Declarative description of a synthetic sample. Parameter slots by family:
// gaussian (mu, sigma), student_t (nu), gamma (k, theta), exponential
// (lambda), cauchy (center, scale), triangular (lo, hi, mode), uniform
// (lo, hi). Mixtures list (component, count) pairs and ignore n.
struct DistSpec {
    Family family = Family::gaussian;
    double p1 = 0.0;
    double p2 = 1.0;
    double p3 = 0.0;
    std::int64_t n = 0;
    std::optional<Truncation> truncation;
    std::vector<std::pair<DistSpec, std::int64_t>> components;

    std::int64_t total_n() const;

    static DistSpec gaussian_(double mu, double sigma, std::int64_t n);
    static DistSpec student_t_(double nu, std::int64_t n);
    static DistSpec gamma_(double k, double theta, std::int64_t n);
    static DistSpec exponential_(double lambda, std::int64_t n);
    static DistSpec cauchy_(double center, double scale, std::int64_t n);
    static DistSpec triangular_(double lo, double hi, double mode, std::int64_t n);
    static DistSpec uniform_(double lo, double hi, std::int64_t n);
    static DistSpec mixture_(std::vector<std::pair<DistSpec, std::int64_t>> parts);

    DistSpec truncated(Truncation::Keep keep, double bound) const;
    // Same shape with component counts rescaled to total m (largest
    // remainder; deterministic).
    DistSpec resized(std::int64_t m) const;

    std::string to_json() const;
    static DistSpec from_json(std::string_view text);
};

// Draws spec.total_n() observations into a Dataset. Deterministic per seed.
// Throws "truncation failure" when a rejection bound starves a component.
Dataset generate(const DistSpec& spec, std::uint64_t seed);

// Raw draw order preserved (mixture components are emitted sequentially).
std::vector<double> generate_raw(const DistSpec& spec, Rng& rng);

// A benchmark row: distribution plus the verdict its density warrants.
struct SuiteRow {
    std::string name;
    DistSpec spec;
    Verdict expected = Verdict::unimodal;
};

// Fifteen-row decision benchmark covering the unimodal families and the
// Gaussian-mixture multimodal cases.
std::vector<SuiteRow> decision_suite();

// A model-quality row: distribution with its train/test sizes.
struct ModelSuiteRow {
    std::string name;
    DistSpec spec;  // sized at n_train + n_test
    std::int64_t n_train = 0;
    std::int64_t n_test = 0;
};

// Eight-row modeling benchmark for scoring fitted mixtures against the
// Gaussian and uniform baselines.
std::vector<ModelSuiteRow> modeling_suite();

}  // namespace uutest
