#include "uutest/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace uutest {
namespace {

constexpr int truncation_attempts = 100000;

double draw_leaf(const DistSpec& s, Rng& rng) {
    switch (s.family) {
        case Family::gaussian:
            return rng.normal(s.p1, s.p2);
        case Family::student_t:
            return rng.student_t(s.p1);
        case Family::gamma:
            return rng.gamma(s.p1, s.p2);
        case Family::exponential:
            return rng.exponential(s.p1);
        case Family::cauchy:
            return rng.cauchy(s.p1, s.p2);
        case Family::triangular:
            return rng.triangular(s.p1, s.p2, s.p3);
        case Family::uniform:
            return rng.uniform(s.p1, s.p2);
        case Family::mixture:
            break;
    }
    throw std::invalid_argument("invalid value");
}

double draw_truncated(const DistSpec& s, Rng& rng) {
    if (!s.truncation) {
        return draw_leaf(s, rng);
    }
    for (int attempt = 0; attempt < truncation_attempts; ++attempt) {
        const double v = draw_leaf(s, rng);
        if (s.truncation->keep == Truncation::Keep::below ? v <= s.truncation->bound
                                                          : v >= s.truncation->bound) {
            return v;
        }
    }
    throw std::runtime_error("truncation failure");
}

const char* family_name(Family f) {
    switch (f) {
        case Family::gaussian: return "gaussian";
        case Family::student_t: return "student_t";
        case Family::gamma: return "gamma";
        case Family::exponential: return "exponential";
        case Family::cauchy: return "cauchy";
        case Family::triangular: return "triangular";
        case Family::uniform: return "uniform";
        case Family::mixture: return "mixture";
    }
    return "unknown";
}

Family family_from_name(const std::string& name) {
    for (Family f : {Family::gaussian, Family::student_t, Family::gamma,
                     Family::exponential, Family::cauchy, Family::triangular,
                     Family::uniform, Family::mixture}) {
        if (name == family_name(f)) return f;
    }
    throw std::invalid_argument("invalid value");
}

nlohmann::json spec_to_doc(const DistSpec& s) {
    nlohmann::json doc;
    doc["family"] = family_name(s.family);
    if (s.family == Family::mixture) {
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& [part, count] : s.components) {
            parts.push_back({{"spec", spec_to_doc(part)}, {"count", count}});
        }
        doc["components"] = parts;
    } else {
        doc["params"] = {s.p1, s.p2, s.p3};
        doc["n"] = s.n;
    }
    if (s.truncation) {
        doc["truncation"] = {
            {"keep", s.truncation->keep == Truncation::Keep::below ? "below" : "above"},
            {"bound", s.truncation->bound}};
    }
    return doc;
}

DistSpec spec_from_doc(const nlohmann::json& doc) {
    DistSpec s;
    s.family = family_from_name(doc.at("family").get<std::string>());
    if (s.family == Family::mixture) {
        for (const auto& part : doc.at("components")) {
            s.components.emplace_back(spec_from_doc(part.at("spec")),
                                      part.at("count").get<std::int64_t>());
        }
        if (s.components.empty()) throw std::invalid_argument("invalid value");
    } else {
        const auto params = doc.at("params").get<std::vector<double>>();
        if (params.size() != 3) throw std::invalid_argument("invalid value");
        s.p1 = params[0];
        s.p2 = params[1];
        s.p3 = params[2];
        s.n = doc.at("n").get<std::int64_t>();
    }
    if (doc.contains("truncation")) {
        Truncation t;
        const auto keep = doc.at("truncation").at("keep").get<std::string>();
        if (keep == "below") {
            t.keep = Truncation::Keep::below;
        } else if (keep == "above") {
            t.keep = Truncation::Keep::above;
        } else {
            throw std::invalid_argument("invalid value");
        }
        t.bound = doc.at("truncation").at("bound").get<double>();
        s.truncation = t;
    }
    return s;
}

}  // namespace

std::int64_t DistSpec::total_n() const {
    if (family != Family::mixture) {
        return n;
    }
    std::int64_t total = 0;
    for (const auto& [part, count] : components) total += count;
    return total;
}

DistSpec DistSpec::gaussian_(double mu, double sigma, std::int64_t n) {
    return {Family::gaussian, mu, sigma, 0.0, n, {}, {}};
}
DistSpec DistSpec::student_t_(double nu, std::int64_t n) {
    return {Family::student_t, nu, 0.0, 0.0, n, {}, {}};
}
DistSpec DistSpec::gamma_(double k, double theta, std::int64_t n) {
    return {Family::gamma, k, theta, 0.0, n, {}, {}};
}
DistSpec DistSpec::exponential_(double lambda, std::int64_t n) {
    return {Family::exponential, lambda, 0.0, 0.0, n, {}, {}};
}
DistSpec DistSpec::cauchy_(double center, double scale, std::int64_t n) {
    return {Family::cauchy, center, scale, 0.0, n, {}, {}};
}
DistSpec DistSpec::triangular_(double lo, double hi, double mode, std::int64_t n) {
    return {Family::triangular, lo, hi, mode, n, {}, {}};
}
DistSpec DistSpec::uniform_(double lo, double hi, std::int64_t n) {
    return {Family::uniform, lo, hi, 0.0, n, {}, {}};
}
DistSpec DistSpec::mixture_(std::vector<std::pair<DistSpec, std::int64_t>> parts) {
    DistSpec s;
    s.family = Family::mixture;
    s.components = std::move(parts);
    return s;
}

DistSpec DistSpec::truncated(Truncation::Keep keep, double bound) const {
    DistSpec s = *this;
    s.truncation = Truncation{keep, bound};
    return s;
}

DistSpec DistSpec::resized(std::int64_t m) const {
    if (m <= 0) {
        throw std::invalid_argument("invalid value");
    }
    DistSpec s = *this;
    if (family != Family::mixture) {
        s.n = m;
        return s;
    }
    // Largest-remainder apportionment keeps component shares and the total.
    const double total = static_cast<double>(total_n());
    std::vector<double> share(components.size());
    std::vector<std::int64_t> scaled(components.size());
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < components.size(); ++i) {
        share[i] = static_cast<double>(components[i].second) *
                   static_cast<double>(m) / total;
        scaled[i] = static_cast<std::int64_t>(std::floor(share[i]));
        assigned += scaled[i];
    }
    std::vector<std::size_t> order(components.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return share[a] - std::floor(share[a]) > share[b] - std::floor(share[b]);
    });
    for (std::size_t k = 0; assigned < m; ++k, ++assigned) {
        ++scaled[order[k % order.size()]];
    }
    for (std::size_t i = 0; i < components.size(); ++i) {
        s.components[i].second = scaled[i];
    }
    return s;
}

std::vector<double> generate_raw(const DistSpec& spec, Rng& rng) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(spec.total_n()));
    if (spec.family == Family::mixture) {
        for (const auto& [part, count] : spec.components) {
            DistSpec leaf = part;
            if (!leaf.truncation && spec.truncation) {
                leaf.truncation = spec.truncation;
            }
            for (std::int64_t i = 0; i < count; ++i) {
                out.push_back(draw_truncated(leaf, rng));
            }
        }
        return out;
    }
    for (std::int64_t i = 0; i < spec.n; ++i) {
        out.push_back(draw_truncated(spec, rng));
    }
    return out;
}

Dataset generate(const DistSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    const std::vector<double> raw = generate_raw(spec, rng);
    return Dataset::from_raw(raw);
}

std::string DistSpec::to_json() const {
    return spec_to_doc(*this).dump();
}

DistSpec DistSpec::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument("parse error");
    }
    try {
        return spec_from_doc(doc);
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument("invalid value");
    }
}

std::vector<SuiteRow> decision_suite() {
    using DS = DistSpec;
    std::vector<SuiteRow> rows;
    const auto U = Verdict::unimodal;
    const auto M = Verdict::multimodal;

    rows.push_back({"Gaussian", DS::gaussian_(0, 1, 2000), U});
    rows.push_back({"Student's t", DS::student_t_(4, 2000), U});
    rows.push_back({"Gamma", DS::gamma_(1, 2, 2000), U});
    rows.push_back({"Exponential", DS::exponential_(3, 2000), U});
    rows.push_back({"Cauchy", DS::cauchy_(0, 1, 2000), U});
    rows.push_back({"Triangular", DS::triangular_(-1, 1, 0, 3700), U});
    rows.push_back({"Asymmetric Triangular", DS::triangular_(-4, 3, 0, 6500), U});
    rows.push_back({"Two Gaussians (separated)",
                    DS::mixture_({{DS::gaussian_(0, 1, 0), 2000},
                                  {DS::gaussian_(4, 1, 0), 2000}}),
                    M});
    rows.push_back({"Two Gaussians (unbalanced)",
                    DS::mixture_({{DS::gaussian_(0, 1, 0), 2000},
                                  {DS::gaussian_(4, 1, 0), 1000}}),
                    M});
    rows.push_back({"Two Gaussians (overlapping)",
                    DS::mixture_({{DS::gaussian_(0, 1, 0), 1000},
                                  {DS::gaussian_(4, 2, 0), 1000}}),
                    U});
    // Half-Gaussians glued at a shared mean: narrow rise, wide fall.
    rows.push_back(
        {"Two Truncated Gaussians",
         DS::mixture_(
             {{DS::gaussian_(0, 1, 0).truncated(Truncation::Keep::below, 0.0), 1000},
              {DS::gaussian_(0, 3, 0).truncated(Truncation::Keep::above, 0.0), 1000}}),
         U});
    rows.push_back({"Three Gaussians",
                    DS::mixture_({{DS::gaussian_(0, 1, 0), 1000},
                                  {DS::gaussian_(4, 1, 0), 1000},
                                  {DS::gaussian_(8, 1, 0), 1000}}),
                    M});
    rows.push_back({"Three Gaussians (unbalanced)",
                    DS::mixture_({{DS::gaussian_(0, 1, 0), 1000},
                                  {DS::gaussian_(4, 1, 0), 1000},
                                  {DS::gaussian_(7, 1, 0), 2000}}),
                    M});
    // The composite is unimodal for any share: the density climbs the t's
    // left side, steps up where the uniform block begins, and decays from
    // there on. The even split keeps the t tails short relative to the
    // block; a small t share stretches the left tail until the whole ecdf
    // drops below its end-to-end chord, the concave majorant degenerates to
    // that single edge, and the plateau is misread as a second mode.
    rows.push_back({"Student's t & Uniform",
                    DS::mixture_({{DS::student_t_(10, 0), 7500},
                                  {DS::uniform_(0, 10, 0), 7500}}),
                    U});
    // Shares match the component densities at the seam where the uniform
    // block ends, keeping the composite unimodal:
    // w_g * phi(5; 3, 1) = w_u / 15 with phi(2) = 0.05399096651318806.
    rows.push_back({"Uniform & Gaussian",
                    DS::mixture_({{DS::uniform_(-10, 5, 0), 7160},
                                  {DS::gaussian_(3, 1, 0), 8840}}),
                    U});
    return rows;
}

std::vector<ModelSuiteRow> modeling_suite() {
    using DS = DistSpec;
    std::vector<ModelSuiteRow> rows;
    auto add = [&rows](std::string name, DistSpec spec, std::int64_t n_train,
                       std::int64_t n_test) {
        rows.push_back(
            {std::move(name), spec.resized(n_train + n_test), n_train, n_test});
    };
    add("Gaussian", DS::gaussian_(0, 1, 0), 650, 2000);
    add("Student's t", DS::student_t_(4, 0), 650, 2000);
    add("Gamma", DS::gamma_(1, 2, 0), 650, 2000);
    add("Triangular", DS::triangular_(-1, 1, 0, 0), 12500, 37000);
    add("Asymmetric Triangular", DS::triangular_(-4, 3, 0, 0), 2150, 6500);
    // At this separation the mixture density is bimodal for second-component
    // shares in roughly (0.195, 0.805); a 9:1 split stays unimodal with a
    // clear right shoulder.
    add("Two Gaussians",
        DS::mixture_({{DS::gaussian_(0, 1, 0), 9}, {DS::gaussian_(3, 1, 0), 1}}),
        5850, 17500);
    add("Student's t & Uniform",
        DS::mixture_({{DS::student_t_(10, 0), 7500}, {DS::uniform_(0, 10, 0), 7500}}),
        5000, 15000);
    add("Uniform & Gaussian",
        DS::mixture_({{DS::uniform_(-10, 5, 0), 7160}, {DS::gaussian_(3, 1, 0), 8840}}),
        5300, 16000);
    return rows;
}

}  // namespace uutest
