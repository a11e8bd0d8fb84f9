#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "uutest/dataset.hpp"
#include "uutest/umm.hpp"
#include "uutest/uutest.hpp"

namespace uutest {

// First suggested split for a multimodal dataset: the midpoint between the
// earliest concave breakpoint followed by a convex one. Empty when the data
// already test unimodal. The point is strictly interior to the support.
std::optional<double> first_cut_point(const Dataset& d, double alpha);

struct SplitNode {
    double lo = 0.0;
    double hi = 0.0;
    std::int64_t n = 0;
    Verdict verdict = Verdict::multimodal;
    // Leaf payload: the fitted mixture when the node tests unimodal.
    std::optional<Umm> model;
    // Set on leaves left multimodal by the leaf budget or on degenerate
    // slices that cannot be tested.
    bool unresolved = false;
    double cut = 0.0;  // split location for interior nodes
    std::unique_ptr<SplitNode> left;
    std::unique_ptr<SplitNode> right;

    bool is_leaf() const { return !left && !right; }
};

struct SplitTree {
    std::unique_ptr<SplitNode> root;
    std::size_t leaf_count = 0;
    std::size_t unresolved_count = 0;
};

// Recursively cuts multimodal nodes at first_cut_point until every leaf
// tests unimodal or the leaf budget is exhausted; unimodal leaves carry
// their fitted mixture.
SplitTree split_recursive(const Dataset& d, double alpha,
                          std::size_t max_leaves = 64);

}  // namespace uutest
