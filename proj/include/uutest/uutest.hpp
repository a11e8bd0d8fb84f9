#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "uutest/dataset.hpp"
#include "uutest/hulls.hpp"

namespace uutest {

enum class Verdict { unimodal, multimodal };

struct SegmentEvidence {
    double a = 0.0;
    double b = 0.0;
    std::int64_t n = 0;
    double ks_p = 1.0;
};

struct UuReport {
    Verdict verdict = Verdict::multimodal;
    // Breakpoints of the accepted piecewise-linear cdf; empty iff multimodal.
    std::vector<double> s_points;
    // Per-segment uniformity evidence for the accepted breakpoints.
    std::vector<SegmentEvidence> segments;
    // Suggested split locations; empty iff unimodal.
    std::vector<double> cut_hints;
    int recursion_depth = 0;
};

// A breakpoint selection whose convex-role points all precede its
// concave-role points. split_index is the position of the last point of the
// convex prefix; everything after it belongs to the concave suffix.
struct ConsistentSubset {
    GlPointSet set;
    std::size_t split_index = 0;
};

// One subset when gl is already consistent; otherwise the two repairs, first
// the one dropping convex-role points after the first concave breakpoint,
// then the one dropping concave-role points before the last convex
// breakpoint.
std::vector<ConsistentSubset> consistent_subsets(const GlPointSet& gl);

struct Decomposition {
    std::vector<double> p_g;       // convex part, first..split point
    std::array<double, 2> p_i;     // intermediate interval (may collapse)
    std::vector<double> p_l;       // concave part, split successor..last
};

Decomposition decompose(const ConsistentSubset& cs);

struct SearchResult {
    std::vector<double> points;
    bool success = false;
    // Segment that exhausted both repairs, set when success is false.
    double fail_a = 0.0;
    double fail_b = 0.0;
};

// Greedy filter keeping a subset of p whose consecutive segments all pass
// the uniformity check; failing segments are mended by widening to the right
// (forward_search) or re-anchoring to the left (backward_search).
SearchResult sufficient_subset(std::span<const double> p, const Dataset& d,
                               double alpha);

// Drops the immediate successor of e_l and scans the remaining points to the
// right; succeeds with the first right endpoint forming a uniform segment.
SearchResult forward_search(std::span<const double> p, double e_l,
                            const Dataset& d, double alpha);

// Drops the last accepted point and retreats the left endpoint; succeeds
// with the surviving prefix plus e_r.
SearchResult backward_search(std::span<const double> p_acc, double e_r,
                             const Dataset& d, double alpha);

// Decides whether d admits a unimodal piecewise-linear approximation of its
// ecdf whose segments all look uniform at level alpha. Deterministic: equal
// inputs give equal reports. Throws std::invalid_argument for alpha outside
// (0, 1) or a dataset with fewer than two distinct values ("degenerate
// support").
UuReport uu_test(const Dataset& d, double alpha);

}  // namespace uutest
