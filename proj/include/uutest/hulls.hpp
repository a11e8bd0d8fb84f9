#pragma once

#include <span>
#include <vector>

#include "uutest/dataset.hpp"

namespace uutest {

struct HullPoint {
    double x;
    double f;
};

enum class HullTag { gcm, lcm, both };

struct GlPoint {
    double x;
    double f;
    HullTag tag;
};

// Ordered union of the convex-minorant and concave-majorant breakpoints.
// max_g is the largest x carrying a gcm role once the final point is set
// aside; when only the endpoints lie on the minorant this degenerates to the
// first x. min_l mirrors that on the majorant side (degenerating to the last
// x), so max_g < min_l holds vacuously whenever one side has no interior
// breakpoints.
struct GlPointSet {
    std::vector<GlPoint> points;
    double max_g = 0.0;
    double min_l = 0.0;

    bool consistent() const { return max_g < min_l; }
};

// Breakpoints of the greatest convex function nowhere above the ecdf corners
// (the lower convex hull of (x_i, f_i)). Both endpoints are always included;
// collinear interior points are dropped.
std::vector<HullPoint> gcm_points(const StepEcdf& e);

// Breakpoints of the least concave function nowhere below the ecdf corners
// (the upper hull). Endpoints included, collinear interior points dropped.
std::vector<HullPoint> lcm_points(const StepEcdf& e);

GlPointSet gl_union(std::span<const HullPoint> g, std::span<const HullPoint> l);

// Convenience: both hulls of e merged into one tagged set.
GlPointSet gl_of(const StepEcdf& e);

// Both hulls of the ecdf restricted to the index window [lo, hi] of d and
// renormalized to unit mass on the window, equal to gl_of on the
// materialized restriction but computed in one pass without copying the
// window out.
GlPointSet gl_of_window(const Dataset& d, std::size_t lo, std::size_t hi);

}  // namespace uutest
