#include "uutest/hulls.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace uutest {
namespace {

// Cross product of (a->b) x (a->c). Positive for a left turn, negative for a
// right turn. Treated as zero (collinear) when within 1e-12 of the term
// magnitudes, so numerically straight runs collapse to their endpoints.
int turn_direction(const HullPoint& a, const HullPoint& b, const HullPoint& c) {
    const double t1 = (b.x - a.x) * (c.f - a.f);
    const double t2 = (b.f - a.f) * (c.x - a.x);
    const double cross = t1 - t2;
    const double tol = 1e-12 * (std::fabs(t1) + std::fabs(t2));
    if (cross > tol) return 1;
    if (cross < -tol) return -1;
    return 0;
}

std::vector<HullPoint> corners(const StepEcdf& e) {
    if (e.x.size() < 2) {
        throw std::invalid_argument("degenerate support");
    }
    std::vector<HullPoint> pts(e.x.size());
    for (std::size_t i = 0; i < e.x.size(); ++i) {
        pts[i] = {e.x[i], e.f[i]};
    }
    return pts;
}

// Monotone chain over x-sorted points. keep_turn = +1 retains strictly
// convex chains (lower hull), -1 strictly concave ones (upper hull).
std::vector<HullPoint> half_hull(const std::vector<HullPoint>& pts, int keep_turn) {
    std::vector<HullPoint> hull;
    hull.reserve(pts.size());
    for (const HullPoint& p : pts) {
        while (hull.size() >= 2 &&
               turn_direction(hull[hull.size() - 2], hull.back(), p) != keep_turn) {
            hull.pop_back();
        }
        hull.push_back(p);
    }
    return hull;
}

}  // namespace

std::vector<HullPoint> gcm_points(const StepEcdf& e) {
    return half_hull(corners(e), 1);
}

std::vector<HullPoint> lcm_points(const StepEcdf& e) {
    return half_hull(corners(e), -1);
}

GlPointSet gl_union(std::span<const HullPoint> g, std::span<const HullPoint> l) {
    if (g.size() < 2 || l.size() < 2) {
        throw std::invalid_argument("degenerate support");
    }
    GlPointSet out;
    out.points.reserve(g.size() + l.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < g.size() || j < l.size()) {
        if (j == l.size() || (i < g.size() && g[i].x < l[j].x)) {
            out.points.push_back({g[i].x, g[i].f, HullTag::gcm});
            ++i;
        } else if (i == g.size() || l[j].x < g[i].x) {
            out.points.push_back({l[j].x, l[j].f, HullTag::lcm});
            ++j;
        } else {
            out.points.push_back({g[i].x, g[i].f, HullTag::both});
            ++i;
            ++j;
        }
    }

    // Interior breakpoints drive max_g / min_l; endpoints only as fallback.
    const double first_x = out.points.front().x;
    const double last_x = out.points.back().x;
    out.max_g = first_x;
    out.min_l = last_x;
    for (const GlPoint& p : out.points) {
        const bool interior = p.x != first_x && p.x != last_x;
        if (!interior) continue;
        if (p.tag != HullTag::lcm && p.x > out.max_g) out.max_g = p.x;
        if (p.tag != HullTag::gcm && p.x < out.min_l) out.min_l = p.x;
    }
    return out;
}

GlPointSet gl_of(const StepEcdf& e) {
    const auto g = gcm_points(e);
    const auto l = lcm_points(e);
    return gl_union(g, l);
}

GlPointSet gl_of_window(const Dataset& d, std::size_t lo, std::size_t hi) {
    if (hi >= d.size() || hi - lo < 1) {
        throw std::invalid_argument("degenerate support");
    }
    const std::int64_t base = lo == 0 ? 0 : d.cum_count(lo - 1);
    const double n = static_cast<double>(d.cum_count(hi) - base);
    const std::vector<double>& xs = d.values();
    const auto y_at = [&](std::size_t i) {
        return static_cast<double>(d.cum_count(i) - base) / n;
    };

    if (hi - lo < 4096) {
        // Small windows: plain monotone scan, one push per point.
        std::vector<HullPoint> g;
        std::vector<HullPoint> l;
        for (std::size_t i = lo; i <= hi; ++i) {
            const HullPoint p{xs[i], y_at(i)};
            while (g.size() >= 2 &&
                   turn_direction(g[g.size() - 2], g.back(), p) != 1) {
                g.pop_back();
            }
            g.push_back(p);
            while (l.size() >= 2 &&
                   turn_direction(l[l.size() - 2], l.back(), p) != -1) {
                l.pop_back();
            }
            l.push_back(p);
        }
        return gl_union(g, l);
    }

    // Large windows: farthest-point subdivision. Each hull edge is found by
    // locating the point farthest outside the current chord; a hull with v
    // vertices needs ~2v such searches, each of which skips most of the
    // window. Within an index block both cross product terms are monotone,
    // the mass term in the low index and the position term in the high one,
    // so a corner evaluation bounds the whole block; IEEE rounding is
    // monotone, so the bound holds for the floating point values exactly as
    // the per point evaluation computes them, and no survivor is skipped.
    const auto chord_extreme = [&](std::size_t a, std::size_t b,
                                   int side) -> std::optional<std::size_t> {
        if (b - a < 2) {
            return std::nullopt;
        }
        const double ax = xs[a];
        const double ay = y_at(a);
        const double w = xs[b] - ax;  // > 0: support values are unique
        const double h = y_at(b) - ay;
        // Signed offset from the chord, negated for the upper hull so that
        // lower always means farther outside.
        const auto offset = [&](std::size_t k) {
            const double t1 = w * (y_at(k) - ay);
            const double t2 = h * (xs[k] - ax);
            return side > 0 ? t1 - t2 : t2 - t1;
        };
        std::size_t best_k = a + (b - a) / 2;
        double best = offset(best_k);
        std::vector<std::array<std::size_t, 2>> blocks{{a + 1, b - 1}};
        while (!blocks.empty()) {
            const auto [i, j] = blocks.back();
            blocks.pop_back();
            if (j - i < 64) {
                for (std::size_t k = i; k <= j; ++k) {
                    const double v = offset(k);
                    if (v < best) {
                        best = v;
                        best_k = k;
                    }
                }
                continue;
            }
            const double far_t1 = w * (y_at(side > 0 ? i : j) - ay);
            const double far_t2 = h * (xs[side > 0 ? j : i] - ax);
            const double bound = side > 0 ? far_t1 - far_t2 : far_t2 - far_t1;
            if (bound >= best) {
                continue;
            }
            const std::size_t mid = i + (j - i) / 2;
            blocks.push_back({i, mid});
            blocks.push_back({mid + 1, j});
        }
        const HullPoint pa{ax, ay};
        const HullPoint pb{xs[b], y_at(b)};
        const HullPoint pk{xs[best_k], y_at(best_k)};
        if (turn_direction(pa, pb, pk) != (side > 0 ? -1 : 1)) {
            return std::nullopt;  // nothing strictly outside: a hull edge
        }
        return best_k;
    };

    const auto half = [&](int side) {
        std::vector<std::size_t> idx;
        const auto rec = [&](auto&& self, std::size_t a, std::size_t b) -> void {
            const std::optional<std::size_t> k = chord_extreme(a, b, side);
            if (!k) {
                return;
            }
            self(self, a, *k);
            idx.push_back(*k);
            self(self, *k, b);
        };
        rec(rec, lo, hi);
        std::vector<HullPoint> out;
        out.reserve(idx.size() + 2);
        out.push_back({xs[lo], y_at(lo)});
        for (const std::size_t k : idx) {
            out.push_back({xs[k], y_at(k)});
        }
        out.push_back({xs[hi], y_at(hi)});
        return out;
    };
    return gl_union(half(1), half(-1));
}

}  // namespace uutest
