#include "uutest/uutest.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "uutest/uniformity.hpp"

namespace uutest {
namespace {

constexpr int depth_max = 32;

// Memoized uniformity verdicts for segments between member values of d,
// endpoints included. Tiny segments pass outright (see ks_min_points). The
// same segments recur heavily across repair candidates and re-entered
// recursion levels, and a segment's verdict depends only on its index pair,
// so each distinct segment is scanned once. The scan stops as soon as the
// running deviation already settles rejection: the statistic only grows, so
// finishing the scan could not change that verdict.
struct SegmentCache {
    const Dataset& d;
    double alpha;
    std::unordered_map<std::uint64_t, bool> memo;

    bool uniform(double a, double b) {
        const std::size_t ia = d.index_of(a);
        const std::size_t ib = d.index_of(b);
        const std::uint64_t key = (static_cast<std::uint64_t>(ia) << 32) |
                                  static_cast<std::uint64_t>(ib);
        const auto it = memo.find(key);
        if (it != memo.end()) {
            return it->second;
        }
        const bool ok = scan(ia, ib, a, b);
        memo.emplace(key, ok);
        return ok;
    }

    // Exact accept/reject decision without visiting every point: deviations
    // strictly inside an index block are bounded through the block ends, so
    // a block whose bound cannot reject (or cannot beat the running maximum)
    // is skipped whole, and blocks that might matter split at the middle.
    // Smooth segments resolve after ~sqrt(n) point visits; the verdict is
    // identical to the full scan either way.
    bool scan(std::size_t lo, std::size_t hi, double a, double b) const {
        const std::int64_t base = lo == 0 ? 0 : d.cum_count(lo - 1);
        const std::int64_t n = d.cum_count(hi) - base;
        if (n <= ks_min_points) {
            return true;
        }
        const std::vector<double>& values = d.values();
        const double nn = static_cast<double>(n);
        const double width = b - a;
        const auto u_at = [&](std::size_t i) { return (values[i] - a) / width; };
        const auto f_hi = [&](std::size_t i) {
            return static_cast<double>(d.cum_count(i) - base) / nn;
        };
        const auto f_lo = [&](std::size_t i) {
            return static_cast<double>(i == lo ? 0 : d.cum_count(i - 1) - base) / nn;
        };
        const auto dev = [&](std::size_t i) {
            return std::max(f_hi(i) - u_at(i), u_at(i) - f_lo(i));
        };
        double stat = std::max(dev(lo), dev(hi));
        std::vector<std::array<std::size_t, 2>> blocks{{lo, hi}};
        while (!blocks.empty()) {
            const auto [i, j] = blocks.back();
            blocks.pop_back();
            if (j - i < 2) {
                continue;  // ends are already in stat
            }
            const double bound = std::max(f_lo(j) - u_at(i), u_at(j) - f_hi(i));
            if (bound <= stat || ks_pvalue(bound, n) > alpha) {
                continue;  // cannot change the verdict
            }
            const std::size_t mid = i + (j - i) / 2;
            stat = std::max(stat, dev(mid));
            if (ks_pvalue(stat, n) <= alpha) {
                return false;
            }
            blocks.push_back({i, mid});
            blocks.push_back({mid, j});
        }
        return ks_pvalue(stat, n) > alpha;
    }
};

// Recomputes the interior-driven role extremes after a repair dropped or
// demoted points, mirroring the convention of gl_union.
void refresh_extremes(GlPointSet& gl) {
    const double first_x = gl.points.front().x;
    const double last_x = gl.points.back().x;
    gl.max_g = first_x;
    gl.min_l = last_x;
    for (const GlPoint& p : gl.points) {
        if (p.x == first_x || p.x == last_x) continue;
        if (p.tag != HullTag::lcm && p.x > gl.max_g) gl.max_g = p.x;
        if (p.tag != HullTag::gcm && p.x < gl.min_l) gl.min_l = p.x;
    }
}

ConsistentSubset finish_subset(GlPointSet gl) {
    refresh_extremes(gl);
    ConsistentSubset cs;
    cs.split_index = gl.points.size() - 1;
    if (gl.min_l < gl.points.back().x) {
        // A concave suffix exists: the convex prefix ends at max_g, which is
        // the first point when the minorant has no interior breakpoints.
        for (std::size_t i = 0; i < gl.points.size(); ++i) {
            if (gl.points[i].x == gl.max_g) {
                cs.split_index = i;
                break;
            }
        }
    }
    cs.set = std::move(gl);
    return cs;
}

// Sorted union of two ascending value lists (duplicates collapse).
std::vector<double> merge_points(std::span<const double> a,
                                 std::span<const double> b) {
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SearchResult forward_search_impl(std::span<const double> p, double e_l,
                                 SegmentCache& seg) {
    SearchResult r;
    const auto it = std::lower_bound(p.begin(), p.end(), e_l);
    const std::size_t idx = static_cast<std::size_t>(it - p.begin());
    for (std::size_t j = idx + 2; j < p.size(); ++j) {
        if (seg.uniform(e_l, p[j])) {
            r.points = {p[j]};
            r.success = true;
            return r;
        }
    }
    return r;
}

SearchResult backward_search_impl(std::span<const double> p_acc, double e_r,
                                  SegmentCache& seg) {
    SearchResult r;
    if (p_acc.size() < 2) {
        return r;
    }
    for (std::size_t k = p_acc.size() - 2;; --k) {
        if (seg.uniform(p_acc[k], e_r)) {
            r.points.assign(p_acc.begin(),
                            p_acc.begin() + static_cast<std::ptrdiff_t>(k) + 1);
            r.points.push_back(e_r);
            r.success = true;
            return r;
        }
        if (k == 0) break;
    }
    return r;
}

SearchResult sufficient_subset_impl(std::span<const double> p, SegmentCache& seg) {
    SearchResult r;
    r.success = true;
    if (p.empty()) {
        return r;
    }
    r.points.push_back(p.front());
    while (r.points.back() != p.back()) {
        const double e_l = r.points.back();
        const auto it = std::lower_bound(p.begin(), p.end(), e_l);
        const std::size_t pos = static_cast<std::size_t>(it - p.begin());
        const double e_r = p[pos + 1];
        if (seg.uniform(e_l, e_r)) {
            r.points.push_back(e_r);
            continue;
        }
        SearchResult fwd = forward_search_impl(p, e_l, seg);
        if (fwd.success) {
            r.points.push_back(fwd.points.front());
            continue;
        }
        SearchResult bwd = backward_search_impl(r.points, e_r, seg);
        if (bwd.success) {
            r.points = std::move(bwd.points);
            continue;
        }
        r.points.clear();
        r.success = false;
        r.fail_a = e_l;
        r.fail_b = e_r;
        return r;
    }
    return r;
}

struct Search {
    const Dataset& d;
    double alpha;
    SegmentCache cache;
    int max_depth_seen = 0;
    std::vector<double> hints;

    // Midpoints of the concave-to-convex role reversals that make gl
    // inconsistent: the last concave breakpoint of each concave run paired
    // with the first convex breakpoint after it, so each midpoint falls in
    // the gap between the runs where the density dips.
    std::vector<double> reversal_midpoints(const GlPointSet& gl) const {
        std::vector<double> mids;
        const std::size_t last = gl.points.size() - 1;
        std::size_t i = 1;
        while (i < last) {
            // find the next concave run and walk to its end
            while (i < last && gl.points[i].tag == HullTag::gcm) ++i;
            if (i >= last) break;
            while (i + 1 < last && gl.points[i + 1].tag != HullTag::gcm) ++i;
            const double x_a = gl.points[i].x;
            // the point after the run is convex, or the run touched the end
            const std::size_t j = i + 1;
            if (j >= last) break;
            mids.push_back(0.5 * (x_a + gl.points[j].x));
            i = j;
        }
        return mids;
    }

    bool recurse(std::vector<double>& s_g, std::array<double, 2>& p_i,
                 std::vector<double>& s_l, int depth) {
        max_depth_seen = std::max(max_depth_seen, depth);
        const double lo = p_i[0];
        const double hi = p_i[1];
        if (lo == hi) {
            return true;
        }
        const std::size_t ia = d.index_of(lo);
        const std::size_t ib = d.index_of(hi);
        if (cache.uniform(lo, hi)) {
            return true;
        }
        if (depth >= depth_max) {
            if (hints.empty()) hints = {0.5 * (lo + hi)};
            return false;
        }

        // Hulls of the restricted, renormalized ecdf; renormalizing leaves
        // the breakpoints unchanged and keeps one code path.
        const GlPointSet gl = gl_of_window(d, ia, ib);

        std::optional<std::array<double, 2>> irreparable;
        for (const ConsistentSubset& cs : consistent_subsets(gl)) {
            const Decomposition dec = decompose(cs);
            SearchResult rg = sufficient_subset_impl(dec.p_g, cache);
            if (!rg.success) {
                if (!irreparable) irreparable = {rg.fail_a, rg.fail_b};
                continue;
            }
            SearchResult rl = sufficient_subset_impl(dec.p_l, cache);
            if (!rl.success) {
                if (!irreparable) irreparable = {rl.fail_a, rl.fail_b};
                continue;
            }
            std::vector<double> s_g2 = merge_points(s_g, rg.points);
            std::vector<double> s_l2 = merge_points(rl.points, s_l);
            std::array<double, 2> p_i2 = dec.p_i;
            if (recurse(s_g2, p_i2, s_l2, depth + 1)) {
                s_g.swap(s_g2);
                s_l.swap(s_l2);
                p_i = p_i2;
                return true;
            }
        }

        // This level could not be mended. Role reversals in its gl are the
        // splitting evidence; a repair-proof segment stands in when the set
        // was consistent all along. Deeper hints are superseded.
        if (!gl.consistent()) {
            hints = reversal_midpoints(gl);
        } else if (irreparable) {
            hints = {0.5 * ((*irreparable)[0] + (*irreparable)[1])};
        }
        if (hints.empty()) {
            hints = {0.5 * (lo + hi)};
        }
        return false;
    }
};

// Cut hints for a multimodal dataset: prominent valleys of a smoothed
// density profile, in ascending order. Density is measured over a sliding
// k-spacing stretch of the support; a valley counts only when the profile
// rises to at least `barrier` times its density on both sides before
// dipping lower. The fence keeps tails, truncation stumps at the edges of
// an earlier cut, and plain noise dips out of the hint list, while the
// between-cluster dips that caused the verdict clear it comfortably.
std::vector<double> valley_hints(const Dataset& d) {
    const std::vector<double>& xs = d.values();
    const std::size_t k = std::min<std::size_t>(47, xs.size() / 8);
    if (k < 2) {
        return {};
    }
    const std::size_t nj = xs.size() - k;
    std::vector<double> rho(nj);
    for (std::size_t j = 0; j < nj; ++j) {
        // width > 0: support values are unique
        rho[j] = static_cast<double>(d.cum_count(j + k) - d.cum_count(j)) /
                 (xs[j + k] - xs[j]);
    }
    constexpr double barrier = 3.0;
    struct Valley {
        double x;
        double rho;
    };
    std::vector<Valley> found;
    bool hunting_valley = false;  // first establish a peak, so an ascending
    double ext = rho[0];          // left tail can never read as a valley
    std::size_t ext_j = 0;
    for (std::size_t j = 1; j < nj; ++j) {
        if (hunting_valley) {
            if (rho[j] < ext) {
                ext = rho[j];
                ext_j = j;
            } else if (rho[j] >= barrier * ext) {
                found.push_back({0.5 * (xs[ext_j] + xs[ext_j + k]), ext});
                hunting_valley = false;
                ext = rho[j];
                ext_j = j;
            }
        } else if (rho[j] > ext) {
            ext = rho[j];
            ext_j = j;
        } else if (rho[j] * barrier <= ext) {
            hunting_valley = true;
            ext = rho[j];
            ext_j = j;
        }
    }
    if (found.empty()) {
        return {};
    }
    // A dip that cleared the fence on sheer noise is still far shallower
    // than a real between-cluster valley; keep only valleys within a factor
    // of the deepest one. Comparable true valleys all survive, and a dropped
    // shallow one reappears once a cut isolates its neighborhood.
    double deepest = found.front().rho;
    for (const Valley& v : found) deepest = std::min(deepest, v.rho);
    std::vector<double> hints;
    for (const Valley& v : found) {
        if (v.rho <= 5.0 * deepest) {
            hints.push_back(v.x);
        }
    }
    return hints;
}

}  // namespace

std::vector<ConsistentSubset> consistent_subsets(const GlPointSet& gl) {
    if (gl.points.size() < 2) {
        throw std::invalid_argument("degenerate support");
    }
    if (gl.consistent()) {
        return {finish_subset(gl)};
    }
    const std::size_t last = gl.points.size() - 1;

    // Every maximal consistent subset keeps the convex roles up to some cut
    // position and the concave roles after it. Cutting right before the first
    // concave point drops the late convex points (the first classic repair);
    // cutting right after the last convex point drops the early concave points
    // (the second). Cuts in between cure sets whose role reversals sit at both
    // ends at once, where either classic repair would discard a genuine run.
    const auto cut_subset = [&](std::size_t cut) {
        GlPointSet out;
        out.points.reserve(gl.points.size());
        for (std::size_t i = 0; i <= last; ++i) {
            const GlPoint& p = gl.points[i];
            if (i == 0 || i == last) {
                out.points.push_back(p);
            } else if (i <= cut) {
                if (p.tag != HullTag::lcm) {
                    out.points.push_back({p.x, p.f, HullTag::gcm});
                }
            } else if (p.tag != HullTag::gcm) {
                out.points.push_back({p.x, p.f, HullTag::lcm});
            }
        }
        return out;
    };

    // Interior bounds of the reversal zone: first concave role, last convex.
    std::size_t i_fl = 0;
    std::size_t i_lg = 0;
    for (std::size_t i = 1; i < last; ++i) {
        if (gl.points[i].tag != HullTag::gcm && i_fl == 0) i_fl = i;
        if (gl.points[i].tag != HullTag::lcm) i_lg = i;
    }

    std::vector<ConsistentSubset> out;
    const auto push_unique = [&](GlPointSet cand) {
        if (cand.points.size() < 3) {
            // Bare extremes: the lone segment is the whole window, which is
            // already known to be non-uniform.
            return;
        }
        for (const ConsistentSubset& seen : out) {
            if (seen.set.points.size() == cand.points.size() &&
                std::equal(cand.points.begin(), cand.points.end(),
                           seen.set.points.begin(), [](const GlPoint& a, const GlPoint& b) {
                               return a.x == b.x && a.tag == b.tag;
                           })) {
                return;
            }
        }
        out.push_back(finish_subset(std::move(cand)));
    };
    push_unique(cut_subset(i_fl - 1));
    push_unique(cut_subset(i_lg));
    for (std::size_t k = i_fl; k < i_lg; ++k) {
        push_unique(cut_subset(k));
    }
    return out;
}

Decomposition decompose(const ConsistentSubset& cs) {
    const auto& pts = cs.set.points;
    const std::size_t k = pts.size();
    const std::size_t c = cs.split_index;
    Decomposition dec;
    if (c == k - 1) {
        // No concave suffix: the intermediate interval collapses at the end.
        dec.p_g.reserve(k);
        for (const GlPoint& p : pts) dec.p_g.push_back(p.x);
        dec.p_i = {pts.back().x, pts.back().x};
        dec.p_l = {pts.back().x};
        return dec;
    }
    dec.p_g.reserve(c + 1);
    for (std::size_t i = 0; i <= c; ++i) dec.p_g.push_back(pts[i].x);
    dec.p_i = {pts[c].x, pts[c + 1].x};
    dec.p_l.reserve(k - c - 1);
    for (std::size_t i = c + 1; i < k; ++i) dec.p_l.push_back(pts[i].x);
    return dec;
}

SearchResult forward_search(std::span<const double> p, double e_l,
                            const Dataset& d, double alpha) {
    SegmentCache seg{d, alpha, {}};
    return forward_search_impl(p, e_l, seg);
}

SearchResult backward_search(std::span<const double> p_acc, double e_r,
                             const Dataset& d, double alpha) {
    SegmentCache seg{d, alpha, {}};
    return backward_search_impl(p_acc, e_r, seg);
}

SearchResult sufficient_subset(std::span<const double> p, const Dataset& d,
                               double alpha) {
    SegmentCache seg{d, alpha, {}};
    return sufficient_subset_impl(p, seg);
}

UuReport uu_test(const Dataset& d, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("invalid value");
    }
    if (d.size() < 2) {
        throw std::invalid_argument("degenerate support");
    }

    Search search{d, alpha, {d, alpha, {}}, 0, {}};
    std::vector<double> s_g;
    std::vector<double> s_l;
    std::array<double, 2> p_i = {d.min(), d.max()};
    const bool ok = search.recurse(s_g, p_i, s_l, 0);

    UuReport rep;
    rep.recursion_depth = search.max_depth_seen;
    if (!ok) {
        rep.verdict = Verdict::multimodal;
        // Valley positions of the density profile make better cuts than the
        // hull breakpoints of whichever recursion window failed: a window cut
        // into a cluster grows spurious breakpoints at its edges. The window
        // machinery stands in when the profile is too short or too shallow
        // to show a fenced valley.
        rep.cut_hints = valley_hints(d);
        if (rep.cut_hints.empty()) {
            rep.cut_hints = std::move(search.hints);
        }
        return rep;
    }
    rep.verdict = Verdict::unimodal;
    std::vector<double> mid = {p_i[0], p_i[1]};
    if (mid[0] == mid[1]) mid.pop_back();
    rep.s_points = merge_points(merge_points(s_g, mid), s_l);
    rep.segments.reserve(rep.s_points.size() - 1);
    for (std::size_t i = 0; i + 1 < rep.s_points.size(); ++i) {
        SegmentEvidence seg;
        seg.a = rep.s_points[i];
        seg.b = rep.s_points[i + 1];
        const std::size_t ia = d.index_of(seg.a);
        const std::size_t ib = d.index_of(seg.b);
        seg.n = d.count_in(ia, ib);
        seg.ks_p = ks_pvalue(ks_statistic_uniform(d, ia, ib, seg.a, seg.b), seg.n);
        rep.segments.push_back(seg);
    }
    return rep;
}

}  // namespace uutest
