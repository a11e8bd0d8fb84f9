#include "uutest/splitter.hpp"

#include <stdexcept>

namespace uutest {
namespace {

// Splits at cut, values equal to the cut going left. Returns nullopt when
// either side would be empty, which can only happen for a cut outside the
// open support.
std::optional<std::pair<Dataset, Dataset>> partition(const Dataset& d, double cut) {
    if (cut < d.min() || cut >= d.max()) {
        return std::nullopt;
    }
    const std::size_t last_left = d.upper_index(cut);
    if (last_left + 1 >= d.size()) {
        return std::nullopt;
    }
    return std::make_pair(d.restrict(d.min(), d.values()[last_left]),
                          d.restrict(d.values()[last_left + 1], d.max()));
}

struct Builder {
    double alpha;
    std::size_t max_leaves;
    std::size_t leaves = 0;
    std::size_t unresolved = 0;

    std::unique_ptr<SplitNode> build(const Dataset& d) {
        auto node = std::make_unique<SplitNode>();
        node->lo = d.min();
        node->hi = d.max();
        node->n = d.n_total();

        if (d.size() < 2) {
            // single-valued slice; nothing to test or model
            node->verdict = Verdict::unimodal;
            node->unresolved = true;
            ++leaves;
            ++unresolved;
            return node;
        }

        const UuReport rep = uu_test(d, alpha);
        node->verdict = rep.verdict;
        if (rep.verdict == Verdict::unimodal) {
            node->model = Umm::fit(rep.s_points, d, alpha);
            ++leaves;
            return node;
        }

        // Splitting replaces one leaf with two; stop when the budget or a
        // usable cut runs out.
        auto parts = leaves + 2 <= max_leaves && !rep.cut_hints.empty()
                         ? partition(d, rep.cut_hints.front())
                         : std::nullopt;
        if (!parts) {
            node->unresolved = true;
            ++leaves;
            ++unresolved;
            return node;
        }
        node->cut = rep.cut_hints.front();
        ++leaves;  // placeholder for this node while children are built
        node->left = build(parts->first);
        --leaves;  // children counted themselves
        node->right = build(parts->second);
        return node;
    }
};

}  // namespace

std::optional<double> first_cut_point(const Dataset& d, double alpha) {
    const UuReport rep = uu_test(d, alpha);
    if (rep.verdict == Verdict::unimodal) {
        return std::nullopt;
    }
    if (rep.cut_hints.empty()) {
        throw std::runtime_error("no cut available");
    }
    return rep.cut_hints.front();
}

SplitTree split_recursive(const Dataset& d, double alpha, std::size_t max_leaves) {
    if (max_leaves < 1) {
        throw std::invalid_argument("invalid value");
    }
    Builder builder{alpha, max_leaves};
    SplitTree tree;
    tree.root = builder.build(d);
    tree.leaf_count = builder.leaves;
    tree.unresolved_count = builder.unresolved;
    return tree;
}

}  // namespace uutest
