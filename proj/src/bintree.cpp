#include "cvdv/bintree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvdv/errors.hpp"

namespace cvdv {

namespace {

double ebits_of(const OutcomeLabel& label) {
    switch (label.kind) {
        case OutcomeLabel::Kind::Fail:
            return 0.0;
        case OutcomeLabel::Kind::Bell:
            return 1.0;
        case OutcomeLabel::Kind::Qudit:
            return std::log2(static_cast<double>(label.n));
    }
    return 0.0;
}

}  // namespace

MeasurementTree build_tree(const OutcomeSet& set, TreeVariant variant) {
    const int K = static_cast<int>(set.outcomes.size());
    if (K < 1) throw domain_error("cannot build a tree over an empty set");
    if (set.dim < 1) throw domain_error("outcome set carries no dimension");
    for (const auto& o : set.outcomes) {
        if (static_cast<int>(o.kraus.diag.size()) != set.dim)
            throw domain_error("outcome filter dimension mismatch");
        if (!(o.probability >= 0.0))
            throw domain_error("outcome probability must be non-negative");
    }
    for (int m = 0; m + 1 < K; ++m)
        if (set.outcomes[m].probability <
            set.outcomes[m + 1].probability - 1e-12)
            throw domain_error("outcomes must be sorted by falling probability");

    MeasurementTree tree;
    tree.variant = variant;
    tree.set = set;
    const int dim = set.dim;

    // cum[i][k] holds the filter mass sum_{m<i} E_m(k)^2 so any range's mass
    // is one subtraction; pcum does the same for probabilities.
    std::vector<std::vector<double>> cum(K + 1, std::vector<double>(dim, 0.0));
    std::vector<double> pcum(K + 1, 0.0);
    for (int m = 0; m < K; ++m) {
        for (int k = 0; k < dim; ++k) {
            double e = set.outcomes[m].kraus.diag[k];
            cum[m + 1][k] = cum[m][k] + e * e;
        }
        pcum[m + 1] = pcum[m] + set.outcomes[m].probability;
    }

    tree.nodes.reserve(2 * K - 1);
    struct Item {
        int a, b, depth, slot;
    };
    std::vector<Item> todo;
    auto alloc = [&tree](int a, int b, int depth) {
        TreeNode n;
        n.first = a;
        n.last = b;
        n.depth = depth;
        tree.nodes.push_back(std::move(n));
        return static_cast<int>(tree.nodes.size()) - 1;
    };
    todo.push_back({0, K, 0, alloc(0, K, 0)});
    while (!todo.empty()) {
        auto [a, b, depth, slot] = todo.back();
        todo.pop_back();
        if (b - a == 1) {
            tree.nodes[slot].outcome = a;
            continue;
        }
        int y = 0;
        if (variant == TreeVariant::Oopr) {
            y = 1;
        } else {
            // Largest prefix carrying at most half the range's mass; ties
            // extend the prefix. An overweight front outcome still splits off.
            const double half = 0.5 * (pcum[b] - pcum[a]);
            double mass = 0.0;
            while (a + y + 1 < b) {
                double next = mass + set.outcomes[a + y].probability;
                if (next > half) break;
                mass = next;
                ++y;
            }
            if (y == 0) y = 1;
        }
        const int mid = a + y;
        {
            TreeNode& node = tree.nodes[slot];
            node.b0.resize(dim);
            node.b1.resize(dim);
            for (int k = 0; k < dim; ++k) {
                double g = cum[b][k] - cum[a][k];
                if (g <= 0.0) {
                    node.b0[k] = 0.0;
                    node.b1[k] = 0.0;
                    continue;
                }
                double r0 = std::clamp((cum[mid][k] - cum[a][k]) / g, 0.0, 1.0);
                double r1 = std::clamp((cum[b][k] - cum[mid][k]) / g, 0.0, 1.0);
                node.b0[k] = std::sqrt(r0);
                node.b1[k] = std::sqrt(r1);
            }
        }
        int left = alloc(a, mid, depth + 1);
        int right = alloc(mid, b, depth + 1);
        tree.nodes[slot].left = left;
        tree.nodes[slot].right = right;
        todo.push_back({a, mid, depth + 1, left});
        todo.push_back({mid, b, depth + 1, right});
    }
    return tree;
}

TreeStats tree_stats(const MeasurementTree& tree) {
    TreeStats s;
    const int K = static_cast<int>(tree.set.outcomes.size());
    for (const TreeNode& n : tree.nodes) {
        if (!n.is_leaf()) continue;
        const Outcome& o = tree.set.outcomes[n.outcome];
        const double p = o.probability;
        const double d = n.depth;
        s.expected_rounds += p * d;
        s.rounds_variance += p * d * d;
        if (p > 0.0) s.entropy -= p * std::log2(p);
        s.resolved_probability += p;
        s.resolved_ebits += p * ebits_of(o.label);
    }
    s.rounds_variance -= s.expected_rounds * s.expected_rounds;

    const double t = tree.set.tail_mass;
    const double q = tree.set.geometric_ratio;
    if (t > 0.0) {
        if (q >= 0.0 && q < 1.0) {
            // Model: a finer truncation appends the unresolved mass as a
            // geometric chain with ratio q entering at depth K + 1. `gap`
            // charges every resolved leaf up to its chain depth, covering
            // the final leaf that deepening pushes one level down. The
            // doubled ratio term absorbs tails that flatten slightly slower
            // than q (the qudit ladder d x^(d-1) overshoots the plain chain
            // by x^(D+1)/(1-x) <= t q/(1-q)); the entropy bound gains
            // t log2(1/(1-q)) for the same reason.
            double chain = 0.0;
            for (int m = 0; m < K; ++m)
                chain += tree.set.outcomes[m].probability * (m + 1);
            const double gap = std::max(0.0, chain - s.expected_rounds);
            s.rounds_tail_bound = gap + t * (K + 1) + 2.0 * t * q / (1.0 - q);
            s.entropy_tail_bound = -t * std::log2(t * (1.0 - q)) -
                                   t * std::log2(1.0 - q);
            if (q > 0.0)
                s.entropy_tail_bound -= t * q / (1.0 - q) * std::log2(q);
        } else {
            s.rounds_tail_bound = std::numeric_limits<double>::infinity();
            s.entropy_tail_bound = std::numeric_limits<double>::infinity();
        }
    }
    s.efficiency = s.resolved_ebits > 0.0
                       ? s.expected_rounds / s.resolved_ebits
                       : std::numeric_limits<double>::infinity();
    return s;
}

TreeStats tree_stats(const MeasurementTree& tree, double yield_s) {
    if (!(yield_s > 0.0))
        throw domain_error("entanglement yield must be positive");
    TreeStats s = tree_stats(tree);
    s.efficiency = s.expected_rounds / yield_s;
    return s;
}

bool trees_identical(const MeasurementTree& a, const MeasurementTree& b) {
    if (a.set.outcomes.size() != b.set.outcomes.size()) return false;
    for (size_t m = 0; m < a.set.outcomes.size(); ++m)
        if (!(a.set.outcomes[m].label == b.set.outcomes[m].label)) return false;
    if (a.nodes.size() != b.nodes.size()) return false;
    for (size_t i = 0; i < a.nodes.size(); ++i) {
        const TreeNode& x = a.nodes[i];
        const TreeNode& y = b.nodes[i];
        if (x.first != y.first || x.last != y.last || x.depth != y.depth ||
            x.left != y.left || x.right != y.right || x.outcome != y.outcome)
            return false;
    }
    return true;
}

}  // namespace cvdv
