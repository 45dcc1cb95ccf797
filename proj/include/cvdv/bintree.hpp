#pragma once

#include <vector>

#include "cvdv/povm.hpp"

namespace cvdv {

// How an internal node divides its outcome range.
enum class TreeVariant {
    Oopr,     // one outcome per round: split off the most likely outcome
    NearEven  // split so both halves carry as close to equal mass as possible
};

// Node over the contiguous outcome range [first, last) of the sorted set.
// Internal nodes carry the two diagonal filters applied locally to decide
// which half resolves next; entries satisfy b0[k]^2 + b1[k]^2 = 1 wherever
// any covered outcome has support.
struct TreeNode {
    int first = 0;
    int last = 0;
    int depth = 0;
    int left = -1;
    int right = -1;
    int outcome = -1;  // leaf only
    std::vector<double> b0, b1;

    bool is_leaf() const { return left < 0; }
};

struct MeasurementTree {
    TreeVariant variant = TreeVariant::Oopr;
    OutcomeSet set;               // outcomes sorted by descending probability
    std::vector<TreeNode> nodes;  // nodes[0] is the root
};

// The two tail bounds cap how much a finer truncation of the same set can
// raise expected_rounds and entropy, assuming the unresolved mass keeps
// falling at least as fast as one extra factor of the geometric ratio per
// outcome. They are infinite when the set carries no ratio.
struct TreeStats {
    double expected_rounds = 0.0;     // sum of P_m depth_m over the leaves
    double rounds_tail_bound = 0.0;   // truncation error bar on the above
    double rounds_variance = 0.0;     // second moment spread of the depths
    double entropy = 0.0;             // Shannon entropy of the resolved outcomes
    double entropy_tail_bound = 0.0;  // truncation error bar on the above
    double resolved_probability = 0.0;
    double resolved_ebits = 0.0;      // mean ebits delivered per shot
    double efficiency = 0.0;          // expected_rounds / resolved_ebits
};

// Build the adaptive binary protocol over a descending-sorted outcome set.
MeasurementTree build_tree(const OutcomeSet& set, TreeVariant variant);

TreeStats tree_stats(const MeasurementTree& tree);

// Same, but rates efficiency against a caller-supplied entanglement yield
// (ebits per successful shot) instead of the per-leaf resolved ebits.
TreeStats tree_stats(const MeasurementTree& tree, double yield_s);

// True when both trees make the same splits over the same outcome ranges.
bool trees_identical(const MeasurementTree& a, const MeasurementTree& b);

}  // namespace cvdv
