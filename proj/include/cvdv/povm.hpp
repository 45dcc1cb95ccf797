#pragma once

#include <string>
#include <vector>

namespace cvdv {

// Measurement outcome identity. Bell(n,m) keeps n < m; Qudit(d) is the
// d-dimensional maximally entangled outcome; Fail leaves the product state.
struct OutcomeLabel {
    enum class Kind { Fail, Bell, Qudit };
    Kind kind = Kind::Fail;
    int n = 0;
    int m = 0;  // Bell partner index; unused otherwise

    static OutcomeLabel fail() { return {Kind::Fail, 0, 0}; }
    static OutcomeLabel bell(int n, int m);
    static OutcomeLabel qudit(int d);

    std::string str() const;
    static OutcomeLabel parse(const std::string& text);

    bool operator==(const OutcomeLabel&) const = default;
    // Fail first, then Bell lexicographic, then Qudit ascending.
    bool operator<(const OutcomeLabel& o) const;
};

// Diagonal Kraus operator in the Fock basis; entry k acts on |k>|k>.
struct KrausDiagonal {
    std::vector<double> diag;

    int dim() const { return static_cast<int>(diag.size()); }
};

struct Outcome {
    OutcomeLabel label;
    double probability = 0.0;
    KrausDiagonal kraus;
};

// Outcomes sorted by descending probability (ties broken by label order),
// plus the probability mass unresolved at this truncation. geometric_ratio
// is the asymptotic ratio of successive tail probabilities (lambda^2 for the
// sets built here) and feeds the truncation error bounds; negative if unknown.
struct OutcomeSet {
    std::vector<Outcome> outcomes;
    double tail_mass = 0.0;
    double geometric_ratio = -1.0;
    int dim = 0;

    int size() const { return static_cast<int>(outcomes.size()); }
    double total_probability() const;
    void sort_descending();
};

// Max over Fock indices k <= k_max of |sum_outcomes diag_k^2 - 1|.
double completeness_deviation(const OutcomeSet& set, int k_max);

}  // namespace cvdv
