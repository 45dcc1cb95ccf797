#pragma once

#include <vector>

#include "cvdv/spectrum.hpp"

namespace cvdv {

// Finite target spectrum, descending, summing to 1.
struct TargetSpectrum {
    std::vector<double> coeffs;

    static TargetSpectrum maximally_entangled(int d);
    int size() const { return static_cast<int>(coeffs.size()); }
    double suffix_sum(int l) const;
    void validate() const;
};

// Nielsen condition for a deterministic local conversion: every suffix sum of
// the initial spectrum (tail included) dominates the target's. Comparisons
// treat differences smaller than 1e-12 as satisfied.
bool majorizes(const SchmidtSpectrum& initial, const TargetSpectrum& target);

// Optimal conversion probability min_l suffix_initial(l)/suffix_target(l)
// over suffixes with nonzero denominator, clamped to [0, 1].
double vidal_pmax(const SchmidtSpectrum& initial, const TargetSpectrum& target);

// Closed form for the Bell-pair target: min(1, 2 lambda^2).
double pmax_qubit(double lambda);

}  // namespace cvdv
