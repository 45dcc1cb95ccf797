#pragma once

#include <array>

namespace cvdv {

// Known constructions that convert an n-coefficient state with certainty
// (or maximal probability) using one-way local measurements.
enum class PovmScheme {
    Nielsen,   // binary two-outcome cascade, 2^(n-1) outcomes
    Birkhoff,  // doubly stochastic decomposition, (n-1)^2/2 + 2 outcomes
    Areas      // single measurement from the area chart, n outcomes
};

// Outcome count as a real number (Birkhoff gives half-integers for odd n).
double povm_count_real(PovmScheme scheme, int n);

// Outcome count rounded down to a whole number of outcomes.
long long povm_count(PovmScheme scheme, int n);

// Outcomes actually produced by the area chart for the n-coefficient
// truncated and renormalized two-mode squeezed spectrum.
int areas_count_observed(double lambda, int n);

// Success probability per squeezed pair of heralding a single-photon Bell
// pair from two independent down-conversion sources, computed by brute-force
// post-selection on the truncated four-mode state: both parties see exactly
// one photon across their two modes. Equals lambda^2 (1-lambda^2)^2.
double spdc_rate(double lambda, int n = 6);

// Squared Schmidt coefficients of the normalized post-selected two-qubit
// state, descending. Both equal 1/2 for every lambda.
std::array<double, 2> spdc_schmidt_coefficients(double lambda, int n = 6);

// spdc_rate relative to the optimal single-copy conversion probability
// min(1, 2 lambda^2). Approaches 1/2 as lambda -> 0.
double spdc_rate_vs_optimal(double lambda, int n = 6);

}  // namespace cvdv
