#pragma once

#include "cvdv/povm.hpp"

namespace cvdv {

// Probability that the measurement projects the two-mode squeezed state onto
// the d-dimensional maximally entangled state: d x^(d-1) (1-x)^2 with
// x = lambda^2.
double qudit_outcome_probability(double lambda, int d);

// Exact mass of all outcomes with dimension above max_d:
// x^max_d (max_d (1-x) + 1).
double qudit_tail_mass(double lambda, int max_d);

// Local filter realizing the dimension-d outcome on a dim-level truncation.
// Entries lambda^(d-1-n) sqrt(1-lambda^2) for n < d, zero above.
KrausDiagonal qudit_kraus(double lambda, int d, int dim);

// Outcomes for d = 1..max_d sorted by descending probability. dim >= max_d.
OutcomeSet qudit_outcomes(double lambda, int max_d, int dim);

// Smallest max_d so that the outcome family is complete to within tol on
// Fock levels 0..k_max (the per-level deficiency is x^(max_d - k)).
int qudit_truncation_for_completeness(double lambda, int k_max, double tol);

// Smallest max_d whose unresolved outcome mass stays below the tolerance.
int qudit_default_truncation(double lambda, double tail_tolerance = 1e-12);

// Mean ebits sum_d P_d log2(d), summed until the remainder bound drops
// below tolerance.
double average_entanglement(double lambda, double tolerance = 1e-12);

// Ebits of the state's entropy lost by the measurement on average. Tends to
// gamma_Euler / ln 2 as lambda -> 1.
double entanglement_gap(double lambda, double tolerance = 1e-12);

}  // namespace cvdv
