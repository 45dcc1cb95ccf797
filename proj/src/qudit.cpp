#include "cvdv/qudit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cvdv/errors.hpp"
#include "cvdv/spectrum.hpp"

namespace cvdv {

namespace {

void check_lambda(double lambda) {
    if (!(lambda >= 0.0) || lambda >= 1.0)
        throw domain_error("lambda must lie in [0, 1)");
}

// sum_{d > D} d^2 x^(d-1), closed form of the truncated derivative series.
double tail_d_squared(double x, int D) {
    double c2 = 2.0 * D * static_cast<double>(D) + 2.0 * D - 1.0;
    return std::pow(x, D) *
           ((D + 1.0) * (D + 1.0) - c2 * x + static_cast<double>(D) * D * x * x) /
           std::pow(1.0 - x, 3);
}

}  // namespace

double qudit_outcome_probability(double lambda, int d) {
    check_lambda(lambda);
    if (d < 1) throw domain_error("outcome dimension must be positive");
    const double x = lambda * lambda;
    return d * std::pow(x, d - 1) * (1.0 - x) * (1.0 - x);
}

double qudit_tail_mass(double lambda, int max_d) {
    check_lambda(lambda);
    if (max_d < 0) throw domain_error("max_d must be non-negative");
    const double x = lambda * lambda;
    return std::pow(x, max_d) * (max_d * (1.0 - x) + 1.0);
}

KrausDiagonal qudit_kraus(double lambda, int d, int dim) {
    check_lambda(lambda);
    if (d < 1) throw domain_error("outcome dimension must be positive");
    if (dim < d) throw domain_error("truncation too small for this outcome");
    KrausDiagonal k;
    k.diag.assign(dim, 0.0);
    const double scale = std::sqrt(1.0 - lambda * lambda);
    // Entries grow towards n = d-1 and peak at sqrt(1-lambda^2) <= 1.
    double v = scale;
    for (int n = d - 1; n >= 0; --n) {
        k.diag[n] = v;
        v *= lambda;
    }
    return k;
}

OutcomeSet qudit_outcomes(double lambda, int max_d, int dim) {
    check_lambda(lambda);
    if (max_d < 1) throw domain_error("max_d must be positive");
    if (dim < max_d) throw domain_error("truncation below the largest outcome");
    OutcomeSet set;
    set.dim = dim;
    set.geometric_ratio = lambda * lambda;
    set.tail_mass = qudit_tail_mass(lambda, max_d);
    set.outcomes.reserve(max_d);
    for (int d = 1; d <= max_d; ++d)
        set.outcomes.push_back({OutcomeLabel::qudit(d),
                                qudit_outcome_probability(lambda, d),
                                qudit_kraus(lambda, d, dim)});
    set.sort_descending();
    return set;
}

int qudit_truncation_for_completeness(double lambda, int k_max, double tol) {
    check_lambda(lambda);
    if (k_max < 0) throw domain_error("k_max must be non-negative");
    if (!(tol > 0.0)) throw domain_error("tolerance must be positive");
    if (lambda == 0.0) return k_max + 1;
    const double x = lambda * lambda;
    int extra = static_cast<int>(std::ceil(std::log(tol) / std::log(x)));
    return k_max + std::max(1, extra);
}

int qudit_default_truncation(double lambda, double tail_tolerance) {
    check_lambda(lambda);
    if (!(tail_tolerance > 0.0) || tail_tolerance >= 1.0)
        throw domain_error("tail tolerance must lie in (0, 1)");
    int d = 1;
    while (qudit_tail_mass(lambda, d) >= tail_tolerance) ++d;
    return d;
}

double average_entanglement(double lambda, double tolerance) {
    check_lambda(lambda);
    if (!(tolerance > 0.0)) throw domain_error("tolerance must be positive");
    const double x = lambda * lambda;
    if (x == 0.0) return 0.0;
    const double w = (1.0 - x) * (1.0 - x);
    double sum = 0.0;
    double pow_x = x;  // x^(d-1) for d = 2
    for (int d = 2;; ++d) {
        sum += d * pow_x * w * std::log2(d);
        pow_x *= x;
        // log2(d) <= (d-1)/ln 2 bounds the remainder by a polynomial series.
        if (d % 16 == 0 || pow_x * d * d < tolerance) {
            double bound = w * tail_d_squared(x, d) / std::numbers::ln2;
            if (bound < tolerance) break;
        }
    }
    return sum;
}

double entanglement_gap(double lambda, double tolerance) {
    check_lambda(lambda);
    if (lambda == 0.0) return 0.0;
    return tmsv_entropy(lambda) - average_entanglement(lambda, tolerance);
}

}  // namespace cvdv
