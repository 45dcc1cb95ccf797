#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "cvdv/errors.hpp"
#include "cvdv/qudit.hpp"
#include "cvdv/spectrum.hpp"
#include "doctest.h"

using namespace cvdv;

TEST_CASE("outcome probabilities d x^(d-1) (1-x)^2") {
    CHECK(qudit_outcome_probability(0.8, 1) == doctest::Approx(0.1296).epsilon(1e-14));
    CHECK(qudit_outcome_probability(0.8, 2) == doctest::Approx(0.165888).epsilon(1e-14));
    CHECK(qudit_outcome_probability(0.8, 3) == doctest::Approx(0.15925248).epsilon(1e-14));
    CHECK(qudit_outcome_probability(0.8, 4) == doctest::Approx(0.1358954496).epsilon(1e-14));
    CHECK(qudit_outcome_probability(0.5, 1) == doctest::Approx(0.5625).epsilon(1e-14));
    CHECK(qudit_outcome_probability(0.5, 2) == doctest::Approx(0.28125).epsilon(1e-14));
    CHECK(qudit_outcome_probability(0.0, 1) == 1.0);
    CHECK(qudit_outcome_probability(0.0, 2) == 0.0);
    CHECK_THROWS_AS(qudit_outcome_probability(0.5, 0), domain_error);
}

TEST_CASE("tail mass matches the partial sums exactly") {
    for (double lam : {0.3, 0.5, 0.8, 0.95}) {
        for (int max_d : {1, 5, 20}) {
            double sum = 0.0;
            for (int d = 1; d <= max_d; ++d) sum += qudit_outcome_probability(lam, d);
            CHECK(qudit_tail_mass(lam, max_d) == doctest::Approx(1.0 - sum).epsilon(1e-11));
        }
    }
    CHECK(qudit_tail_mass(0.0, 1) == 0.0);
}

TEST_CASE("filters are geometric ladders") {
    auto k = qudit_kraus(0.8, 3, 5);
    REQUIRE(k.dim() == 5);
    CHECK(k.diag[0] == doctest::Approx(0.384).epsilon(1e-14));
    CHECK(k.diag[1] == doctest::Approx(0.48).epsilon(1e-14));
    CHECK(k.diag[2] == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(k.diag[3] == 0.0);
    CHECK(k.diag[4] == 0.0);

    // Against the squeezed state every kept level contributes the same
    // weight: a_n diag_n^2 = x^(d-1) (1-x)^2, so the outcome is maximally
    // entangled over its d levels.
    const double x = 0.64;
    for (int n = 0; n < 3; ++n) {
        double a_n = (1.0 - x) * std::pow(x, n);
        CHECK(a_n * k.diag[n] * k.diag[n] ==
              doctest::Approx(std::pow(x, 2) * (1.0 - x) * (1.0 - x)).epsilon(1e-13));
    }

    CHECK_THROWS_AS(qudit_kraus(0.5, 3, 2), domain_error);
}

TEST_CASE("outcome family is sorted and complete to the level deficiency") {
    auto set = qudit_outcomes(0.8, 70, 70);
    REQUIRE(set.size() == 70);
    CHECK(set.dim == 70);
    CHECK(set.geometric_ratio == doctest::Approx(0.64));

    // Mid-size outcomes dominate under strong squeezing.
    CHECK(set.outcomes[0].label == OutcomeLabel::qudit(2));
    CHECK(set.outcomes[1].label == OutcomeLabel::qudit(3));
    CHECK(set.outcomes[2].label == OutcomeLabel::qudit(4));
    CHECK(set.outcomes[3].label == OutcomeLabel::qudit(1));
    CHECK(set.outcomes[0].probability == doctest::Approx(0.165888).epsilon(1e-12));

    // Weak squeezing keeps the outcomes in dimension order.
    auto weak = qudit_outcomes(0.5, 22, 22);
    for (int i = 0; i < 4; ++i) CHECK(weak.outcomes[i].label == OutcomeLabel::qudit(i + 1));
    CHECK(weak.outcomes[0].probability == doctest::Approx(0.5625).epsilon(1e-14));

    CHECK(set.total_probability() + set.tail_mass == doctest::Approx(1.0).epsilon(1e-12));

    // Per-level deficiency is x^(max_d - k); the max over k <= 10 sits at k = 10.
    auto coarse = qudit_outcomes(0.8, 30, 30);
    CHECK(completeness_deviation(coarse, 10) ==
          doctest::Approx(std::pow(0.64, 20)).epsilon(1e-9));
}

TEST_CASE("truncation selectors") {
    CHECK(qudit_default_truncation(0.8) == 70);
    CHECK(qudit_default_truncation(0.5) == 22);
    for (double lam : {0.5, 0.8, 0.9}) {
        int d = qudit_default_truncation(lam, 1e-10);
        CHECK(qudit_tail_mass(lam, d) < 1e-10);
        CHECK(qudit_tail_mass(lam, d - 1) >= 1e-10);

        int dc = qudit_truncation_for_completeness(lam, 10, 1e-9);
        CHECK(std::pow(lam * lam, dc - 10) < 1e-9);
    }
}

TEST_CASE("average delivered entanglement") {
    CHECK(average_entanglement(0.0) == 0.0);
    CHECK(average_entanglement(0.5) == doctest::Approx(0.5566230082985024).epsilon(1e-10));
    CHECK(average_entanglement(0.8) == doctest::Approx(1.8477790058275219).epsilon(1e-10));

    // Monotone in the squeezing and below the state entropy.
    double prev = 0.0;
    for (double lam : {0.3, 0.5, 0.7, 0.8, 0.9}) {
        double s = average_entanglement(lam);
        CHECK(s > prev);
        CHECK(s < tmsv_entropy(lam));
        prev = s;
    }
}

TEST_CASE("entanglement gap approaches its strong-squeezing limit") {
    CHECK(entanglement_gap(0.0) == 0.0);
    CHECK(entanglement_gap(0.9) == doctest::Approx(0.8146099308450085).epsilon(1e-9));

    double g1 = entanglement_gap(0.9);
    double g2 = entanglement_gap(0.99);
    double g3 = entanglement_gap(0.999);
    CHECK(g1 < g2);
    CHECK(g2 < g3);
    // gamma / ln 2, the limiting loss per measured copy.
    CHECK(g3 == doctest::Approx(0.8327461772768672).epsilon(1e-5));
    CHECK(g3 < 0.8327461772768672);
}
