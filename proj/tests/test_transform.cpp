#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "cvdv/errors.hpp"
#include "cvdv/transform.hpp"
#include "doctest.h"

using namespace cvdv;

namespace {

SchmidtSpectrum tmsv(double lam) {
    return tmsv_spectrum(TmsvParams::from_lambda(lam), default_truncation(lam));
}

}  // namespace

TEST_CASE("maximally entangled targets are flat") {
    auto t = TargetSpectrum::maximally_entangled(4);
    REQUIRE(t.size() == 4);
    for (double c : t.coeffs) CHECK(c == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(t.suffix_sum(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t.suffix_sum(3) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(TargetSpectrum::maximally_entangled(0), domain_error);
}

TEST_CASE("majorization flips at lambda = 1/sqrt(2)") {
    auto bell = TargetSpectrum::maximally_entangled(2);
    const double thr = std::sqrt(0.5);

    CHECK(majorizes(tmsv(0.8), bell));
    CHECK(majorizes(tmsv(0.9), bell));
    CHECK_FALSE(majorizes(tmsv(0.5), bell));
    CHECK_FALSE(majorizes(tmsv(0.3), bell));

    // The flip sits within 1e-9 of the threshold.
    CHECK(majorizes(tmsv(thr + 1e-9), bell));
    CHECK_FALSE(majorizes(tmsv(thr - 1e-9), bell));

    // Any state trivially reaches a d = 1 target.
    auto single = TargetSpectrum::maximally_entangled(1);
    CHECK(majorizes(tmsv(0.1), single));
    CHECK(vidal_pmax(tmsv(0.1), single) == doctest::Approx(1.0));
}

TEST_CASE("conversion probability for the Bell target") {
    auto bell = TargetSpectrum::maximally_entangled(2);
    for (double lam : {0.1, 0.3, 0.5, 0.6, 0.7, 0.7071, 0.75, 0.8, 0.9}) {
        double expect = std::min(1.0, 2.0 * lam * lam);
        CHECK(pmax_qubit(lam) == doctest::Approx(expect).epsilon(1e-14));
        CHECK(vidal_pmax(tmsv(lam), bell) == doctest::Approx(expect).epsilon(1e-10));
    }
    CHECK(pmax_qubit(0.0) == 0.0);
    // Deterministic above threshold, never above 1.
    CHECK(pmax_qubit(0.8) == 1.0);
    CHECK(vidal_pmax(tmsv(0.9), bell) <= 1.0);
}

TEST_CASE("conversion probability for a qutrit target") {
    // min over l of suffix ratios. At lambda = 0.6 the deepest suffix binds:
    // x^2 / (1/3) = 3 * 0.36^2 = 0.3888, below the l = 1 ratio 0.54.
    auto qutrit = TargetSpectrum::maximally_entangled(3);
    CHECK(vidal_pmax(tmsv(0.6), qutrit) == doctest::Approx(0.3888).epsilon(1e-9));

    // Identical spectra convert with certainty.
    SchmidtSpectrum flat;
    flat.coeffs = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    flat.tail_mass = 0.0;
    CHECK(vidal_pmax(flat, qutrit) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(majorizes(flat, qutrit));
}

TEST_CASE("majorization and unit conversion probability coincide") {
    auto bell = TargetSpectrum::maximally_entangled(2);
    for (int i = 1; i < 20; ++i) {
        double lam = i / 20.0;
        bool det = majorizes(tmsv(lam), bell);
        bool certain = vidal_pmax(tmsv(lam), bell) > 1.0 - 1e-9;
        CHECK(det == certain);
    }
}
