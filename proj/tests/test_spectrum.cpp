#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "cvdv/errors.hpp"
#include "cvdv/spectrum.hpp"
#include "doctest.h"

using namespace cvdv;

TEST_CASE("squeezing unit conversions") {
    // 3 dB of squeezing is r = 3 ln(10) / 20.
    CHECK(TmsvParams::from_db(3.0).r() == doctest::Approx(0.3 * std::log(10.0) / 2.0).epsilon(1e-14));
    CHECK(lambda_to_db(std::sqrt(0.5)) == doctest::Approx(7.65551370675726).epsilon(1e-13));
    CHECK(db_to_lambda(0.0) == 0.0);
    CHECK(TmsvParams::from_r(0.0).lambda == 0.0);

    for (double db : {0.1, 1.0, 5.0, 7.65551370675726, 12.0}) {
        CHECK(lambda_to_db(db_to_lambda(db)) == doctest::Approx(db).epsilon(1e-12));
    }
    for (double lam : {0.1, 0.5, 0.8, 0.99}) {
        CHECK(TmsvParams::from_r(TmsvParams::from_lambda(lam).r()).lambda ==
              doctest::Approx(lam).epsilon(1e-14));
    }

    CHECK_THROWS_AS(TmsvParams::from_lambda(1.0), domain_error);
    CHECK_THROWS_AS(TmsvParams::from_lambda(-0.1), domain_error);
    CHECK_THROWS_AS(TmsvParams::from_r(-1.0), domain_error);
    CHECK_THROWS_AS(db_to_lambda(-0.5), domain_error);
    CHECK_THROWS_AS(lambda_to_db(1.0), domain_error);
}

TEST_CASE("spectrum coefficients are geometric") {
    const double lam = 0.8, x = lam * lam;
    auto s = tmsv_spectrum(TmsvParams::from_lambda(lam), 10);
    REQUIRE(s.size() == 10);
    for (int n = 0; n < 10; ++n) {
        CHECK(s.coeffs[n] == doctest::Approx((1.0 - x) * std::pow(x, n)).epsilon(1e-14));
    }
    CHECK(s.tail_mass == doctest::Approx(std::pow(x, 10)).epsilon(1e-14));
    CHECK(s.suffix_sum(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.suffix_sum(3) == doctest::Approx(std::pow(x, 3)).epsilon(1e-13));
    CHECK(*s.lambda == lam);
    s.validate();

    // Zero squeezing leaves the vacuum product state.
    auto v = tmsv_spectrum(TmsvParams::from_lambda(0.0), 3);
    CHECK(v.coeffs[0] == 1.0);
    CHECK(v.coeffs[1] == 0.0);
    CHECK(v.tail_mass == 0.0);

    CHECK_THROWS_AS(tmsv_spectrum(TmsvParams::from_lambda(0.5), 0), domain_error);
}

TEST_CASE("default truncation brings the tail below tolerance") {
    CHECK(default_truncation(0.8) == 62);
    CHECK(default_truncation(0.5) == 20);
    CHECK(default_truncation(0.0) == 1);
    for (double lam : {0.3, 0.5, 0.8, 0.95}) {
        int n = default_truncation(lam, 1e-10);
        CHECK(std::pow(lam, 2 * n) < 1e-10);
        if (n > 2) CHECK(std::pow(lam, 2 * (n - 1)) >= 1e-10);
    }
    CHECK_THROWS_AS(default_truncation(0.5, 0.0), domain_error);
    CHECK_THROWS_AS(default_truncation(0.5, 1.5), domain_error);
}

TEST_CASE("spectrum validation rejects malformed input") {
    SchmidtSpectrum s;
    CHECK_THROWS_AS(s.validate(), domain_error);  // empty

    s.coeffs = {0.4, 0.6};  // ascending
    CHECK_THROWS_AS(s.validate(), domain_error);

    s.coeffs = {0.6, 0.4};
    s.tail_mass = -0.1;
    CHECK_THROWS_AS(s.validate(), domain_error);

    s.tail_mass = 0.0;
    s.coeffs = {0.6, 0.3};  // sums to 0.9
    CHECK_THROWS_AS(s.validate(), domain_error);
}

TEST_CASE("closed-form entropy") {
    // Two ebits exactly at lambda = 1/sqrt(2).
    CHECK(tmsv_entropy(std::sqrt(0.5)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(tmsv_entropy(0.8) == doctest::Approx(2.61856441459859).epsilon(1e-13));
    CHECK(tmsv_entropy(0.5) == doctest::Approx(1.0817041659455104).epsilon(1e-13));
    CHECK(tmsv_entropy(0.0) == 0.0);

    // Monotone increasing in the squeezing strength.
    double prev = -1.0;
    for (double lam = 0.0; lam < 0.99; lam += 0.07) {
        double s = tmsv_entropy(lam);
        CHECK(s > prev);
        prev = s;
    }
}

TEST_CASE("truncated entropy plus tail bound brackets the closed form") {
    for (double lam : {0.3, 0.5, 0.8, 0.9}) {
        auto s = tmsv_spectrum(TmsvParams::from_lambda(lam), default_truncation(lam));
        auto e = entanglement_entropy(s);
        double exact = tmsv_entropy(lam);
        CHECK(e.ebits <= exact + 1e-12);
        CHECK(e.ebits + e.truncation_error_bound >= exact - 1e-12);
        CHECK(e.truncation_error_bound < 1e-9);
    }

    // Without the geometric ratio the tail cannot be bounded.
    SchmidtSpectrum raw;
    raw.coeffs = {0.6, 0.3};
    raw.tail_mass = 0.1;
    auto e = entanglement_entropy(raw);
    CHECK(std::isinf(e.truncation_error_bound));
    CHECK(e.ebits == doctest::Approx(-0.6 * std::log2(0.6) - 0.3 * std::log2(0.3)));
}
