#include "cvdv/spectrum.hpp"

#include <cmath>
#include <limits>

#include "cvdv/errors.hpp"

namespace cvdv {

namespace {
constexpr double kDbPerUnitR = 8.685889638065035;  // 20 / ln(10)

void check_lambda(double lambda) {
    if (!(lambda >= 0.0) || lambda >= 1.0)
        throw domain_error("lambda must lie in [0, 1)");
}
}  // namespace

TmsvParams TmsvParams::from_lambda(double lambda) {
    check_lambda(lambda);
    return TmsvParams{lambda};
}

TmsvParams TmsvParams::from_r(double r) {
    if (!(r >= 0.0)) throw domain_error("squeezing r must be non-negative");
    return TmsvParams{std::tanh(r)};
}

TmsvParams TmsvParams::from_db(double db) {
    return TmsvParams{db_to_lambda(db)};
}

double TmsvParams::r() const { return std::atanh(lambda); }

double TmsvParams::squeezing_db() const { return lambda_to_db(lambda); }

double SchmidtSpectrum::suffix_sum(int l) const {
    double s = tail_mass;
    for (int n = size() - 1; n >= l; --n) s += coeffs[n];
    return s;
}

void SchmidtSpectrum::validate() const {
    if (coeffs.empty()) throw domain_error("spectrum has no coefficients");
    if (tail_mass < 0.0) throw domain_error("negative tail mass");
    double prev = std::numeric_limits<double>::infinity();
    for (double a : coeffs) {
        if (!(a >= 0.0)) throw domain_error("negative Schmidt coefficient");
        if (a > prev + 1e-15) throw domain_error("coefficients not descending");
        prev = a;
    }
    if (std::abs(suffix_sum(0) - 1.0) > 1e-9)
        throw domain_error("spectrum does not sum to 1");
}

int default_truncation(double lambda, double tail_tolerance) {
    check_lambda(lambda);
    if (!(tail_tolerance > 0.0) || tail_tolerance >= 1.0)
        throw domain_error("tail tolerance must lie in (0, 1)");
    if (lambda == 0.0) return 1;
    double n = std::log(tail_tolerance) / (2.0 * std::log(lambda));
    return std::max(2, static_cast<int>(std::ceil(n)));
}

SchmidtSpectrum tmsv_spectrum(const TmsvParams& params, int truncation) {
    check_lambda(params.lambda);
    if (truncation < 1) throw domain_error("truncation must be at least 1");
    const double x = params.lambda * params.lambda;
    SchmidtSpectrum s;
    s.lambda = params.lambda;
    s.coeffs.resize(truncation);
    double p = 1.0 - x;
    for (int n = 0; n < truncation; ++n) {
        s.coeffs[n] = p;
        p *= x;
    }
    s.tail_mass = std::pow(x, truncation);
    return s;
}

EntropyResult entanglement_entropy(const SchmidtSpectrum& s) {
    s.validate();
    EntropyResult r;
    for (double a : s.coeffs)
        if (a > 0.0) r.ebits -= a * std::log2(a);
    if (s.tail_mass <= 0.0) {
        r.truncation_error_bound = 0.0;
    } else if (s.lambda) {
        // Entropy carried by the geometric tail, in closed form. With
        // x = lambda^2 and t = x^N: -sum_{n>=N} a_n log2 a_n
        //   = -t log2(1-x) - log2(x) * x^N (N + x/(1-x)).
        const double x = *s.lambda * *s.lambda;
        const double t = s.tail_mass;
        const double N = s.size();
        r.truncation_error_bound =
            -t * std::log2(1.0 - x) - std::log2(x) * t * (N + x / (1.0 - x));
    } else {
        // No structure to bound the tail with.
        r.truncation_error_bound = std::numeric_limits<double>::infinity();
    }
    return r;
}

double tmsv_entropy(double lambda) {
    check_lambda(lambda);
    const double x = lambda * lambda;
    if (x == 0.0) return 0.0;
    return -std::log2(1.0 - x) - x / (1.0 - x) * std::log2(x);
}

double db_to_lambda(double db) {
    if (!(db >= 0.0)) throw domain_error("squeezing dB must be non-negative");
    return std::tanh(db / kDbPerUnitR);
}

double lambda_to_db(double lambda) {
    check_lambda(lambda);
    return kDbPerUnitR * std::atanh(lambda);
}

}  // namespace cvdv
