#pragma once

#include <optional>
#include <vector>

namespace cvdv {

// Squeezing parameters of a two-mode squeezed vacuum. lambda = tanh(r) in [0,1).
struct TmsvParams {
    double lambda = 0.0;

    static TmsvParams from_lambda(double lambda);
    static TmsvParams from_r(double r);
    static TmsvParams from_db(double db);

    double r() const;
    double squeezing_db() const;
};

// Descending squared Schmidt coefficients plus the probability mass cut off by
// truncation. For geometric (TMSV) spectra `lambda` is recorded so tail bounds
// can be evaluated in closed form.
struct SchmidtSpectrum {
    std::vector<double> coeffs;
    double tail_mass = 0.0;
    std::optional<double> lambda;

    int size() const { return static_cast<int>(coeffs.size()); }
    // Sum of coeffs[l..] plus tail_mass, accumulated smallest-first.
    double suffix_sum(int l) const;
    void validate() const;
};

struct EntropyResult {
    double ebits = 0.0;
    double truncation_error_bound = 0.0;
};

// Smallest N with lambda^(2N) < tail_tolerance.
int default_truncation(double lambda, double tail_tolerance = 1e-12);

// First N squared Schmidt coefficients (1-lambda^2)*lambda^(2n) with
// tail_mass = lambda^(2N).
SchmidtSpectrum tmsv_spectrum(const TmsvParams& params, int truncation);

// Entanglement entropy -sum a_n log2 a_n over the stored coefficients, with an
// upper bound on the contribution lost to truncation.
EntropyResult entanglement_entropy(const SchmidtSpectrum& s);

// Untruncated entropy of the squeezed state in closed form:
// -log2(1-x) - x/(1-x) log2 x with x = lambda^2.
double tmsv_entropy(double lambda);

double db_to_lambda(double db);
double lambda_to_db(double lambda);

}  // namespace cvdv
