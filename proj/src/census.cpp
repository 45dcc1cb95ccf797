#include "cvdv/census.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cvdv/errors.hpp"
#include "cvdv/hardy.hpp"
#include "cvdv/spectrum.hpp"

namespace cvdv {

namespace {

struct PostSelection {
    double prob = 0.0;      // weight of the single-photon-per-party subspace
    double m[2][2] = {};    // unnormalized two-qubit amplitudes
};

// Enumerates the truncated |TMSV> x |TMSV> tensor over four modes and keeps
// the events where each party counts exactly one photon across its two
// modes. Qubit index 0 means the photon sat in the first (late) mode.
PostSelection spdc_postselect(double lambda, int n) {
    if (!(lambda >= 0.0) || lambda >= 1.0)
        throw domain_error("lambda must lie in [0, 1)");
    if (n < 2) throw domain_error("need at least two Fock levels per mode");
    std::vector<double> amp(n);
    double v = std::sqrt(1.0 - lambda * lambda);
    for (int k = 0; k < n; ++k) {
        amp[k] = v;
        v *= lambda;
    }
    PostSelection out;
    for (int na1 = 0; na1 < n; ++na1)
        for (int nb1 = 0; nb1 < n; ++nb1)
            for (int na2 = 0; na2 < n; ++na2)
                for (int nb2 = 0; nb2 < n; ++nb2) {
                    double t = (na1 == nb1 ? amp[na1] : 0.0) *
                               (na2 == nb2 ? amp[na2] : 0.0);
                    if (t == 0.0) continue;
                    if (na1 + na2 != 1 || nb1 + nb2 != 1) continue;
                    out.prob += t * t;
                    out.m[na1 == 1 ? 0 : 1][nb1 == 1 ? 0 : 1] += t;
                }
    return out;
}

}  // namespace

double povm_count_real(PovmScheme scheme, int n) {
    if (n < 1) throw domain_error("coefficient count must be positive");
    switch (scheme) {
        case PovmScheme::Nielsen:
            return std::ldexp(1.0, n - 1);
        case PovmScheme::Birkhoff:
            return 0.5 * (n - 1.0) * (n - 1.0) + 2.0;
        case PovmScheme::Areas:
            return n;
    }
    throw domain_error("unknown scheme");
}

long long povm_count(PovmScheme scheme, int n) {
    if (scheme == PovmScheme::Nielsen) {
        if (n < 1) throw domain_error("coefficient count must be positive");
        if (n > 63) throw domain_error("count exceeds 64-bit range");
        return 1LL << (n - 1);
    }
    return static_cast<long long>(povm_count_real(scheme, n));
}

int areas_count_observed(double lambda, int n) {
    if (!(lambda > 0.0) || lambda >= 1.0)
        throw domain_error("lambda must lie in (0, 1)");
    if (n < 1) throw domain_error("coefficient count must be positive");
    auto spectrum = tmsv_spectrum(TmsvParams::from_lambda(lambda), n);
    const double kept = 1.0 - spectrum.tail_mass;
    for (double& a : spectrum.coeffs) a /= kept;
    ChartSegments chart = build_chart_for_spectrum(spectrum.coeffs, 0.0);
    int count = 0;
    for (const auto& seg : chart.segments)
        if (seg.kind == SegmentKind::Bell) ++count;
    if (chart.fail_probability > 0.0) ++count;
    return count;
}

double spdc_rate(double lambda, int n) {
    // Two squeezed pairs are consumed per heralding attempt.
    return spdc_postselect(lambda, n).prob / 2.0;
}

std::array<double, 2> spdc_schmidt_coefficients(double lambda, int n) {
    PostSelection ps = spdc_postselect(lambda, n);
    if (ps.prob <= 0.0)
        throw domain_error("post-selection never succeeds at this lambda");
    // Squared singular values of the normalized 2x2 amplitude matrix.
    double t = 0.0;
    for (auto& row : ps.m)
        for (double e : row) t += e * e;
    double det = ps.m[0][0] * ps.m[1][1] - ps.m[0][1] * ps.m[1][0];
    double disc = std::sqrt(std::max(0.0, t * t - 4.0 * det * det));
    return {(t + disc) / (2.0 * t), (t - disc) / (2.0 * t)};
}

double spdc_rate_vs_optimal(double lambda, int n) {
    if (!(lambda > 0.0) || lambda >= 1.0)
        throw domain_error("lambda must lie in (0, 1)");
    return spdc_rate(lambda, n) / std::min(1.0, 2.0 * lambda * lambda);
}

}  // namespace cvdv
