#include "cvdv/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvdv/errors.hpp"

namespace cvdv {

namespace {
constexpr double kCompareTol = 1e-12;
}

TargetSpectrum TargetSpectrum::maximally_entangled(int d) {
    if (d < 1) throw domain_error("target dimension must be positive");
    return TargetSpectrum{std::vector<double>(d, 1.0 / d)};
}

double TargetSpectrum::suffix_sum(int l) const {
    double s = 0.0;
    for (int n = size() - 1; n >= l; --n) s += coeffs[n];
    return s;
}

void TargetSpectrum::validate() const {
    if (coeffs.empty()) throw domain_error("target spectrum has no coefficients");
    double prev = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (double b : coeffs) {
        if (!(b >= 0.0)) throw domain_error("negative target coefficient");
        if (b > prev + 1e-15) throw domain_error("target not descending");
        prev = b;
        sum += b;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw domain_error("target does not sum to 1");
}

bool majorizes(const SchmidtSpectrum& initial, const TargetSpectrum& target) {
    initial.validate();
    target.validate();
    const int lmax = std::max(initial.size(), target.size());
    for (int l = 0; l < lmax; ++l) {
        double a = l <= initial.size() ? initial.suffix_sum(l) : initial.tail_mass;
        double b = l <= target.size() ? target.suffix_sum(l) : 0.0;
        if (a < b - kCompareTol) return false;
    }
    return true;
}

double vidal_pmax(const SchmidtSpectrum& initial, const TargetSpectrum& target) {
    initial.validate();
    target.validate();
    double p = std::numeric_limits<double>::infinity();
    for (int l = 0; l < target.size(); ++l) {
        double b = target.suffix_sum(l);
        if (b <= 0.0) continue;
        double a = l <= initial.size() ? initial.suffix_sum(l) : initial.tail_mass;
        p = std::min(p, a / b);
    }
    return std::clamp(p, 0.0, 1.0);
}

double pmax_qubit(double lambda) {
    if (!(lambda >= 0.0) || lambda >= 1.0)
        throw domain_error("lambda must lie in [0, 1)");
    return std::min(1.0, 2.0 * lambda * lambda);
}

}  // namespace cvdv
