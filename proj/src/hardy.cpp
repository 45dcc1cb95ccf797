#include "cvdv/hardy.hpp"

#include <algorithm>
#include <cmath>

#include "cvdv/errors.hpp"
#include "cvdv/spectrum.hpp"

namespace cvdv {

namespace {

constexpr double kRegimeTol = 1e-12;       // threshold-classification slack
constexpr double kCoincidenceTol = 1e-14;  // boundaries closer than this merge

// Index of the band containing mid, given ascending band tops.
int band_of(const std::vector<double>& tops, double mid) {
    return static_cast<int>(std::upper_bound(tops.begin(), tops.end(), mid) -
                            tops.begin());
}

}  // namespace

ChartSegments build_chart_for_spectrum(const std::vector<double>& coeffs,
                                       double tail_mass) {
    SchmidtSpectrum probe{coeffs, tail_mass, std::nullopt};
    probe.validate();
    const int N = static_cast<int>(coeffs.size());
    const double a0 = coeffs[0];
    ChartSegments chart;

    if (a0 > 0.5 + kRegimeTol) {
        chart.regime = Regime::Probabilistic;
        // First column is initial column 0 alone; the rest stack whole into
        // the second column with tops y_l = sum_{j=1..l} a_j.
        std::vector<double> ys(1, 0.0);
        for (int l = 1; l < N; ++l) ys.push_back(ys.back() + coeffs[l]);
        chart.boundaries.push_back(0.0);
        for (int l = 1; l < N; ++l) {
            if (ys[l] - ys[l - 1] <= kCoincidenceTol) continue;
            chart.segments.push_back({ys[l - 1], ys[l], 0, l,
                                      SegmentKind::Bell, 2.0 * coeffs[l]});
            chart.boundaries.push_back(ys[l]);
        }
        const double second_height = 1.0 - a0;
        if (second_height - ys.back() > kCoincidenceTol) {
            chart.segments.push_back({ys.back(), second_height, 0, -1,
                                      SegmentKind::Tail, 2.0 * tail_mass});
            chart.boundaries.push_back(second_height);
        }
        chart.tail_mass = 2.0 * tail_mass;
        chart.fail_probability = 2.0 * a0 - 1.0;
        chart.segments.push_back({second_height, a0, 0, -1, SegmentKind::Fail,
                                  chart.fail_probability});
        chart.boundaries.push_back(a0);
        return chart;
    }

    chart.regime = Regime::Deterministic;
    std::vector<double> cums(N);
    double c = 0.0;
    for (int n = 0; n < N; ++n) cums[n] = (c += coeffs[n]);
    int M = 0;
    while (M < N && cums[M] <= 0.5) ++M;
    if (M == N)
        throw insufficient_truncation(
            "truncation resolves less than half the state", N + 1);
    ++M;  // M = number of initial columns feeding the first transformed column

    // First column: columns 0..M-2 whole, column M-1 topped up to exactly 1/2.
    std::vector<double> first_tops(cums.begin(), cums.begin() + (M - 1));
    first_tops.push_back(0.5);
    // Second column: remainder of column M-1, then columns M..N-1 whole.
    std::vector<double> second_tops;
    for (int n = M - 1; n < N; ++n) second_tops.push_back(cums[n] - 0.5);
    const double top_resolved = second_tops.back();

    std::vector<double> merged;
    for (int n = 0; n + 1 < M; ++n) merged.push_back(cums[n]);
    for (double b : second_tops) merged.push_back(b);
    merged.push_back(0.5);
    std::sort(merged.begin(), merged.end());

    chart.boundaries.push_back(0.0);
    for (double b : merged) {
        double lo = chart.boundaries.back();
        if (b - lo <= kCoincidenceTol) continue;
        chart.boundaries.push_back(b);
        double mid = 0.5 * (lo + b);
        ChartSegment seg;
        seg.lo = lo;
        seg.hi = b;
        seg.first_colour = band_of(first_tops, mid);
        if (mid < top_resolved) {
            int i = band_of(second_tops, mid);
            seg.second_colour = M - 1 + i;
            seg.kind = SegmentKind::Bell;
            // Exact column height when the slab spans the whole band;
            // subtracted widths lose precision once bands get narrow.
            // Band 0 holds only the part of colour M-1 left over after the
            // first column was topped up, so its exact mass is its top.
            double band_lo = i == 0 ? 0.0 : second_tops[i - 1];
            bool full = lo <= band_lo + kCoincidenceTol &&
                        b >= second_tops[i] - kCoincidenceTol;
            double exact = i == 0 ? 2.0 * second_tops[0]
                                  : 2.0 * coeffs[seg.second_colour];
            seg.probability = full ? exact : 2.0 * (b - lo);
        } else {
            seg.second_colour = -1;
            seg.kind = SegmentKind::Tail;
            seg.probability = 2.0 * (b - lo);
        }
        chart.segments.push_back(seg);
    }
    chart.tail_mass = 2.0 * std::max(0.0, 0.5 - top_resolved);
    chart.fail_probability = 0.0;
    return chart;
}

ChartSegments build_chart(double lambda, int truncation, double tail_tolerance) {
    auto spectrum = tmsv_spectrum(TmsvParams::from_lambda(lambda), truncation);
    if (spectrum.tail_mass >= tail_tolerance)
        throw insufficient_truncation(
            "tail mass " + std::to_string(spectrum.tail_mass) +
                " reaches the requested tolerance",
            default_truncation(lambda, tail_tolerance));
    return build_chart_for_spectrum(spectrum.coeffs, spectrum.tail_mass);
}

KrausDiagonal kraus_for_outcome(double lambda, const OutcomeLabel& label,
                                double probability, int dim) {
    if (!(lambda >= 0.0) || lambda >= 1.0)
        throw domain_error("lambda must lie in [0, 1)");
    if (!(probability >= 0.0) || probability > 1.0 + 1e-12)
        throw domain_error("outcome probability outside [0, 1]");
    if (dim < 1) throw domain_error("kraus dimension must be positive");

    KrausDiagonal k;
    k.diag.assign(dim, 0.0);
    if (probability == 0.0) return k;
    const double log_lam = std::log(lambda);             // -inf at lambda = 0
    const double log_a0 = std::log1p(-lambda * lambda);  // log(1 - lambda^2)

    auto entry = [&](double log_num, int fock) {
        // sqrt(num / a_fock) with a_fock = (1-lambda^2) lambda^(2 fock);
        // fock = 0 must not touch log_lam, which is -inf at lambda = 0.
        double e = 0.5 * (log_num - log_a0);
        if (fock > 0) e -= fock * log_lam;
        double v = std::exp(e);
        if (v > 1.0 + 1e-9)
            throw domain_error("kraus entry exceeds 1; outcome set malformed");
        return std::min(v, 1.0);
    };

    switch (label.kind) {
        case OutcomeLabel::Kind::Fail:
            k.diag[0] = entry(std::log(probability), 0);
            return k;
        case OutcomeLabel::Kind::Bell: {
            if (label.m >= dim)
                throw domain_error("Bell index outside the truncated subspace");
            if (lambda == 0.0)
                throw domain_error("Bell outcomes require lambda > 0");
            double log_half = std::log(probability / 2.0);
            k.diag[label.n] = entry(log_half, label.n);
            k.diag[label.m] = entry(log_half, label.m);
            return k;
        }
        case OutcomeLabel::Kind::Qudit:
            throw domain_error("qudit labels do not belong to this scheme");
    }
    return k;
}

OutcomeSet qubit_outcomes(double lambda, int truncation, double tail_tolerance) {
    ChartSegments chart = build_chart(lambda, truncation, tail_tolerance);
    OutcomeSet set;
    set.dim = truncation;
    set.geometric_ratio = lambda * lambda;
    set.tail_mass = chart.tail_mass;
    for (const ChartSegment& seg : chart.segments) {
        if (seg.kind == SegmentKind::Bell) {
            auto label = OutcomeLabel::bell(seg.first_colour, seg.second_colour);
            set.outcomes.push_back(
                {label, seg.probability,
                 kraus_for_outcome(lambda, label, seg.probability, truncation)});
        }
    }
    if (chart.fail_probability > 0.0) {
        auto label = OutcomeLabel::fail();
        set.outcomes.push_back(
            {label, chart.fail_probability,
             kraus_for_outcome(lambda, label, chart.fail_probability,
                               truncation)});
    }
    set.sort_descending();
    return set;
}

}  // namespace cvdv
