#pragma once

#include <vector>

#include "cvdv/povm.hpp"

namespace cvdv {

enum class Regime { Deterministic, Probabilistic };

enum class SegmentKind { Bell, Fail, Tail };

// Horizontal slab of the two-column chart. first_colour is the initial
// Schmidt index painting the first transformed column at this height;
// second_colour the one painting the second, or -1 where the truncation does
// not resolve it (kind Tail) or the slab is unpaired (kind Fail).
// probability is the outcome probability carried by the slab: twice the slab
// width for paired slabs, the bare width for the unpaired Fail slab. Slabs
// spanning a whole initial column use that column's coefficient directly so
// deep, narrow slabs stay exact.
struct ChartSegment {
    double lo = 0.0;
    double hi = 0.0;
    int first_colour = 0;
    int second_colour = -1;
    SegmentKind kind = SegmentKind::Bell;
    double probability = 0.0;

    double width() const { return hi - lo; }
};

struct ChartSegments {
    Regime regime = Regime::Probabilistic;
    std::vector<double> boundaries;  // ascending, from 0 to the chart top
    std::vector<ChartSegment> segments;
    double fail_probability = 0.0;
    double tail_mass = 0.0;  // outcome probability not resolved at this truncation
};

// Chart for an arbitrary descending spectrum summing (with tail) to 1.
// Colours >= coeffs.size() are unknown and produce Tail segments.
ChartSegments build_chart_for_spectrum(const std::vector<double>& coeffs,
                                       double tail_mass);

// Chart for the TMSV at the given truncation. Rejects truncations whose tail
// lambda^(2N) reaches tail_tolerance.
ChartSegments build_chart(double lambda, int truncation,
                          double tail_tolerance = 1e-3);

// Kraus diagonal (length dim) sending the TMSV branch to the labelled state
// with the given probability: entry sqrt(P/2)/sqrt(a_k) at k in {n,m} for
// Bell(n,m), sqrt(P)/sqrt(a_0) at 0 for Fail. Evaluated in log space.
KrausDiagonal kraus_for_outcome(double lambda, const OutcomeLabel& label,
                                double probability, int dim);

// Complete measurement converting the TMSV into Bell pairs: one outcome per
// resolved chart segment plus Fail in the probabilistic regime.
OutcomeSet qubit_outcomes(double lambda, int truncation,
                          double tail_tolerance = 1e-3);

}  // namespace cvdv
