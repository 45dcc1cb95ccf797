#pragma once

#include <cstdint>
#include <string>

#include "cvdv/bintree.hpp"
#include "cvdv/hardy.hpp"
#include "cvdv/mcsim.hpp"
#include "cvdv/spectrum.hpp"

namespace cvdv {

// {lambda, N, coeffs, tail_mass}; lambda is null when the spectrum does not
// come from a squeezed state.
std::string spectrum_json(const SchmidtSpectrum& s);
SchmidtSpectrum spectrum_from_json(const std::string& text);

// Array of {label, probability, kraus_diag}. Parsing recomputes dim and the
// unresolved tail from the entries; the geometric ratio is not representable
// in this form and resets to unknown.
std::string outcome_set_json(const OutcomeSet& set);
OutcomeSet outcome_set_from_json(const std::string& text);

// One row per slab: its lower boundary and the two column colours, then a
// closing row for the chart top. Metadata lines carry regime and masses.
std::string chart_csv(const ChartSegments& chart);

// Graphviz rendering: internal nodes and edges carry the absolute
// probability mass of the outcome group they select; leaves carry the
// outcome label and its probability.
std::string tree_dot(const MeasurementTree& tree);

// Full-fidelity tree dump: variant, the complete outcome set, and every
// node with both branch diagonals. Round-trips through tree_from_json.
std::string tree_json(const MeasurementTree& tree);
MeasurementTree tree_from_json(const std::string& text);

// One JSON line (no trailing newline): {seed, path, outcome, rounds}.
std::string transcript_line(std::uint64_t seed, const RunRecord& rec,
                            const OutcomeSet& set);

}  // namespace cvdv
