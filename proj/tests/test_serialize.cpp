#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <string>

#include "cvdv/bintree.hpp"
#include "cvdv/errors.hpp"
#include "cvdv/hardy.hpp"
#include "cvdv/mcsim.hpp"
#include "cvdv/serialize.hpp"
#include "doctest.h"

using namespace cvdv;

namespace {

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("outcome labels round-trip as text") {
    for (const auto& label : {OutcomeLabel::fail(), OutcomeLabel::bell(3, 7),
                              OutcomeLabel::qudit(12)}) {
        CHECK(OutcomeLabel::parse(label.str()) == label);
    }
    CHECK(OutcomeLabel::bell(0, 2).str() == "Bell(0,2)");
    CHECK(OutcomeLabel::qudit(5).str() == "Qudit(5)");
    CHECK(OutcomeLabel::fail().str() == "Fail");
    CHECK_THROWS_AS(OutcomeLabel::parse("Banana(1)"), domain_error);
}

TEST_CASE("spectrum JSON round-trip is bit exact") {
    auto s = tmsv_spectrum(TmsvParams::from_lambda(0.8), 62);
    auto back = spectrum_from_json(spectrum_json(s));
    REQUIRE(back.size() == s.size());
    for (int n = 0; n < s.size(); ++n) CHECK(back.coeffs[n] == s.coeffs[n]);
    CHECK(back.tail_mass == s.tail_mass);
    REQUIRE(back.lambda.has_value());
    CHECK(*back.lambda == 0.8);

    // Spectra without a geometric origin keep lambda null.
    SchmidtSpectrum flat;
    flat.coeffs = {0.5, 0.3, 0.2};
    auto flat_back = spectrum_from_json(spectrum_json(flat));
    CHECK_FALSE(flat_back.lambda.has_value());

    auto j = spectrum_json(s);
    auto corrupt = j;
    corrupt.replace(corrupt.find("\"N\":62"), 6, "\"N\":63");
    CHECK_THROWS_AS(spectrum_from_json(corrupt), domain_error);
}

TEST_CASE("outcome set JSON round-trip") {
    auto set = qubit_outcomes(0.8, 62);
    auto back = outcome_set_from_json(outcome_set_json(set));
    REQUIRE(back.size() == set.size());
    CHECK(back.dim == set.dim);
    for (int m = 0; m < set.size(); ++m) {
        CHECK(back.outcomes[m].label == set.outcomes[m].label);
        CHECK(back.outcomes[m].probability == set.outcomes[m].probability);
        REQUIRE(back.outcomes[m].kraus.diag.size() ==
                set.outcomes[m].kraus.diag.size());
        for (size_t k = 0; k < set.outcomes[m].kraus.diag.size(); ++k)
            CHECK(back.outcomes[m].kraus.diag[k] == set.outcomes[m].kraus.diag[k]);
    }
    // The tail is recomputed from the stored probabilities.
    CHECK(back.tail_mass == doctest::Approx(set.tail_mass).epsilon(1e-9));
    // The geometric ratio does not survive this representation.
    CHECK(back.geometric_ratio < 0.0);

    CHECK_THROWS_AS(outcome_set_from_json("{}"), domain_error);
    CHECK_THROWS_AS(outcome_set_from_json("[]"), domain_error);
}

TEST_CASE("chart CSV layout") {
    auto chart = build_chart(0.8, 62);
    auto csv = chart_csv(chart);

    CHECK(contains(csv, "# regime=deterministic\n"));
    CHECK(contains(csv, "# fail_probability=0\n"));
    CHECK(contains(csv, "boundary,colour_left,colour_right\n"));
    // One row per slab, a closing row, three metadata lines, one header.
    CHECK(count_lines(csv) == static_cast<int>(chart.segments.size()) + 5);
    // The first slab pairs colour 0 with colour 1 starting at the bottom.
    CHECK(contains(csv, "\n0,0,1\n"));
    // The closing row carries no colours.
    CHECK(contains(csv, ",-1,-1\n"));

    auto prob = chart_csv(build_chart(0.5, 20));
    CHECK(contains(prob, "# regime=probabilistic\n"));
    CHECK(contains(prob, "# fail_probability=0.5\n"));
}

TEST_CASE("tree DOT rendering") {
    auto tree = build_tree(qubit_outcomes(0.8, 62), TreeVariant::NearEven);
    auto dot = tree_dot(tree);
    CHECK(contains(dot, "digraph measurement_tree {"));
    // Every node is declared; every internal node has two edges.
    int K = tree.set.size();
    CHECK(count_lines(dot) == (2 * K - 1) + 2 * (K - 1) + 3);
    // The root's prefix group carries the two strongest outcomes.
    CHECK(contains(dot, "0.48365568"));
    CHECK(contains(dot, "Bell(0,2)\\nP=0.294912"));
}

TEST_CASE("tree JSON round-trip preserves structure and filters") {
    for (auto variant : {TreeVariant::Oopr, TreeVariant::NearEven}) {
        auto tree = build_tree(qubit_outcomes(0.8, 62), variant);
        auto back = tree_from_json(tree_json(tree));
        CHECK(back.variant == tree.variant);
        CHECK(trees_identical(back, tree));
        CHECK(back.set.geometric_ratio == tree.set.geometric_ratio);
        CHECK(back.set.tail_mass == tree.set.tail_mass);
        REQUIRE(back.nodes.size() == tree.nodes.size());
        for (size_t i = 0; i < tree.nodes.size(); ++i) {
            CHECK(back.nodes[i].b0 == tree.nodes[i].b0);
            CHECK(back.nodes[i].b1 == tree.nodes[i].b1);
        }

        // The parsed tree drives the simulator identically.
        auto a = simulate_tree(tree, 2000, 5);
        auto b = simulate_tree(back, 2000, 5);
        CHECK(a.counts == b.counts);
        CHECK(a.mean_rounds == b.mean_rounds);
    }
    CHECK_THROWS_AS(tree_from_json("{\"variant\":\"spiral\"}"), domain_error);
}

TEST_CASE("transcript lines") {
    auto tree = build_tree(qubit_outcomes(0.8, 62), TreeVariant::NearEven);
    SplitMix64 rng(99);
    auto rec = run_tree_once(tree, rng, true);
    auto line = transcript_line(99, rec, tree.set);

    CHECK(line.front() == '{');
    CHECK(line.back() == '}');
    CHECK(contains(line, "\"seed\":99"));
    CHECK(contains(line, "\"rounds\":" + std::to_string(rec.rounds)));
    CHECK(contains(line, "\"outcome\":\"" +
                             tree.set.outcomes[rec.outcome].label.str() + "\""));
    // One branch digit per round.
    size_t open = line.find("\"path\":[");
    REQUIRE(open != std::string::npos);
    size_t close = line.find(']', open);
    int entries = rec.rounds == 0
                      ? 0
                      : 1 + static_cast<int>(std::count(
                                line.begin() + open, line.begin() + close, ','));
    CHECK(entries == rec.rounds);
}
