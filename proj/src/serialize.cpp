#include "cvdv/serialize.hpp"

#include <algorithm>
#include <cstdio>

#include "cvdv/errors.hpp"
#include "json.hpp"

namespace cvdv {

namespace {

using json = nlohmann::ordered_json;

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json set_to_json(const OutcomeSet& set) {
    json arr = json::array();
    for (const Outcome& o : set.outcomes)
        arr.push_back({{"label", o.label.str()},
                       {"probability", o.probability},
                       {"kraus_diag", o.kraus.diag}});
    return arr;
}

OutcomeSet set_from_json(const json& arr) {
    if (!arr.is_array()) throw domain_error("outcome set must be an array");
    OutcomeSet set;
    for (const json& e : arr) {
        Outcome o;
        o.label = OutcomeLabel::parse(e.at("label").get<std::string>());
        o.probability = e.at("probability").get<double>();
        o.kraus.diag = e.at("kraus_diag").get<std::vector<double>>();
        set.outcomes.push_back(std::move(o));
    }
    if (set.outcomes.empty()) throw domain_error("outcome set is empty");
    set.dim = set.outcomes.front().kraus.dim();
    for (const Outcome& o : set.outcomes)
        if (o.kraus.dim() != set.dim)
            throw domain_error("outcome filter dimension mismatch");
    set.tail_mass = std::max(0.0, 1.0 - set.total_probability());
    return set;
}

}  // namespace

std::string spectrum_json(const SchmidtSpectrum& s) {
    json j;
    j["lambda"] = s.lambda ? json(*s.lambda) : json(nullptr);
    j["N"] = s.size();
    j["coeffs"] = s.coeffs;
    j["tail_mass"] = s.tail_mass;
    return j.dump();
}

SchmidtSpectrum spectrum_from_json(const std::string& text) {
    json j = json::parse(text);
    SchmidtSpectrum s;
    if (!j.at("lambda").is_null()) s.lambda = j["lambda"].get<double>();
    s.coeffs = j.at("coeffs").get<std::vector<double>>();
    s.tail_mass = j.at("tail_mass").get<double>();
    if (j.at("N").get<int>() != s.size())
        throw domain_error("spectrum length disagrees with N");
    s.validate();
    return s;
}

std::string outcome_set_json(const OutcomeSet& set) {
    return set_to_json(set).dump();
}

OutcomeSet outcome_set_from_json(const std::string& text) {
    return set_from_json(json::parse(text));
}

std::string chart_csv(const ChartSegments& chart) {
    std::string out;
    out += "# regime=";
    out += chart.regime == Regime::Deterministic ? "deterministic"
                                                 : "probabilistic";
    out += "\n# fail_probability=" + fmt12(chart.fail_probability);
    out += "\n# tail_mass=" + fmt12(chart.tail_mass);
    out += "\nboundary,colour_left,colour_right\n";
    for (const ChartSegment& seg : chart.segments) {
        out += fmt12(seg.lo);
        out += ',' + std::to_string(seg.first_colour);
        out += ',' + std::to_string(seg.second_colour);
        out += '\n';
    }
    if (!chart.segments.empty()) {
        out += fmt12(chart.segments.back().hi);
        out += ",-1,-1\n";
    }
    return out;
}

std::string tree_dot(const MeasurementTree& tree) {
    std::vector<double> pcum(tree.set.size() + 1, 0.0);
    for (int m = 0; m < tree.set.size(); ++m)
        pcum[m + 1] = pcum[m] + tree.set.outcomes[m].probability;
    auto mass = [&](const TreeNode& n) { return pcum[n.last] - pcum[n.first]; };

    std::string out = "digraph measurement_tree {\n  node [shape=box];\n";
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        const TreeNode& n = tree.nodes[i];
        out += "  n" + std::to_string(i) + " [label=\"";
        if (n.is_leaf()) {
            const Outcome& o = tree.set.outcomes[n.outcome];
            out += o.label.str() + "\\nP=" + fmt12(o.probability);
        } else {
            out += "P=" + fmt12(mass(n));
        }
        out += "\"];\n";
    }
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        const TreeNode& n = tree.nodes[i];
        if (n.is_leaf()) continue;
        out += "  n" + std::to_string(i) + " -> n" + std::to_string(n.left) +
               " [label=\"" + fmt12(mass(tree.nodes[n.left])) + "\"];\n";
        out += "  n" + std::to_string(i) + " -> n" + std::to_string(n.right) +
               " [label=\"" + fmt12(mass(tree.nodes[n.right])) + "\"];\n";
    }
    out += "}\n";
    return out;
}

std::string tree_json(const MeasurementTree& tree) {
    json j;
    j["variant"] = tree.variant == TreeVariant::Oopr ? "oopr" : "near-even";
    j["set"] = {{"dim", tree.set.dim},
                {"tail_mass", tree.set.tail_mass},
                {"geometric_ratio", tree.set.geometric_ratio},
                {"outcomes", set_to_json(tree.set)}};
    json nodes = json::array();
    for (const TreeNode& n : tree.nodes) {
        json e = {{"first", n.first}, {"last", n.last}, {"depth", n.depth}};
        if (n.is_leaf()) {
            e["outcome"] = n.outcome;
        } else {
            e["left"] = n.left;
            e["right"] = n.right;
            e["b0"] = n.b0;
            e["b1"] = n.b1;
        }
        nodes.push_back(std::move(e));
    }
    j["nodes"] = std::move(nodes);
    return j.dump();
}

MeasurementTree tree_from_json(const std::string& text) {
    json j = json::parse(text);
    MeasurementTree tree;
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "oopr")
        tree.variant = TreeVariant::Oopr;
    else if (variant == "near-even")
        tree.variant = TreeVariant::NearEven;
    else
        throw domain_error("unknown tree variant: " + variant);
    const json& s = j.at("set");
    tree.set = set_from_json(s.at("outcomes"));
    if (s.at("dim").get<int>() != tree.set.dim)
        throw domain_error("set dimension disagrees with its filters");
    tree.set.tail_mass = s.at("tail_mass").get<double>();
    tree.set.geometric_ratio = s.at("geometric_ratio").get<double>();
    for (const json& e : j.at("nodes")) {
        TreeNode n;
        n.first = e.at("first").get<int>();
        n.last = e.at("last").get<int>();
        n.depth = e.at("depth").get<int>();
        if (e.contains("outcome")) {
            n.outcome = e.at("outcome").get<int>();
        } else {
            n.left = e.at("left").get<int>();
            n.right = e.at("right").get<int>();
            n.b0 = e.at("b0").get<std::vector<double>>();
            n.b1 = e.at("b1").get<std::vector<double>>();
        }
        tree.nodes.push_back(std::move(n));
    }
    if (tree.nodes.empty()) throw domain_error("tree has no nodes");
    return tree;
}

std::string transcript_line(std::uint64_t seed, const RunRecord& rec,
                            const OutcomeSet& set) {
    json j;
    j["seed"] = seed;
    json path = json::array();
    for (const RoundRecord& r : rec.path) path.push_back(r.branch);
    j["path"] = std::move(path);
    j["outcome"] = set.outcomes.at(rec.outcome).label.str();
    j["rounds"] = rec.rounds;
    return j.dump();
}

}  // namespace cvdv
