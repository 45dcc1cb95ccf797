#include "cvdv/cli.hpp"

#include <cmath>
#include <cstdio>

#include "cvdv/census.hpp"
#include "cvdv/errors.hpp"
#include "cvdv/hardy.hpp"
#include "cvdv/mcsim.hpp"
#include "cvdv/qudit.hpp"
#include "cvdv/serialize.hpp"
#include "cvdv/spectrum.hpp"
#include "cvdv/transform.hpp"

namespace cvdv::cli {

namespace {

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

constexpr double kThresholdDb = 7.65551370675726;  // squeezing at lambda=1/sqrt2

}  // namespace

Grid Grid::parse(const std::string& text) {
    Grid g;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &g.start, &g.stop, &g.step,
                    &tail) != 3)
        throw domain_error("grid must be start:stop:step, got '" + text + "'");
    if (!(g.step > 0.0)) throw domain_error("grid step must be positive");
    if (g.stop < g.start) throw domain_error("grid stop precedes start");
    return g;
}

std::vector<double> Grid::values() const {
    if (!(step > 0.0)) throw domain_error("grid step must be positive");
    const long long n = std::llround((stop - start) / step);
    std::vector<double> out;
    out.reserve(n + 1);
    for (long long i = 0; i <= n; ++i) {
        double v = start + i * step;
        if (v > stop + 0.5 * step) break;
        out.push_back(v);
    }
    return out;
}

std::string Grid::str() const {
    return fmt12(start) + ":" + fmt12(stop) + ":" + fmt12(step);
}

std::string rate_csv(const Grid& grid) {
    std::string out;
    out += "# command=rate\n";
    out += "# db_range=" + grid.str() + "\n";
    out += "# threshold_db=" + fmt12(kThresholdDb) + "\n";
    out += "db,lambda,p_max,spdc_rate\n";
    for (double db : grid.values()) {
        const double lam = db_to_lambda(db);
        out += fmt12(db) + ',' + fmt12(lam) + ',' + fmt12(pmax_qubit(lam)) +
               ',' + fmt12(spdc_rate(lam)) + '\n';
    }
    return out;
}

std::string povm_count_csv(int n_lo, int n_hi, double lambda) {
    if (n_lo < 2 || n_hi > 30 || n_lo > n_hi)
        throw domain_error("coefficient count range must lie within 2..30");
    std::string out;
    out += "# command=povm-count\n";
    out += "# n_range=" + std::to_string(n_lo) + ":" + std::to_string(n_hi) +
           "\n";
    out += "# lambda=" + fmt12(lambda) + "\n";
    out += "N,nielsen,bvn,hardy,hardy_observed\n";
    for (int n = n_lo; n <= n_hi; ++n) {
        out += std::to_string(n);
        out += ',' + std::to_string(povm_count(PovmScheme::Nielsen, n));
        out += ',' + fmt12(povm_count_real(PovmScheme::Birkhoff, n));
        out += ',' + std::to_string(povm_count(PovmScheme::Areas, n));
        out += ',' + std::to_string(areas_count_observed(lambda, n));
        out += '\n';
    }
    return out;
}

std::string entanglement_csv(const Grid& grid) {
    const double series_tol = 1e-12;
    std::string out;
    out += "# command=entanglement\n";
    out += "# db_range=" + grid.str() + "\n";
    out += "# series_tolerance=" + fmt12(series_tol) + "\n";
    out += "db,s_tmsv,s_avg,p_max_ebits,gap\n";
    for (double db : grid.values()) {
        const double lam = db_to_lambda(db);
        const double s = tmsv_entropy(lam);
        const double avg = average_entanglement(lam, series_tol);
        out += fmt12(db) + ',' + fmt12(s) + ',' + fmt12(avg) + ',' +
               fmt12(pmax_qubit(lam)) + ',' + fmt12(s - avg) + '\n';
    }
    return out;
}

std::string efficiency_csv(const Grid& grid, bool qudit, int truncation,
                           double tolerance) {
    std::string out;
    out += "# command=efficiency\n";
    out += std::string("# scheme=") + (qudit ? "qudit" : "qubit") + "\n";
    out += "# db_range=" + grid.str() + "\n";
    out += "# truncation=" +
           (truncation > 0 ? std::to_string(truncation) : std::string("auto")) +
           "\n";
    out += "# tail_tolerance=" + fmt12(tolerance) + "\n";
    out += "db,eta_oopr,eta_oopr_err,eta_near_even,eta_near_even_err,"
           "eta_shannon_bound,eta_shannon_bound_err\n";
    const double nan = std::nan("");
    for (double db : grid.values()) {
        TreeRequest req;
        req.lambda = db_to_lambda(db);
        req.qudit = qudit;
        req.truncation = truncation;
        req.tolerance = tolerance;
        const double yield =
            qudit ? average_entanglement(req.lambda, 1e-12)
                  : pmax_qubit(req.lambda);
        double eta[3] = {nan, nan, nan}, err[3] = {nan, nan, nan};
        if (yield > 0.0) {
            for (TreeVariant v : {TreeVariant::Oopr, TreeVariant::NearEven}) {
                req.variant = v;
                TreeStats st = tree_stats(make_tree(req), yield);
                const int i = v == TreeVariant::NearEven;
                eta[i] = st.efficiency;
                err[i] = st.rounds_tail_bound / yield;
                eta[2] = st.entropy / yield;
                err[2] = st.entropy_tail_bound / yield;
            }
        }
        out += fmt12(db);
        for (int i = 0; i < 3; ++i)
            out += ',' + fmt12(eta[i]) + ',' + fmt12(err[i]);
        out += '\n';
    }
    return out;
}

MeasurementTree make_tree(const TreeRequest& req) {
    OutcomeSet set;
    if (req.qudit) {
        const int d = req.truncation > 0
                          ? req.truncation
                          : qudit_default_truncation(req.lambda, req.tolerance);
        set = qudit_outcomes(req.lambda, d, d);
    } else {
        const int n = req.truncation > 0
                          ? req.truncation
                          : default_truncation(req.lambda, req.tolerance);
        set = qubit_outcomes(req.lambda, n);
    }
    return build_tree(set, req.variant);
}

SimulateOutput simulate(const TreeRequest& req, std::uint64_t runs,
                        std::uint64_t seed) {
    if (runs < 1) throw domain_error("need at least one run");
    MeasurementTree tree = make_tree(req);
    const int K = tree.set.size();

    SimulateOutput out;
    std::vector<std::uint64_t> counts(K, 0);
    std::uint64_t rounds = 0, rounds2 = 0;
    double fid_sum = 0.0, fid_min = 1.0;
    for (std::uint64_t i = 0; i < runs; ++i) {
        const std::uint64_t stream = run_stream_seed(seed, i);
        SplitMix64 rng(stream);
        RunRecord rec = run_tree_once(tree, rng, true);
        out.jsonl += transcript_line(stream, rec, tree.set);
        out.jsonl += '\n';
        ++counts[rec.outcome];
        rounds += static_cast<std::uint64_t>(rec.rounds);
        rounds2 += static_cast<std::uint64_t>(rec.rounds) *
                   static_cast<std::uint64_t>(rec.rounds);
        JointState fin;
        fin.amps = std::move(rec.state);
        const double f =
            outcome_fidelity(tree.set.outcomes[rec.outcome].label, fin);
        fid_sum += f;
        fid_min = std::min(fid_min, f);
    }
    const double n = static_cast<double>(runs);
    const double mean_rounds = static_cast<double>(rounds) / n;
    const double var =
        std::max(0.0, static_cast<double>(rounds2) / n - mean_rounds * mean_rounds);

    out.csv += "# command=simulate\n";
    out.csv += "# lambda=" + fmt12(req.lambda) + "\n";
    out.csv += std::string("# scheme=") + (req.qudit ? "qudit" : "qubit") + "\n";
    out.csv += std::string("# variant=") +
               (req.variant == TreeVariant::Oopr ? "oopr" : "near-even") + "\n";
    out.csv += "# truncation=" + std::to_string(tree.set.dim) + "\n";
    out.csv += "# runs=" + std::to_string(runs) + "\n";
    out.csv += "# seed=" + std::to_string(seed) + "\n";
    out.csv += "# mean_rounds=" + fmt12(mean_rounds) + "\n";
    out.csv += "# mean_rounds_se=" + fmt12(std::sqrt(var / n)) + "\n";
    out.csv += "# min_fidelity=" + fmt12(fid_min) + "\n";
    out.csv += "# mean_fidelity=" + fmt12(fid_sum / n) + "\n";
    out.csv += "outcome,probability,count,frequency,wilson_lo,wilson_hi\n";
    for (int m = 0; m < K; ++m) {
        WilsonInterval ci = wilson_interval(counts[m], runs);
        // Labels contain commas, so the outcome field is always quoted.
        out.csv += '"' + tree.set.outcomes[m].label.str() + '"';
        out.csv += ',' + fmt12(tree.set.outcomes[m].probability);
        out.csv += ',' + std::to_string(counts[m]);
        out.csv += ',' + fmt12(counts[m] / n);
        out.csv += ',' + fmt12(ci.lo) + ',' + fmt12(ci.hi) + '\n';
    }
    return out;
}

}  // namespace cvdv::cli
