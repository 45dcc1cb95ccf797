#include "cvdv/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>

#include "cvdv/bintree.hpp"
#include "cvdv/census.hpp"
#include "cvdv/hardy.hpp"
#include "cvdv/mcsim.hpp"
#include "cvdv/qudit.hpp"
#include "cvdv/spectrum.hpp"
#include "cvdv/transform.hpp"

namespace cvdv {

namespace {

std::string strf(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

struct Outcome2 {
    bool ok = true;
    std::string detail;
};

OutcomeSet qubit_set(double lambda) {
    return qubit_outcomes(lambda, default_truncation(lambda, 1e-12));
}

Outcome2 c1_threshold() {
    Outcome2 r;
    const double root_half = 1.0 / std::sqrt(2.0);
    const double db = lambda_to_db(root_half);
    r.ok = std::abs(db - 7.66) <= 0.005;
    auto deterministic = [](double lam) {
        auto s = tmsv_spectrum(TmsvParams::from_lambda(lam),
                               default_truncation(lam, 1e-13));
        return majorizes(s, TargetSpectrum::maximally_entangled(2));
    };
    double lo = 0.5, hi = 0.9;
    r.ok = r.ok && !deterministic(lo) && deterministic(hi);
    for (int i = 0; i < 80 && hi - lo > 1e-13; ++i) {
        double mid = 0.5 * (lo + hi);
        (deterministic(mid) ? hi : lo) = mid;
    }
    const double flip = 0.5 * (lo + hi);
    r.ok = r.ok && std::abs(flip - root_half) <= 1e-9;
    r.detail = strf("threshold %.6f dB (pinned 7.66 +- 0.005); flip at "
                    "%.12f (pinned 1/sqrt2 +- 1e-9)",
                    db, flip);
    return r;
}

Outcome2 c2_pmax_law() {
    Outcome2 r;
    const auto bell = TargetSpectrum::maximally_entangled(2);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double lam = (i + 0.5) / 200.0;
        auto s = tmsv_spectrum(TmsvParams::from_lambda(lam),
                               default_truncation(lam, 1e-13));
        worst = std::max(worst, std::abs(vidal_pmax(s, bell) - pmax_qubit(lam)));
    }
    r.ok = worst <= 1e-10;
    r.detail = strf("max |suffix-ratio optimum - min(1,2 lambda^2)| = %.3e "
                    "over 200 points (pinned 1e-10)",
                    worst);
    return r;
}

Outcome2 c3_worked_example() {
    Outcome2 r;
    auto set = qubit_set(0.8);
    static const double expect[6] = {0.295, 0.188, 0.181,
                                     0.0773, 0.0652, 0.0555};
    double worst = 0.0;
    for (int i = 0; i < 6; ++i)
        worst = std::max(worst,
                         std::abs(set.outcomes[i].probability - expect[i]));
    r.ok = set.size() >= 6 && worst <= 1e-3;

    auto tree = build_tree(set, TreeVariant::NearEven);
    const TreeNode& root = tree.nodes[0];
    bool shape = !root.is_leaf();
    double top_mass = 0.0;
    if (shape) {
        const TreeNode& left = tree.nodes[root.left];
        shape = left.first == 0 && left.last == 2;
        top_mass = set.outcomes[0].probability + set.outcomes[1].probability;
        shape = shape && std::abs(top_mass - 0.483) <= 1e-3;
        const TreeNode& right = tree.nodes[root.right];
        shape = shape && !right.is_leaf();
        if (shape) {
            const TreeNode& rl = tree.nodes[right.left];
            shape = rl.first == 2 && rl.last == 4;
        }
    }
    r.ok = r.ok && shape;
    r.detail = strf("six largest off by at most %.2e (pinned 1e-3); first "
                    "split carries %.6f (pinned 0.483 +- 1e-3); second split "
                    "takes outcomes 3-4: %s",
                    worst, top_mass, shape ? "yes" : "no");
    return r;
}

Outcome2 c4_completeness() {
    Outcome2 r;
    static const double lams[] = {0.3, 0.5, 1.0 / std::sqrt(2.0), 0.8, 0.9};
    const int k_max = 10;
    double worst_qubit = 0.0, worst_qudit = 0.0;
    for (double lam : lams) {
        worst_qubit =
            std::max(worst_qubit, completeness_deviation(qubit_set(lam), k_max));
        int d = qudit_truncation_for_completeness(lam, k_max, 1e-9);
        worst_qudit = std::max(
            worst_qudit,
            completeness_deviation(qudit_outcomes(lam, d, d), k_max));
    }
    r.ok = worst_qubit < 1e-8 && worst_qudit < 1e-8;
    r.detail = strf("identity deviation up to level %d: pair scheme %.3e, "
                    "multi-level scheme %.3e (pinned 1e-8)",
                    k_max, worst_qubit, worst_qudit);
    return r;
}

Outcome2 c5_counts() {
    Outcome2 r;
    bool observed = true, closed = true;
    for (double lam : {0.5, 0.8})
        for (int n = 2; n <= 20; ++n)
            observed = observed && areas_count_observed(lam, n) == n;
    for (int n = 2; n <= 20; ++n) {
        closed = closed && povm_count(PovmScheme::Nielsen, n) == (1LL << (n - 1));
        closed = closed && povm_count_real(PovmScheme::Birkhoff, n) ==
                               0.5 * (n - 1.0) * (n - 1.0) + 2.0;
        closed = closed && povm_count(PovmScheme::Areas, n) == n;
    }
    closed = closed && povm_count(PovmScheme::Nielsen, 10) == 512 &&
             povm_count_real(PovmScheme::Birkhoff, 10) == 42.5 &&
             povm_count(PovmScheme::Areas, 10) == 10 &&
             povm_count(PovmScheme::Nielsen, 2) == 2 &&
             povm_count_real(PovmScheme::Birkhoff, 2) == 2.5;
    r.ok = observed && closed;
    r.detail = strf("constructed outcome count equals N for N=2..20 at "
                    "lambda 0.5 and 0.8: %s; closed forms exact: %s",
                    observed ? "yes" : "no", closed ? "yes" : "no");
    return r;
}

Outcome2 c6_threshold_efficiency() {
    Outcome2 r;
    const double lam = 1.0 / std::sqrt(2.0);
    auto set = qubit_set(lam);
    double rounds[2] = {0, 0}, entropy = 0.0, eta = 0.0;
    bool ok = true;
    for (TreeVariant v : {TreeVariant::Oopr, TreeVariant::NearEven}) {
        auto tree = build_tree(set, v);
        auto st = tree_stats(tree, pmax_qubit(lam));
        rounds[v == TreeVariant::NearEven] = st.expected_rounds;
        entropy = st.entropy;
        eta = st.efficiency;
        ok = ok && std::abs(st.expected_rounds - 2.0) <= 1e-6 &&
             std::abs(st.entropy - 2.0) <= 1e-6 &&
             std::abs(st.efficiency - 2.0) <= 1e-6;
    }
    r.ok = ok;
    r.detail = strf("rounds %.9f / %.9f, outcome entropy %.9f, efficiency "
                    "%.9f (all pinned 2.0 +- 1e-6)",
                    rounds[0], rounds[1], entropy, eta);
    return r;
}

Outcome2 c7_bounds_grid() {
    Outcome2 r;
    bool shannon = true, dominance = true, coincide = true;
    double worst_gap = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double db = 0.15 * i;
        const double lam = db_to_lambda(db);
        auto qset = qubit_set(lam);
        auto q_oopr = build_tree(qset, TreeVariant::Oopr);
        auto q_ne = build_tree(qset, TreeVariant::NearEven);
        auto s_oopr = tree_stats(q_oopr);
        auto s_ne = tree_stats(q_ne);
        shannon = shannon &&
                  s_oopr.expected_rounds >= s_oopr.entropy - 1e-9 &&
                  s_ne.expected_rounds >= s_ne.entropy - 1e-9;
        dominance = dominance &&
                    s_ne.expected_rounds <= s_oopr.expected_rounds + 1e-9;
        worst_gap = std::max(worst_gap,
                             s_ne.entropy - s_ne.expected_rounds);
        if (db < 7.66) coincide = coincide && trees_identical(q_oopr, q_ne);

        int d = qudit_default_truncation(lam, 1e-12);
        auto dset = qudit_outcomes(lam, d, d);
        auto d_oopr = build_tree(dset, TreeVariant::Oopr);
        auto d_ne = build_tree(dset, TreeVariant::NearEven);
        auto t_oopr = tree_stats(d_oopr);
        auto t_ne = tree_stats(d_ne);
        shannon = shannon &&
                  t_oopr.expected_rounds >= t_oopr.entropy - 1e-9 &&
                  t_ne.expected_rounds >= t_ne.entropy - 1e-9;
        dominance = dominance &&
                    t_ne.expected_rounds <= t_oopr.expected_rounds + 1e-9;
    }
    r.ok = shannon && dominance && coincide;
    r.detail = strf("rounds >= entropy: %s (worst margin %.2e, pinned 1e-9); "
                    "near-even <= one-per-round: %s; pair-scheme trees match "
                    "below 7.66 dB: %s",
                    shannon ? "yes" : "no", worst_gap,
                    dominance ? "yes" : "no", coincide ? "yes" : "no");
    return r;
}

Outcome2 c8_gap() {
    Outcome2 r;
    const double g1 = entanglement_gap(0.9);
    const double g2 = entanglement_gap(0.99);
    const double g3 = entanglement_gap(0.999);
    const double s = tmsv_entropy(1.0 / std::sqrt(2.0));
    r.ok = g1 < g2 && g2 < g3 && std::abs(g3 - 0.832746) <= 0.01 &&
           std::abs(s - 2.0) <= 1e-9;
    r.detail = strf("gap %.6f -> %.6f -> %.6f (monotone, last pinned "
                    "0.832746 +- 0.01); threshold entropy %.12f (pinned "
                    "2.0 +- 1e-9)",
                    g1, g2, g3, s);
    return r;
}

Outcome2 c9_photon_pairs() {
    Outcome2 r;
    bool ratios = true;
    double worst_bal = 0.0, first_ratio = 0.0;
    for (double lam : {0.01, 0.05, 0.1}) {
        const double ratio = spdc_rate_vs_optimal(lam);
        if (lam == 0.01) first_ratio = ratio;
        ratios = ratios && ratio >= 0.45 && ratio <= 0.5;
        auto sc = spdc_schmidt_coefficients(lam);
        worst_bal = std::max({worst_bal, std::abs(sc[0] - 0.5),
                              std::abs(sc[1] - 0.5)});
    }
    r.ok = ratios && worst_bal <= 1e-10;
    r.detail = strf("heralded/optimal ratio in [0.45, 0.5]: %s (e.g. %.6f); "
                    "post-selected coefficients off balance by %.2e "
                    "(pinned 1e-10)",
                    ratios ? "yes" : "no", first_ratio, worst_bal);
    return r;
}

Outcome2 c10_monte_carlo() {
    Outcome2 r;
    const std::uint64_t runs = 1000000;
    const std::uint64_t seed = 20260814;
    auto set = qubit_set(0.8);
    auto tree = build_tree(set, TreeVariant::NearEven);
    auto sim = simulate_tree(tree, runs, seed);
    auto st = tree_stats(tree);

    bool freq_ok = true;
    double worst_pull = 0.0;
    for (int m = 0; m < set.size(); ++m) {
        const double p = set.outcomes[m].probability;
        if (p < 1e-3) continue;
        const double sigma = std::sqrt(p * (1.0 - p) / runs);
        const double freq = sim.counts[m] / static_cast<double>(runs);
        const double pull = std::abs(freq - p) / sigma;
        worst_pull = std::max(worst_pull, pull);
        freq_ok = freq_ok && pull <= 4.0;
    }
    const double se = std::sqrt(st.rounds_variance / runs);
    const double rounds_pull =
        std::abs(sim.mean_rounds - st.expected_rounds) / se;
    r.ok = freq_ok && sim.min_fidelity >= 1.0 - 1e-10 && rounds_pull <= 4.0;
    r.detail = strf("worst frequency pull %.2f sigma (pinned 4); min "
                    "fidelity 1 - %.2e (pinned 1e-10); mean rounds %.4f vs "
                    "%.4f, pull %.2f sigma (pinned 4)",
                    worst_pull, 1.0 - sim.min_fidelity, sim.mean_rounds,
                    st.expected_rounds, rounds_pull);
    return r;
}

Outcome2 c11_rotation_equivalence() {
    Outcome2 r;
    double worst = 0.0;
    for (double lam : {0.5, 0.8}) {
        auto set = qubit_set(lam);
        for (TreeVariant v : {TreeVariant::Oopr, TreeVariant::NearEven}) {
            auto tree = build_tree(set, v);
            for (const TreeNode& n : tree.nodes) {
                if (n.is_leaf()) continue;
                KrausDiagonal b0;
                b0.diag = n.b0;
                worst = std::max(worst, sqr_equivalence(b0));
            }
        }
    }
    r.ok = worst < 1e-12;
    r.detail = strf("largest ancilla-rotation reconstruction deviation %.3e "
                    "over every internal node (pinned 1e-12)",
                    worst);
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
    struct Spec {
        int id;
        const char* name;
        double limit;
        std::function<Outcome2()> fn;
    };
    const Spec specs[] = {
        {1, "deterministic-conversion threshold", 1.0, c1_threshold},
        {2, "conversion probability law", 1.0, c2_pmax_law},
        {3, "strong-squeezing worked example", 1.0, c3_worked_example},
        {4, "measurement completeness", 5.0, c4_completeness},
        {5, "measurement counts", 5.0, c5_counts},
        {6, "threshold efficiency", 1.0, c6_threshold_efficiency},
        {7, "round-count bounds on the grid", 30.0, c7_bounds_grid},
        {8, "entanglement gap limit", 5.0, c8_gap},
        {9, "heralded photon-pair oracle", 5.0, c9_photon_pairs},
        {10, "monte carlo consistency", 60.0, c10_monte_carlo},
        {11, "ancilla rotation equivalence", 5.0, c11_rotation_equivalence},
    };
    std::vector<CriterionResult> out;
    for (const Spec& s : specs) {
        CriterionResult res;
        res.id = s.id;
        res.name = s.name;
        res.limit_seconds = s.limit;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            Outcome2 o = s.fn();
            res.passed = o.ok;
            res.detail = std::move(o.detail);
        } catch (const std::exception& e) {
            res.passed = false;
            res.detail = std::string("exception: ") + e.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        res.seconds = std::chrono::duration<double>(t1 - t0).count();
        if (res.seconds >= s.limit) {
            res.passed = false;
            res.detail += strf(" [over %.0f s budget]", s.limit);
        }
        out.push_back(std::move(res));
    }
    return out;
}

}  // namespace cvdv
