#include "cvdv/mcsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cvdv/errors.hpp"

namespace cvdv {

std::uint64_t mix64(std::uint64_t v) {
    std::uint64_t z = v + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t run_stream_seed(std::uint64_t seed, std::uint64_t i) {
    // mix64 already adds one increment, so this is the state after i + 1
    // steps of the underlying sequence.
    return mix64(seed + i * 0x9E3779B97F4A7C15ull);
}

JointState JointState::tmsv(double lambda, int dim) {
    if (!(lambda >= 0.0) || lambda >= 1.0)
        throw domain_error("lambda must lie in [0, 1)");
    if (dim < 1) throw domain_error("state dimension must be positive");
    JointState s;
    s.amps.resize(dim);
    const double a0 = std::sqrt(1.0 - lambda * lambda);
    double v = a0;
    for (int n = 0; n < dim; ++n) {
        s.amps[n] = v;
        v *= lambda;
    }
    return s;
}

double JointState::norm2() const {
    double n = 0.0;
    for (double a : amps) n += a * a;
    return n;
}

double apply_kraus(JointState& state, const KrausDiagonal& k) {
    if (k.diag.size() != state.amps.size())
        throw domain_error("filter dimension does not match the state");
    double before = 0.0, after = 0.0;
    for (size_t i = 0; i < state.amps.size(); ++i) {
        before += state.amps[i] * state.amps[i];
        state.amps[i] *= k.diag[i];
        after += state.amps[i] * state.amps[i];
    }
    if (before <= 0.0) throw domain_error("cannot filter a zero state");
    return after / before;
}

RunRecord run_tree_once(const MeasurementTree& tree, SplitMix64& rng,
                        bool record_path) {
    if (tree.set.geometric_ratio < 0.0)
        throw domain_error("simulation needs the set's geometric ratio");
    RunRecord rec;
    JointState state =
        JointState::tmsv(std::sqrt(tree.set.geometric_ratio), tree.set.dim);
    int at = 0;
    while (!tree.nodes[at].is_leaf()) {
        const TreeNode& node = tree.nodes[at];
        double before = 0.0, w0 = 0.0;
        for (int k = 0; k < tree.set.dim; ++k) {
            double a2 = state.amps[k] * state.amps[k];
            before += a2;
            w0 += a2 * node.b0[k] * node.b0[k];
        }
        if (before <= 1e-300)
            throw domain_error("state norm collapsed during the sequence");
        double p0 = w0 / before;
        int branch = rng.uniform() < p0 ? 0 : 1;
        const std::vector<double>& b = branch == 0 ? node.b0 : node.b1;
        for (int k = 0; k < tree.set.dim; ++k) state.amps[k] *= b[k];
        if (record_path) rec.path.push_back({at, branch, p0});
        ++rec.rounds;
        at = branch == 0 ? node.left : node.right;
    }
    rec.outcome = tree.nodes[at].outcome;
    double n2 = state.norm2();
    if (n2 <= 1e-300)
        throw domain_error("state norm collapsed at the leaf");
    const double inv = 1.0 / std::sqrt(n2);
    for (double& a : state.amps) a *= inv;
    rec.state = std::move(state.amps);
    return rec;
}

double outcome_fidelity(const OutcomeLabel& label, const JointState& state) {
    const double total = state.norm2();
    if (total <= 0.0) throw domain_error("zero state has no fidelity");
    const int dim = static_cast<int>(state.amps.size());
    switch (label.kind) {
        case OutcomeLabel::Kind::Fail:
            return state.amps[0] * state.amps[0] / total;
        case OutcomeLabel::Kind::Bell: {
            if (label.n >= dim || label.m >= dim)
                throw domain_error("label level beyond the state dimension");
            double s = state.amps[label.n] + state.amps[label.m];
            return s * s / (2.0 * total);
        }
        case OutcomeLabel::Kind::Qudit: {
            if (label.n > dim)
                throw domain_error("label dimension beyond the state");
            double s = 0.0;
            for (int n = 0; n < label.n; ++n) s += state.amps[n];
            return s * s / (label.n * total);
        }
    }
    throw domain_error("unknown outcome label");
}

std::vector<double> predicted_leaf_probabilities(const MeasurementTree& tree) {
    if (tree.set.geometric_ratio < 0.0)
        throw domain_error("prediction needs the set's geometric ratio");
    JointState root = JointState::tmsv(std::sqrt(tree.set.geometric_ratio),
                                       tree.set.dim);
    const double total = root.norm2();
    std::vector<double> probs(tree.set.outcomes.size(), 0.0);
    struct Item {
        int node;
        std::vector<double> amps;
    };
    std::vector<Item> todo;
    todo.push_back({0, std::move(root.amps)});
    while (!todo.empty()) {
        Item it = std::move(todo.back());
        todo.pop_back();
        const TreeNode& node = tree.nodes[it.node];
        if (node.is_leaf()) {
            double w = 0.0;
            for (double a : it.amps) w += a * a;
            probs[node.outcome] = w / total;
            continue;
        }
        std::vector<double> left(it.amps.size()), right(it.amps.size());
        for (size_t k = 0; k < it.amps.size(); ++k) {
            left[k] = it.amps[k] * node.b0[k];
            right[k] = it.amps[k] * node.b1[k];
        }
        todo.push_back({node.left, std::move(left)});
        todo.push_back({node.right, std::move(right)});
    }
    return probs;
}

SimResult simulate_tree(const MeasurementTree& tree, std::uint64_t runs,
                        std::uint64_t seed, int threads) {
    SimResult out;
    out.runs = runs;
    out.counts.assign(tree.set.outcomes.size(), 0);
    if (runs == 0) return out;

    int workers = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    const std::uint64_t kChunk = 65536;
    const std::uint64_t chunks = (runs + kChunk - 1) / kChunk;
    if (chunks < static_cast<std::uint64_t>(workers))
        workers = static_cast<int>(chunks);

    struct Accum {
        std::vector<std::uint64_t> counts;
        std::uint64_t rounds = 0;
        std::uint64_t rounds2 = 0;
        double min_fid = 1.0;
    };
    std::vector<Accum> acc(workers);
    // Per-chunk fidelity sums keep the reduction order fixed no matter which
    // worker picks up which chunk; integer tallies commute on their own.
    std::vector<double> chunk_fid(chunks, 0.0);
    std::atomic<std::uint64_t> next_chunk{0};
    auto work = [&](int w) {
        Accum& a = acc[w];
        a.counts.assign(tree.set.outcomes.size(), 0);
        for (;;) {
            std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= chunks) break;
            std::uint64_t lo = c * kChunk;
            std::uint64_t hi = std::min(runs, lo + kChunk);
            double fid_sum = 0.0;
            for (std::uint64_t i = lo; i < hi; ++i) {
                SplitMix64 rng(run_stream_seed(seed, i));
                RunRecord rec = run_tree_once(tree, rng);
                ++a.counts[rec.outcome];
                a.rounds += static_cast<std::uint64_t>(rec.rounds);
                a.rounds2 += static_cast<std::uint64_t>(rec.rounds) *
                             static_cast<std::uint64_t>(rec.rounds);
                JointState fin;
                fin.amps = std::move(rec.state);
                double f = outcome_fidelity(
                    tree.set.outcomes[rec.outcome].label, fin);
                fid_sum += f;
                a.min_fid = std::min(a.min_fid, f);
            }
            chunk_fid[c] = fid_sum;
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    std::uint64_t rounds = 0, rounds2 = 0;
    for (const Accum& a : acc) {
        for (size_t m = 0; m < out.counts.size(); ++m)
            out.counts[m] += a.counts[m];
        rounds += a.rounds;
        rounds2 += a.rounds2;
        out.min_fidelity = std::min(out.min_fidelity, a.min_fid);
    }
    const double n = static_cast<double>(runs);
    out.mean_rounds = static_cast<double>(rounds) / n;
    double var = static_cast<double>(rounds2) / n -
                 out.mean_rounds * out.mean_rounds;
    out.mean_rounds_se = std::sqrt(std::max(0.0, var) / n);
    double fid = 0.0;
    for (double f : chunk_fid) fid += f;
    out.mean_fidelity = fid / n;
    return out;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = p + z2 / (2.0 * n);
    const double half =
        z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, (centre - half) / denom),
            std::min(1.0, (centre + half) / denom)};
}

double sqr_equivalence(const KrausDiagonal& b0) {
    double worst = 0.0;
    for (double c : b0.diag) {
        if (!(c >= 0.0) || c > 1.0)
            throw domain_error("binary filter entry outside [0, 1]");
        const double phi = std::acos(c);
        // Ancilla rotation about y by phi; columns act on (|g>, |e>).
        const double u[2][2] = {{std::cos(phi), -std::sin(phi)},
                                {std::sin(phi), std::cos(phi)}};
        // Start in |g>; reading the ancilla in |g> or |e> leaves the mode
        // filtered by the matching column entry at this level.
        const double induced0 = u[0][0];
        const double induced1 = u[1][0];
        worst = std::max(worst, std::abs(induced0 - c));
        worst = std::max(worst, std::abs(induced1 - std::sqrt(1.0 - c * c)));
    }
    return worst;
}

double max_rotation_deviation(const MeasurementTree& tree) {
    double worst = 0.0;
    for (const TreeNode& node : tree.nodes) {
        if (node.is_leaf()) continue;
        for (int k = 0; k < tree.set.dim; ++k) {
            double b0 = node.b0[k], b1 = node.b1[k];
            if (b0 == 0.0 && b1 == 0.0) continue;  // no support at this level
            double phi = std::atan2(b1, b0);
            worst = std::max(worst, std::abs(b0 - std::cos(phi)));
            worst = std::max(worst, std::abs(b1 - std::sin(phi)));
        }
    }
    return worst;
}

}  // namespace cvdv
