#pragma once

#include <cstdint>
#include <vector>

#include "cvdv/bintree.hpp"

namespace cvdv {

// Deterministic 64-bit generator, identical output on every platform.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

// One scramble round; used to derive independent per-run streams.
std::uint64_t mix64(std::uint64_t v);

// Seed of run i's private stream: the i-th output of a SplitMix64 whose state
// starts at `seed`. Distinct (seed, i) pairs give distinct streams, so nearby
// base seeds never replay each other's runs.
std::uint64_t run_stream_seed(std::uint64_t seed, std::uint64_t i);

// Schmidt amplitudes of the shared state; local diagonal filters act
// entrywise on them.
struct JointState {
    std::vector<double> amps;

    static JointState tmsv(double lambda, int dim);
    double norm2() const;
};

// Filters the state in place and returns the outcome probability
// |K psi|^2 / |psi|^2. The state is left unnormalized.
double apply_kraus(JointState& state, const KrausDiagonal& k);

struct RoundRecord {
    int node = 0;    // index into tree.nodes
    int branch = 0;  // 0 = prefix, 1 = suffix
    double p0 = 0.0; // probability of the prefix branch at this point
};

struct RunRecord {
    int outcome = -1;  // index into tree.set.outcomes
    int rounds = 0;
    std::vector<double> state;      // final normalized Schmidt amplitudes
    std::vector<RoundRecord> path;  // filled only when requested
};

// Plays the adaptive protocol once on a fresh state.
RunRecord run_tree_once(const MeasurementTree& tree, SplitMix64& rng,
                        bool record_path = false);

// Overlap of the (normalized) state with the target the label promises:
// an equal two-level superposition, an equal d-level superposition, or the
// vacuum for Fail.
double outcome_fidelity(const OutcomeLabel& label, const JointState& state);

// Model probabilities of each leaf outcome under the protocol, in the order
// of tree.set.outcomes. These differ from the raw outcome weights only by
// the truncation deficiency.
std::vector<double> predicted_leaf_probabilities(const MeasurementTree& tree);

struct SimResult {
    std::uint64_t runs = 0;
    std::vector<std::uint64_t> counts;  // per outcome, order of tree.set
    double mean_rounds = 0.0;
    double mean_rounds_se = 0.0;
    double min_fidelity = 1.0;   // worst post-state overlap with its target
    double mean_fidelity = 1.0;  // averaged over executed runs
};

// Runs the protocol many times. Run i draws its stream from
// run_stream_seed(seed, i), so results are independent of threading and
// chunking.
SimResult simulate_tree(const MeasurementTree& tree, std::uint64_t runs,
                        std::uint64_t seed, int threads = 0);

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

// Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = 1.959963984540054);

// Every round is a rotation followed by a standard measurement; this returns
// the largest deviation of any branch pair (b0[k], b1[k]) from a point on the
// unit circle, over levels where the node has support.
double max_rotation_deviation(const MeasurementTree& tree);

// Realizes the binary pair via a number-selective ancilla-qubit rotation:
// per level, rotate the ancilla by arccos(b0[k]) from |g>, read it out, and
// compare the two induced mode filters against (b0, sqrt(1 - b0^2)).
// Returns the largest entrywise deviation.
double sqr_equivalence(const KrausDiagonal& b0);

}  // namespace cvdv
