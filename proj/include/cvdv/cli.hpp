#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cvdv/bintree.hpp"

namespace cvdv::cli {

// Inclusive arithmetic grid written as "start:stop:step".
struct Grid {
    double start = 0.0;
    double stop = 15.0;
    double step = 0.05;

    static Grid parse(const std::string& text);
    std::vector<double> values() const;
    std::string str() const;
};

// Each command returns the complete output file: '#' metadata lines, one
// header row, then data rows. Identical inputs yield identical bytes.
std::string rate_csv(const Grid& grid);
std::string povm_count_csv(int n_lo, int n_hi, double lambda);
std::string entanglement_csv(const Grid& grid);
std::string efficiency_csv(const Grid& grid, bool qudit, int truncation,
                           double tolerance);

// Shared configuration for the tree-level commands. truncation <= 0 picks
// the default for the scheme at the given tail tolerance.
struct TreeRequest {
    double lambda = 0.0;
    bool qudit = false;
    TreeVariant variant = TreeVariant::NearEven;
    int truncation = 0;
    double tolerance = 1e-12;
};

MeasurementTree make_tree(const TreeRequest& req);

struct SimulateOutput {
    std::string jsonl;  // one transcript line per run
    std::string csv;    // frequency table plus run statistics
};

SimulateOutput simulate(const TreeRequest& req, std::uint64_t runs,
                        std::uint64_t seed);

}  // namespace cvdv::cli
