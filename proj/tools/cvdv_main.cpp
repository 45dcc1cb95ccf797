#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cvdv/acceptance.hpp"
#include "cvdv/cli.hpp"
#include "cvdv/errors.hpp"
#include "cvdv/serialize.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw cvdv::domain_error("cannot open " + path + " for writing");
    f << content;
    if (!f) throw cvdv::domain_error("write to " + path + " failed");
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::fputs(content.c_str(), stdout);
    else
        write_file(out_path, content);
}

int parse_truncation(const std::string& text) {
    if (text == "auto") return 0;
    try {
        size_t used = 0;
        int n = std::stoi(text, &used);
        if (used == text.size() && n > 0) return n;
    } catch (...) {
    }
    throw CLI::ValidationError("--truncation",
                               "expects a positive integer or 'auto'");
}

int run_check() {
    auto results = cvdv::run_acceptance();
    int failed = 0;
    for (const auto& r : results) {
        std::printf("[%s] %2d %-34s (%.2f s / %.0f s)  %s\n",
                    r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.seconds, r.limit_seconds, r.detail.c_str());
        if (!r.passed) ++failed;
    }
    std::printf("%zu/%zu criteria passed\n", results.size() - failed,
                results.size());
    return failed ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conversion of two-mode squeezed vacua into maximally "
                 "entangled discrete states: rates, measurement sets, "
                 "adaptive binary trees, and Monte Carlo checks"};
    app.require_subcommand(1);

    std::string db_range = "0:15:0.05";
    std::string n_range = "2:20";
    std::string truncation = "auto";
    std::string scheme = "qubit";
    std::string variant = "near-even";
    std::string out_path;
    double lambda = 0.5;
    double tolerance = 1e-12;
    std::uint64_t seed = 1;
    std::uint64_t runs = 1000;

    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "Output path (default: stdout)");
    };
    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--db-range", db_range,
                        "Squeezing grid in dB as start:stop:step")
            ->capture_default_str();
    };
    auto add_point = [&](CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option("--lambda", lambda,
                                    "Squeezing parameter in [0, 1)")
                        ->check(CLI::Range(0.0, 1.0));
        if (required)
            opt->required();
        else
            opt->capture_default_str();
        return opt;
    };
    auto add_scheme = [&](CLI::App* cmd) {
        cmd->add_option("--scheme", scheme, "Outcome family")
            ->check(CLI::IsMember({"qubit", "qudit"}))
            ->capture_default_str();
    };
    auto add_variant = [&](CLI::App* cmd) {
        cmd->add_option("--variant", variant, "Tree splitting rule")
            ->check(CLI::IsMember({"oopr", "near-even"}))
            ->capture_default_str();
    };
    auto add_truncation = [&](CLI::App* cmd) {
        cmd->add_option("--truncation", truncation,
                        "Fock levels kept, or 'auto'")
            ->capture_default_str();
        cmd->add_option("--tolerance", tolerance,
                        "Tail mass allowed by 'auto' truncation")
            ->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
    };

    auto* rate = app.add_subcommand(
        "rate", "Optimal conversion probability and the heralded "
                "photon-pair rate over a squeezing grid");
    add_grid(rate);
    add_out(rate);

    auto* povm = app.add_subcommand(
        "povm-count", "Measurement counts of the three conversion protocols "
                      "per kept coefficient count");
    povm->add_option("--n-range", n_range, "Coefficient counts as lo:hi")
        ->capture_default_str();
    add_point(povm, false);
    add_out(povm);

    auto* ent = app.add_subcommand(
        "entanglement", "Source entropy, average converted entanglement, "
                        "and their gap over a squeezing grid");
    add_grid(ent);
    add_out(ent);

    auto* eff = app.add_subcommand(
        "efficiency", "Expected rounds per delivered ebit for both tree "
                      "variants against the entropy bound");
    add_grid(eff);
    add_scheme(eff);
    add_truncation(eff);
    add_out(eff);

    auto* tree = app.add_subcommand(
        "tree", "Adaptive binary measurement tree as DOT (and JSON with "
                "--out)");
    add_point(tree, true);
    add_scheme(tree);
    add_variant(tree);
    add_truncation(tree);
    tree->add_option("--out", out_path,
                     "Base path; writes <base>.dot and <base>.json");

    auto* sim = app.add_subcommand(
        "simulate", "Monte Carlo runs of the adaptive protocol with "
                    "per-run transcripts");
    add_point(sim, true);
    add_scheme(sim);
    add_variant(sim);
    add_truncation(sim);
    sim->add_option("--runs", runs, "Number of runs")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--seed", seed, "Master seed")->capture_default_str();
    sim->add_option("--out", out_path,
                    "Base path; writes <base>.jsonl and <base>.csv")
        ->required();

    auto* check = app.add_subcommand(
        "check", "Run the acceptance gate and report each criterion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*rate) {
            emit(out_path, cvdv::cli::rate_csv(cvdv::cli::Grid::parse(db_range)));
        } else if (*povm) {
            int lo = 0, hi = 0;
            char tail = 0;
            if (std::sscanf(n_range.c_str(), "%d:%d%c", &lo, &hi, &tail) != 2)
                throw cvdv::domain_error("--n-range must be lo:hi");
            emit(out_path, cvdv::cli::povm_count_csv(lo, hi, lambda));
        } else if (*ent) {
            emit(out_path,
                 cvdv::cli::entanglement_csv(cvdv::cli::Grid::parse(db_range)));
        } else if (*eff) {
            emit(out_path,
                 cvdv::cli::efficiency_csv(cvdv::cli::Grid::parse(db_range),
                                           scheme == "qudit",
                                           parse_truncation(truncation),
                                           tolerance));
        } else if (*tree) {
            cvdv::cli::TreeRequest req;
            req.lambda = lambda;
            req.qudit = scheme == "qudit";
            req.variant = variant == "oopr" ? cvdv::TreeVariant::Oopr
                                            : cvdv::TreeVariant::NearEven;
            req.truncation = parse_truncation(truncation);
            req.tolerance = tolerance;
            cvdv::MeasurementTree t = cvdv::cli::make_tree(req);
            if (out_path.empty()) {
                std::fputs(cvdv::tree_dot(t).c_str(), stdout);
            } else {
                write_file(out_path + ".dot", cvdv::tree_dot(t));
                write_file(out_path + ".json", cvdv::tree_json(t));
            }
        } else if (*sim) {
            cvdv::cli::TreeRequest req;
            req.lambda = lambda;
            req.qudit = scheme == "qudit";
            req.variant = variant == "oopr" ? cvdv::TreeVariant::Oopr
                                            : cvdv::TreeVariant::NearEven;
            req.truncation = parse_truncation(truncation);
            req.tolerance = tolerance;
            cvdv::cli::SimulateOutput res = cvdv::cli::simulate(req, runs, seed);
            write_file(out_path + ".jsonl", res.jsonl);
            write_file(out_path + ".csv", res.csv);
        } else if (*check) {
            return run_check();
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
