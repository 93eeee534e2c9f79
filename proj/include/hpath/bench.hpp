#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hpath/search.hpp"

namespace hpath {

// Cross-product sweep description. Constraint axis: widths when non-empty,
// otherwise thetas. Query pairs are drawn once from the seed and shared by
// every configuration, so comparisons are paired.
struct BenchSweep {
    std::vector<GeneratorKind> generators{GeneratorKind::covertree, GeneratorKind::nna,
                                          GeneratorKind::kcnn};
    std::vector<HeuristicMode> heuristics{HeuristicMode::normal, HeuristicMode::zero};
    std::vector<int> ks{2};
    std::vector<double> thetas{0.95};
    std::vector<int> widths{};
    int pairs = 50;
    std::uint64_t seed = 1;
    int b = 20;
    double time_budget_s = 120.0;
};

struct BenchConfig {
    GeneratorKind generator;
    HeuristicMode heuristic;
    int k;
    EdgeConstraint constraint;
};

struct BenchQueryOutcome {
    int config = 0;  // index into BenchReport::configs
    int pair = 0;    // index into BenchReport::pairs
    SearchStatus status = SearchStatus::no_path;
    std::size_t path_len = 0;  // chain node count when found
    std::size_t nodes_explored = 0;
    std::size_t nodes_generated = 0;
    double ebf = 0.0;
    double ms = 0.0;
};

struct BenchLengthRow {
    int config = 0;
    std::size_t path_len = 0;
    std::size_t count = 0;
    double mean_explored = 0.0;
    double mean_generated = 0.0;
    double mean_ebf = 0.0;
    double mean_ms = 0.0;
};

struct BenchComboRow {
    int config = 0;
    std::size_t found = 0;
    std::size_t no_path = 0;
    std::size_t timed_out = 0;
    double mean_explored = 0.0;  // over found
    double mean_ebf = 0.0;
    double mean_ms = 0.0;
};

// Paired normal-vs-zero heuristic comparison for one (generator, k, constraint).
struct BenchSavingsRow {
    int config_normal = 0;
    int config_zero = 0;
    std::size_t paired = 0;       // pairs solved under both heuristics
    double frac_fewer = 0.0;      // share with explored(normal) <= explored(zero)
    double savings_pct = 0.0;     // 100 * (sum_zero - sum_normal) / sum_normal
    double mean_ebf_normal = 0.0;
    double mean_ebf_zero = 0.0;
};

struct BenchReport {
    std::vector<BenchConfig> configs;
    std::vector<std::pair<ObjectIndex, ObjectIndex>> pairs;
    std::vector<BenchQueryOutcome> queries;
    std::vector<BenchLengthRow> length_rows;
    std::vector<BenchComboRow> combo_rows;
    std::vector<BenchSavingsRow> savings_rows;
};

// Runs the sweep single-threaded in deterministic order. The lattice may be
// null when the sweep only uses the covertree generator.
BenchReport run_bench(const SparseBipartiteDataset& d, const ConceptLattice* lat,
                      const BenchSweep& sweep);

// TSV rendering. Timing columns print "-" when include_timing is false, which
// makes equal-seed reports byte-identical; everything else is deterministic
// either way.
std::string bench_report_tsv(const BenchReport& report, const SparseBipartiteDataset& d,
                             bool include_timing);

} // namespace hpath
