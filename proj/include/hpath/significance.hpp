#pragma once

#include <span>
#include <string>
#include <vector>

#include "hpath/dataset.hpp"

namespace hpath {

// Chance rating of one chain step: the upper-tail probability that two feature
// sets of the observed sizes, drawn from the feature universe, overlap at
// least as much as these two did (hypergeometric), plus the multiple-testing
// adjusted value across the whole chain.
struct StepSignificance {
    std::size_t overlap = 0;       // observed shared features
    std::size_t left_size = 0;     // |row(chain[i])|
    std::size_t right_size = 0;    // |row(chain[i+1])|
    double p = 1.0;                // exact tail probability, rounded to double
    double p_adjusted = 1.0;       // Benjamini-Hochberg step-up across steps
    std::string p_exact;           // normalized rational, "num/den" or "num"
};

// One entry per consecutive chain pair. Exact rational arithmetic internally.
// Requires a binary dataset and |chain| >= 2.
std::vector<StepSignificance> chain_significance(const SparseBipartiteDataset& d,
                                                 std::span<const ObjectIndex> chain);

// Benjamini-Hochberg step-up adjustment; output aligned with the input order,
// values clamped to [0, 1] and monotone along the sorted p sequence.
std::vector<double> benjamini_hochberg(std::span<const double> p_values);

} // namespace hpath
