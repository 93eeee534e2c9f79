#pragma once

#include <cstdint>

#include "hpath/dataset.hpp"

namespace hpath {

// Planted-cluster bipartite generator for benchmarks: objects fall into
// contiguous groups, each group owns a feature block; in-block features attach
// with probability p_in, out-of-block with p_out. Post-passes guarantee the
// covering invariants (no empty row or column). Fully determined by the seed.
struct SyntheticSpec {
    int objects = 200;
    int groups = 5;
    int features_per_group = 10;
    double p_in = 0.75;
    double p_out = 0.02;
    std::uint64_t seed = 1;
    bool weighted = false;
    int weight_min = 1;  // weighted only; integer weights keep oracles exact
    int weight_max = 5;
};

SparseBipartiteDataset make_planted_clusters(const SyntheticSpec& spec);

} // namespace hpath
