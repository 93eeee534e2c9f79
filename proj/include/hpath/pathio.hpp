#pragma once

#include <optional>
#include <string>

#include "hpath/search.hpp"
#include "hpath/significance.hpp"

namespace hpath {

// Query echo for serialized results.
struct PathQueryInfo {
    std::string start;
    std::string goal;
};

// JSON payload: {query, config, chain, cliques, cost, nodesExplored,
// elapsedMs, ebf, significance}. significance is null when not supplied.
std::string path_to_json(const SparseBipartiteDataset& d, const PathQueryInfo& q,
                         const SearchConfig& config, const PathResult& r,
                         const std::optional<std::vector<StepSignificance>>& sig);

// Graphviz rendering: chain nodes with constraint-labeled edges, clique
// members grouped into clusters for k > 2.
std::string path_to_dot(const SparseBipartiteDataset& d, const SearchConfig& config,
                        const PathResult& r);

// Row-per-step TSV: step, object, edge metric to the next node, clique members.
std::string path_to_tsv(const SparseBipartiteDataset& d, const PathResult& r);

} // namespace hpath
