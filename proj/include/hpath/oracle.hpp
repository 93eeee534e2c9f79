#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hpath/view.hpp"

namespace hpath {

// Fully materialized similarity network for small instances: the reference
// the engine is checked against. Materialization refuses datasets larger than
// the cap (default 500 objects, HPATH_ORACLE_CAP overrides).
struct MaterializedNetwork {
    std::size_t n = 0;
    // adjacency[i] sorted by neighbor id; weight = active metric
    std::vector<std::vector<std::pair<ObjectIndex, double>>> adjacency;

    std::size_t edge_count() const;
    bool has_edge(ObjectIndex a, ObjectIndex b) const;
};

std::size_t default_oracle_cap();

MaterializedNetwork materialize(const ModeView& view, const EdgeConstraint& constraint,
                                std::size_t cap = default_oracle_cap());

struct OraclePath {
    std::vector<ObjectIndex> chain;
    double cost = 0.0;
};

// Exact Dijkstra shortest path. Predecessors prefer the smaller expanding
// node on exact cost ties, so reconstruction is deterministic. s == t yields
// the single-node chain at cost 0.
std::optional<OraclePath> oracle_shortest_path(const MaterializedNetwork& net,
                                               ObjectIndex s, ObjectIndex t);

// Every k-clique of the materialized network, members sorted, list in
// lexicographic order.
std::vector<std::vector<ObjectIndex>> enumerate_cliques(const MaterializedNetwork& net,
                                                        int k);

struct ClosedSet {
    std::vector<FeatureIndex> features;
    std::vector<ObjectIndex> objects;
};

// Brute-force closed-set enumeration over all 2^|features| subsets (guarded to
// small feature universes); includes the bottom closure unconditionally.
// Output sorted lexicographically by feature vector.
std::vector<ClosedSet> enumerate_closed_sets(const SparseBipartiteDataset& d,
                                             int minsup);

} // namespace hpath
