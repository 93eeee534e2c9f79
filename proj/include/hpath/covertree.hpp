#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "hpath/dataset.hpp"

namespace hpath {

using MetricFn = std::function<double(ObjectIndex, ObjectIndex)>;

// Cover tree (expansion base 2) over the dataset's objects under a supplied
// metric. Built by repeated insertion in object order; queries are exact:
// nearest() agrees with a full linear scan, including (distance, id) tie order.
//
// Invariants kept by construction and auditable post-build:
//   nesting:    a node at level i stands for itself on every level below
//   covering:   a child hung at level i-1 lies within 2^i of its parent
//   separation: explicit nodes at level i are pairwise farther than 2^i apart
// Zero-distance duplicates never enter the structure; each rides along with
// its representative and is surfaced by queries at the same distance.
class CoverTree {
public:
    struct Neighbor {
        ObjectIndex object;
        double distance;
    };

    CoverTree(const SparseBipartiteDataset& d, MetricFn metric);

    // n nearest objects to o, excluding o itself and everything in exclude,
    // ascending (distance, id). Returns fewer when the tree runs out.
    std::vector<Neighbor> nearest(ObjectIndex o, std::size_t n,
                                  std::span<const ObjectIndex> exclude = {}) const;

    std::size_t size() const noexcept { return count_; }

    // Re-checks nesting/covering/separation; throws std::logic_error on any
    // violation. Meant for tests; cost is quadratic in the node count.
    void audit_invariants() const;

private:
    struct Node {
        ObjectIndex obj;
        int level;                                      // attach level
        int parent;                                     // node index, -1 for root
        std::map<int, std::vector<int>> children;       // level -> node indices
        std::vector<ObjectIndex> duplicates;            // zero-distance companions
    };

    double dist(ObjectIndex a, ObjectIndex b) const;
    void insert(ObjectIndex p);

    MetricFn metric_;
    std::vector<Node> nodes_;
    std::size_t count_ = 0;  // objects represented, duplicates included
    int min_level_ = 0;
    int root_ = -1;
};

} // namespace hpath
