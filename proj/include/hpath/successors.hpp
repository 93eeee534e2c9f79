#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <unordered_set>
#include <vector>

#include "hpath/covertree.hpp"
#include "hpath/lattice.hpp"
#include "hpath/view.hpp"

namespace hpath {

// A candidate k-clique around an expanding object: the object itself plus k-1
// co-members. verified means every unordered member pair passed the active
// edge constraint. score is the mean active-metric distance from the expanding
// object to the others, in [0, 1].
struct CliqueCandidate {
    std::vector<ObjectIndex> members;  // sorted, size k, includes the expander
    double score = 0.0;
    bool verified = false;
};

// Metric-index successor source: the nearest constraint-satisfying objects,
// ascending (distance, id). Pairs only (k = 2 semantics).
std::vector<CoverTree::Neighbor> covertree_successors(const CoverTree& tree,
                                                      const ModeView& view,
                                                      const EdgeConstraint& constraint,
                                                      ObjectIndex o, int b);

// Lazy lattice-descent neighbor stream for one object. Seeds its fringe with
// the object's top concepts (largest feature sets first), walks child
// relaxations, and hands out co-members in non-increasing Jaccard order
// (ties by id). Exhausts after every reachable lattice co-member.
class NnaStream {
public:
    NnaStream(const ConceptLattice& lat, const SparseBipartiteDataset& rows,
              ObjectIndex o);

    std::optional<ObjectIndex> next();

private:
    struct FringeLess;
    struct ProspectEntry {
        double j;
        ObjectIndex obj;
        bool operator<(const ProspectEntry& r) const {
            if (j != r.j) return j < r.j;  // max-heap on J, then min id
            return obj > r.obj;
        }
    };

    void enqueue_concept(ConceptId c);
    void expand(ConceptId c);
    bool guard_passes(const ProspectEntry& head) const;

    const ConceptLattice& lat_;
    const SparseBipartiteDataset& rows_;
    ObjectIndex o_;
    std::size_t o_row_size_;
    std::vector<ConceptId> fringe_;  // heap, largest feature set on top
    std::priority_queue<ProspectEntry> prospects_;
    std::unordered_set<std::int32_t> seen_concepts_;
    std::unordered_set<std::int32_t> seen_objects_;
    std::optional<ConceptId> current_;  // dequeued, children not yet expanded
};

// Stream-driven k-set assembly: consecutive blocks of k-1 stream neighbors
// joined with o, pairwise-verified, first b survivors emitted in stream order.
std::vector<CliqueCandidate> nna_successors(const ConceptLattice& lat,
                                            const ModeView& view,
                                            const EdgeConstraint& constraint,
                                            ObjectIndex o, int b, int k);

// Minimal m with C(m, k) >= b.
int kcnn_m(std::int64_t b, int k);

struct KcnnResult {
    std::vector<CliqueCandidate> candidates;  // ascending (score, members)
    // true when fewer than b candidates could be produced (small concept or
    // verification attrition)
    bool shortfall = false;
};

// Single-concept candidate source: the top m = kcnn_m(b, k) co-members of o's
// widest concept (concept object order), all (k-1)-subsets joined with o,
// scored by mean distance to o, verified in score order until b survive.
// Never walks the lattice beyond that one concept lookup.
KcnnResult kcnn(const ConceptLattice& lat, const ModeView& view,
                const EdgeConstraint& constraint, ObjectIndex o, int b, int k);

} // namespace hpath
