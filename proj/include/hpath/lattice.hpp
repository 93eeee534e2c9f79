#pragma once

#include <iosfwd>
#include <vector>

#include "hpath/dataset.hpp"

namespace hpath {

using ConceptId = std::int32_t;

// A closed feature set with its inducing object set. Children are relaxations:
// a child's feature set is a maximal proper closed subset of this one's, so
// walking children trades specificity for coverage. Object lists are ordered
// by descending row size, ties by id.
struct LatticeConcept {
    std::vector<FeatureIndex> features;  // sorted
    std::vector<ObjectIndex> objects;    // (row size desc, id asc)
    std::vector<ConceptId> children;
    std::vector<ConceptId> parents;
};

// All closed feature sets whose support reaches minsup, plus the bottom
// concept (closure of the empty set over the whole object set), wired with
// the covering relation. Concept ids follow the lexicographic order of the
// feature index vectors, so id order is deterministic. Immutable after build.
class ConceptLattice {
public:
    int minsup() const noexcept { return minsup_; }
    std::size_t size() const noexcept { return concepts_.size(); }
    const LatticeConcept& concept_at(ConceptId c) const { return concepts_.at(c); }
    ConceptId bottom() const noexcept { return bottom_; }
    // True when minsup exceeds the object count and only the bottom survives.
    bool bottom_below_minsup() const noexcept { return bottom_below_minsup_; }

    // Every concept whose object set contains o, ascending id order.
    std::span<const ConceptId> concepts_of(ObjectIndex o) const;
    // Maximal concepts containing o (no parent also contains o).
    std::span<const ConceptId> top_concepts(ObjectIndex o) const;
    // Concept containing o with the largest feature set; ties resolve to the
    // lexicographically smallest feature set.
    ConceptId widest_concept_for(ObjectIndex o) const;

    std::size_t leaf_count() const;  // parentless (maximal) concepts

    friend ConceptLattice build_lattice(const SparseBipartiteDataset& d, int minsup);
    friend ConceptLattice load_lattice(std::istream& in, const SparseBipartiteDataset& d);

private:
    void build_indexes(std::size_t object_count);

    int minsup_ = 1;
    bool bottom_below_minsup_ = false;
    ConceptId bottom_ = 0;
    std::vector<LatticeConcept> concepts_;
    // per-object concept membership and top-concept lists, CSR layout
    std::vector<std::size_t> member_offsets_;
    std::vector<ConceptId> member_lists_;
    std::vector<std::size_t> top_offsets_;
    std::vector<ConceptId> top_lists_;
};

// Mines every closed feature set with support >= minsup (minsup >= 1).
ConceptLattice build_lattice(const SparseBipartiteDataset& d, int minsup);

// Text persistence. Concept lines carry string ids, so loading needs the
// dataset for re-interning. Round-trips bit-exactly; a trailing FNV-1a 64
// checksum over header+body guards integrity.
void save_lattice(const ConceptLattice& lat, const SparseBipartiteDataset& d,
                  std::ostream& out);
ConceptLattice load_lattice(std::istream& in, const SparseBipartiteDataset& d);

// Union of all concept feature sets (the retained set for truncation).
std::vector<FeatureIndex> lattice_feature_union(const ConceptLattice& lat);

} // namespace hpath
