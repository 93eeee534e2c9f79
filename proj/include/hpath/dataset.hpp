#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hpath/errors.hpp"

namespace hpath {

using ObjectIndex = std::int32_t;
using FeatureIndex = std::int32_t;

struct FeatureWeight {
    FeatureIndex feature;
    double weight;
};

// One (object, feature, weight) relation as read from a TSV line.
struct Triple {
    std::string object;
    std::string feature;
    double weight = 1.0;
};

// Sparse bipartite objects-x-features relation with optional positive weights.
//
// Ids are interned to dense indices; index order equals lexicographic id order,
// so integer comparisons double as id comparisons everywhere downstream.
// Rows (per object) and columns (per feature) are sorted arrays; all set
// operations run as merges over them. Immutable after construction.
class SparseBipartiteDataset {
public:
    SparseBipartiteDataset() = default;

    // Parses "object<TAB>feature[<TAB>weight]" lines. '#'-prefixed lines and
    // blank lines are skipped. Duplicate pairs: last weight wins. Weights must
    // be positive; a weight column on a non-weighted load is a parse error.
    static SparseBipartiteDataset load_triples(std::istream& in, bool weighted);

    // Direct assembly path used by truncation and the deserializers.
    // object_universe lists every object id (superset of the ids in entries);
    // allow_empty_objects permits objects with no relations (truncation only).
    static SparseBipartiteDataset assemble(std::vector<Triple> entries,
                                           std::vector<std::string> object_universe,
                                           bool weighted, bool allow_empty_objects);

    std::size_t object_count() const noexcept { return object_ids_.size(); }
    std::size_t feature_count() const noexcept { return feature_ids_.size(); }
    std::size_t relation_count() const noexcept { return relations_; }
    bool weighted() const noexcept { return weighted_; }

    const std::string& object_id(ObjectIndex o) const { return object_ids_.at(o); }
    const std::string& feature_id(FeatureIndex f) const { return feature_ids_.at(f); }
    ObjectIndex object_index(std::string_view id) const;    // throws std::out_of_range
    FeatureIndex feature_index(std::string_view id) const;  // throws std::out_of_range
    std::optional<ObjectIndex> try_object_index(std::string_view id) const noexcept;
    std::optional<FeatureIndex> try_feature_index(std::string_view id) const noexcept;

    std::span<const FeatureWeight> row(ObjectIndex o) const;
    std::span<const ObjectIndex> column(FeatureIndex f) const;
    std::size_t row_size(ObjectIndex o) const { return row(o).size(); }
    std::vector<FeatureIndex> row_features(ObjectIndex o) const;
    double weight(ObjectIndex o, FeatureIndex f) const noexcept;  // 0 when absent

    // o(F): objects carrying every feature of F. o({}) is the whole object set.
    std::vector<ObjectIndex> objects_of(std::span<const FeatureIndex> features) const;
    // f(O): features common to every object of O. f({}) is the whole feature set.
    std::vector<FeatureIndex> features_of(std::span<const ObjectIndex> objects) const;
    // c(F) = f(o(F)).
    std::vector<FeatureIndex> closure(std::span<const FeatureIndex> features) const;

    std::size_t shared_feature_count(ObjectIndex a, ObjectIndex b) const;

    // Canonical TSV re-emission: objects in id order, features in id order,
    // weights in shortest round-trip decimal form (weighted datasets only).
    void serialize(std::ostream& out) const;

private:
    bool weighted_ = false;
    std::size_t relations_ = 0;
    std::vector<std::string> object_ids_;   // sorted
    std::vector<std::string> feature_ids_;  // sorted
    std::unordered_map<std::string, ObjectIndex> object_lookup_;
    std::unordered_map<std::string, FeatureIndex> feature_lookup_;
    std::vector<std::size_t> row_offsets_;  // CSR over rows_
    std::vector<FeatureWeight> rows_;
    std::vector<std::size_t> col_offsets_;  // CSR over cols_
    std::vector<ObjectIndex> cols_;
};

// Result of projecting a dataset onto a retained feature subset. The base keeps
// every object (possibly with an empty row) and exactly the retained features.
// Per-object weight aggregates are taken over the FULL original vectors: they
// are what the reduced-view distance bounds need to stay on the safe side.
struct TruncatedDataset {
    SparseBipartiteDataset base;
    std::size_t truncated_count = 0;         // |original features| - |retained|
    std::vector<double> min_weight;          // per object, over the full row
    std::vector<double> max_weight;          // per object, over the full row
    std::vector<ObjectIndex> empty_objects;  // objects whose projection is empty
};

TruncatedDataset truncate(const SparseBipartiteDataset& d,
                          std::span<const FeatureIndex> retained);

void save_truncated(const TruncatedDataset& t, std::ostream& out);
TruncatedDataset load_truncated(std::istream& in);

} // namespace hpath
