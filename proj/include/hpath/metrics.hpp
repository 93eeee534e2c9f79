#pragma once

#include "hpath/dataset.hpp"

namespace hpath {

// |f(a) n f(b)| / |f(a) u f(b)|. Works on weighted data too (weights ignored).
double jaccard(const SparseBipartiteDataset& d, ObjectIndex a, ObjectIndex b);

// Binary Soergel distance. Defined as 1 - jaccard (the two are identical in
// exact arithmetic, and this form keeps the identity bit-exact in doubles).
// Rejects weighted datasets.
double soergel(const SparseBipartiteDataset& d, ObjectIndex a, ObjectIndex b);

// sum |V(a,f) - V(b,f)| / sum max(V(a,f), V(b,f)), absent features weigh 0.
double weighted_soergel(const SparseBipartiteDataset& d, ObjectIndex a, ObjectIndex b);

// Reduced-view set distance over a truncated dataset: unique-inside counts in
// the numerator; denominator adds shared-inside and the global truncated count,
// so it can only undershoot the full-data distance.
double mixed_soergel_set(const TruncatedDataset& t, ObjectIndex a, ObjectIndex b);

// Weighted reduced-view distance: unique-inside features enter at the object's
// full-vector minimum weight; truncated features enter the denominator at the
// pair's full-vector maximum weight. Never exceeds the full weighted distance.
double mixed_soergel_weighted(const TruncatedDataset& t, ObjectIndex a, ObjectIndex b);

} // namespace hpath
