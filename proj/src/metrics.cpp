#include "hpath/metrics.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace hpath {

namespace {

struct SetOverlap {
    std::size_t common = 0;
    std::size_t only_a = 0;
    std::size_t only_b = 0;
};

SetOverlap overlap(std::span<const FeatureWeight> ra, std::span<const FeatureWeight> rb) {
    SetOverlap s;
    auto i = ra.begin();
    auto j = rb.begin();
    while (i != ra.end() && j != rb.end()) {
        if (i->feature < j->feature) { ++s.only_a; ++i; }
        else if (j->feature < i->feature) { ++s.only_b; ++j; }
        else { ++s.common; ++i; ++j; }
    }
    s.only_a += ra.end() - i;
    s.only_b += rb.end() - j;
    return s;
}

} // namespace

double jaccard(const SparseBipartiteDataset& d, ObjectIndex a, ObjectIndex b) {
    auto s = overlap(d.row(a), d.row(b));
    std::size_t uni = s.common + s.only_a + s.only_b;
    if (uni == 0) return 1.0;
    return static_cast<double>(s.common) / static_cast<double>(uni);
}

double soergel(const SparseBipartiteDataset& d, ObjectIndex a, ObjectIndex b) {
    if (d.weighted())
        throw std::invalid_argument("binary distance requested on weighted data");
    return 1.0 - jaccard(d, a, b);
}

double weighted_soergel(const SparseBipartiteDataset& d, ObjectIndex a, ObjectIndex b) {
    auto ra = d.row(a);
    auto rb = d.row(b);
    double num = 0.0;
    double den = 0.0;
    auto i = ra.begin();
    auto j = rb.begin();
    while (i != ra.end() && j != rb.end()) {
        if (i->feature < j->feature) { num += i->weight; den += i->weight; ++i; }
        else if (j->feature < i->feature) { num += j->weight; den += j->weight; ++j; }
        else {
            num += std::abs(i->weight - j->weight);
            den += std::max(i->weight, j->weight);
            ++i; ++j;
        }
    }
    for (; i != ra.end(); ++i) { num += i->weight; den += i->weight; }
    for (; j != rb.end(); ++j) { num += j->weight; den += j->weight; }
    if (den == 0.0) return 0.0;
    return num / den;
}

double mixed_soergel_set(const TruncatedDataset& t, ObjectIndex a, ObjectIndex b) {
    auto s = overlap(t.base.row(a), t.base.row(b));
    double uniq = static_cast<double>(s.only_a + s.only_b);
    double den = uniq + static_cast<double>(s.common) +
                 static_cast<double>(t.truncated_count);
    if (den == 0.0) return 0.0;
    return uniq / den;
}

double mixed_soergel_weighted(const TruncatedDataset& t, ObjectIndex a, ObjectIndex b) {
    auto ra = t.base.row(a);
    auto rb = t.base.row(b);
    std::size_t only_a = 0;
    std::size_t only_b = 0;
    double common_diff = 0.0;
    double common_max = 0.0;
    auto i = ra.begin();
    auto j = rb.begin();
    while (i != ra.end() && j != rb.end()) {
        if (i->feature < j->feature) { ++only_a; ++i; }
        else if (j->feature < i->feature) { ++only_b; ++j; }
        else {
            common_diff += std::abs(i->weight - j->weight);
            common_max += std::max(i->weight, j->weight);
            ++i; ++j;
        }
    }
    only_a += ra.end() - i;
    only_b += rb.end() - j;

    double floor_mass = static_cast<double>(only_a) * t.min_weight[a] +
                        static_cast<double>(only_b) * t.min_weight[b];
    double hidden_mass = static_cast<double>(t.truncated_count) *
                         std::max(t.max_weight[a], t.max_weight[b]);
    double num = floor_mass + common_diff;
    double den = floor_mass + common_max + hidden_mass;
    if (den == 0.0) return 0.0;
    return num / den;
}

} // namespace hpath
