#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hpath/dataset.hpp"

namespace testutil {

using Rat = boost::multiprecision::cpp_rational;

inline hpath::SparseBipartiteDataset make_dataset(const std::string& text,
                                                  bool weighted = false) {
    std::istringstream in(text);
    return hpath::SparseBipartiteDataset::load_triples(in, weighted);
}

inline const char* kToy3x3 =
    "a\tx\n"
    "a\ty\n"
    "b\ty\n"
    "b\tz\n"
    "c\tz\n";

inline const char* kToy3x3Weighted =
    "a\tx\t2\n"
    "a\ty\t1\n"
    "b\ty\t3\n"
    "b\tz\t1\n"
    "c\tz\t1\n";

inline const char* kMarkers8 =
    "m1\tuA\nm1\tuD\nm1\tuE\n"
    "m2\tuD\nm2\tuE\nm2\tuF\n"
    "m3\tuA\nm3\tuB\nm3\tuD\nm3\tuE\n"
    "m4\tuC\nm4\tuF\n"
    "m5\tuA\nm5\tuD\nm5\tuE\n"
    "m6\tuA\nm6\tuB\n"
    "m7\tuA\nm7\tuD\nm7\tuE\n"
    "m8\tuC\nm8\tuG\n";

inline hpath::SparseBipartiteDataset toy3x3() { return make_dataset(kToy3x3); }
inline hpath::SparseBipartiteDataset toy3x3_weighted() {
    return make_dataset(kToy3x3Weighted, true);
}
inline hpath::SparseBipartiteDataset markers8() { return make_dataset(kMarkers8); }

inline std::string padded_id(char prefix, int v) {
    std::string s(1, prefix);
    if (v < 100) s += '0';
    if (v < 10) s += '0';
    s += std::to_string(v);
    return s;
}

// random sparse dataset; every object keeps at least one feature
inline hpath::SparseBipartiteDataset random_dataset(std::mt19937_64& rng,
                                                    int max_objects, int max_features,
                                                    double density,
                                                    bool weighted = false,
                                                    int weight_max = 9) {
    int n_obj = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_objects - 1));
    int n_feat = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_features));
    auto coin = [&rng](double p) {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
    };
    std::vector<hpath::Triple> triples;
    for (int o = 0; o < n_obj; ++o) {
        bool any = false;
        for (int f = 0; f < n_feat; ++f) {
            if (!coin(density)) continue;
            double w = weighted ? 1.0 + static_cast<double>(
                                            rng() % static_cast<std::uint64_t>(weight_max))
                                : 1.0;
            triples.push_back({padded_id('o', o), padded_id('f', f), w});
            any = true;
        }
        if (!any) {
            int f = static_cast<int>(rng() % static_cast<std::uint64_t>(n_feat));
            double w = weighted ? 1.0 + static_cast<double>(
                                            rng() % static_cast<std::uint64_t>(weight_max))
                                : 1.0;
            triples.push_back({padded_id('o', o), padded_id('f', f), w});
        }
    }
    return hpath::SparseBipartiteDataset::assemble(std::move(triples), {}, weighted,
                                                   false);
}

// random proper nonempty retained feature subset
inline std::vector<hpath::FeatureIndex> random_retained(std::mt19937_64& rng,
                                                        const hpath::SparseBipartiteDataset& d) {
    std::vector<hpath::FeatureIndex> keep;
    for (std::size_t f = 0; f < d.feature_count(); ++f)
        if (rng() % 2 == 0) keep.push_back(static_cast<hpath::FeatureIndex>(f));
    if (keep.empty())
        keep.push_back(static_cast<hpath::FeatureIndex>(rng() % d.feature_count()));
    return keep;
}

// exact-arithmetic references, straight from the definitions

inline Rat rat_jaccard(const hpath::SparseBipartiteDataset& d, hpath::ObjectIndex a,
                       hpath::ObjectIndex b) {
    auto ra = d.row(a);
    auto rb = d.row(b);
    std::size_t common = 0;
    auto i = ra.begin();
    auto j = rb.begin();
    while (i != ra.end() && j != rb.end()) {
        if (i->feature < j->feature) ++i;
        else if (j->feature < i->feature) ++j;
        else { ++common; ++i; ++j; }
    }
    std::size_t uni = ra.size() + rb.size() - common;
    if (uni == 0) return 1;
    return Rat(static_cast<long long>(common), static_cast<long long>(uni));
}

inline Rat rat_soergel(const hpath::SparseBipartiteDataset& d, hpath::ObjectIndex a,
                       hpath::ObjectIndex b) {
    return Rat(1) - rat_jaccard(d, a, b);
}

inline Rat rat_weighted_soergel(const hpath::SparseBipartiteDataset& d,
                                hpath::ObjectIndex a, hpath::ObjectIndex b) {
    auto ra = d.row(a);
    auto rb = d.row(b);
    Rat num = 0;
    Rat den = 0;
    auto i = ra.begin();
    auto j = rb.begin();
    auto r = [](double w) { return Rat(w); };
    while (i != ra.end() && j != rb.end()) {
        if (i->feature < j->feature) { num += r(i->weight); den += r(i->weight); ++i; }
        else if (j->feature < i->feature) { num += r(j->weight); den += r(j->weight); ++j; }
        else {
            Rat wa = r(i->weight);
            Rat wb = r(j->weight);
            num += wa > wb ? wa - wb : wb - wa;
            den += wa > wb ? wa : wb;
            ++i; ++j;
        }
    }
    for (; i != ra.end(); ++i) { num += r(i->weight); den += r(i->weight); }
    for (; j != rb.end(); ++j) { num += r(j->weight); den += r(j->weight); }
    if (den == 0) return 0;
    return num / den;
}

inline Rat rat_mixed_set(const hpath::TruncatedDataset& t, hpath::ObjectIndex a,
                         hpath::ObjectIndex b) {
    auto ra = t.base.row(a);
    auto rb = t.base.row(b);
    std::size_t common = 0;
    auto i = ra.begin();
    auto j = rb.begin();
    while (i != ra.end() && j != rb.end()) {
        if (i->feature < j->feature) ++i;
        else if (j->feature < i->feature) ++j;
        else { ++common; ++i; ++j; }
    }
    Rat uniq = static_cast<long long>(ra.size() + rb.size() - 2 * common);
    Rat den = uniq + static_cast<long long>(common) +
              static_cast<long long>(t.truncated_count);
    if (den == 0) return 0;
    return uniq / den;
}

inline Rat rat_mixed_weighted(const hpath::TruncatedDataset& t, hpath::ObjectIndex a,
                              hpath::ObjectIndex b) {
    auto ra = t.base.row(a);
    auto rb = t.base.row(b);
    std::size_t only_a = 0;
    std::size_t only_b = 0;
    Rat diff = 0;
    Rat cmax = 0;
    auto r = [](double w) { return Rat(w); };
    auto i = ra.begin();
    auto j = rb.begin();
    while (i != ra.end() && j != rb.end()) {
        if (i->feature < j->feature) { ++only_a; ++i; }
        else if (j->feature < i->feature) { ++only_b; ++j; }
        else {
            Rat wa = r(i->weight);
            Rat wb = r(j->weight);
            diff += wa > wb ? wa - wb : wb - wa;
            cmax += wa > wb ? wa : wb;
            ++i; ++j;
        }
    }
    only_a += static_cast<std::size_t>(ra.end() - i);
    only_b += static_cast<std::size_t>(rb.end() - j);

    Rat floor_mass = Rat(static_cast<long long>(only_a)) * r(t.min_weight[a]) +
                     Rat(static_cast<long long>(only_b)) * r(t.min_weight[b]);
    Rat hidden = Rat(static_cast<long long>(t.truncated_count)) *
                 (t.max_weight[a] > t.max_weight[b] ? r(t.max_weight[a])
                                                    : r(t.max_weight[b]));
    Rat num = floor_mass + diff;
    Rat den = floor_mass + cmax + hidden;
    if (den == 0) return 0;
    return num / den;
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

} // namespace testutil
