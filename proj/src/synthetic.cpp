#include "hpath/synthetic.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpath {

namespace {

std::string padded(const char* prefix, int value, int width) {
    std::string digits = std::to_string(value);
    std::string s(prefix);
    s.append(static_cast<std::size_t>(width) - digits.size(), '0');
    s += digits;
    return s;
}

int digits_for(int count) {
    int w = 1;
    for (int v = count - 1; v >= 10; v /= 10) ++w;
    return w;
}

} // namespace

SparseBipartiteDataset make_planted_clusters(const SyntheticSpec& spec) {
    if (spec.objects < 1 || spec.groups < 1 || spec.features_per_group < 1)
        throw std::invalid_argument("cluster spec needs positive sizes");
    if (spec.groups > spec.objects)
        throw std::invalid_argument("more groups than objects");
    if (spec.p_in < 0.0 || spec.p_in > 1.0 || spec.p_out < 0.0 || spec.p_out > 1.0)
        throw std::invalid_argument("probabilities must lie in [0, 1]");
    if (spec.weighted && (spec.weight_min < 1 || spec.weight_max < spec.weight_min))
        throw std::invalid_argument("bad weight range");

    const int nf = spec.groups * spec.features_per_group;
    const int ow = digits_for(spec.objects);
    const int fw = digits_for(nf);

    std::mt19937_64 rng(spec.seed);
    auto coin = [&rng](double p) {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
    };
    auto weight_draw = [&rng, &spec] {
        if (!spec.weighted) return 1.0;
        auto span = static_cast<std::uint64_t>(spec.weight_max - spec.weight_min + 1);
        return static_cast<double>(spec.weight_min + static_cast<int>(rng() % span));
    };

    auto group_of_object = [&spec](int o) {
        return static_cast<int>(static_cast<long long>(o) * spec.groups / spec.objects);
    };

    std::vector<std::vector<std::pair<int, double>>> picked(spec.objects);
    std::vector<int> column_degree(nf, 0);
    for (int o = 0; o < spec.objects; ++o) {
        int g = group_of_object(o);
        for (int f = 0; f < nf; ++f) {
            bool in_block = f / spec.features_per_group == g;
            if (!coin(in_block ? spec.p_in : spec.p_out)) continue;
            picked[o].emplace_back(f, weight_draw());
            ++column_degree[f];
        }
    }

    // no object may end up featureless
    for (int o = 0; o < spec.objects; ++o) {
        if (!picked[o].empty()) continue;
        int g = group_of_object(o);
        int f = g * spec.features_per_group +
                static_cast<int>(rng() % static_cast<std::uint64_t>(spec.features_per_group));
        picked[o].emplace_back(f, weight_draw());
        ++column_degree[f];
    }
    // nor any feature unused: hand it to the first object of its group
    for (int f = 0; f < nf; ++f) {
        if (column_degree[f] > 0) continue;
        int g = f / spec.features_per_group;
        int o = (g * spec.objects + spec.groups - 1) / spec.groups;
        while (group_of_object(o) != g) ++o;
        picked[o].emplace_back(f, weight_draw());
        ++column_degree[f];
    }

    std::vector<Triple> entries;
    for (int o = 0; o < spec.objects; ++o)
        for (const auto& [f, w] : picked[o])
            entries.push_back(Triple{padded("o", o, ow), padded("f", f, fw), w});
    return SparseBipartiteDataset::assemble(std::move(entries), {}, spec.weighted, false);
}

} // namespace hpath
