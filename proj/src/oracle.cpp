#include "hpath/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>

namespace hpath {

std::size_t MaterializedNetwork::edge_count() const {
    std::size_t s = 0;
    for (const auto& a : adjacency) s += a.size();
    return s / 2;
}

bool MaterializedNetwork::has_edge(ObjectIndex a, ObjectIndex b) const {
    if (a < 0 || static_cast<std::size_t>(a) >= n) return false;
    const auto& adj = adjacency[a];
    auto it = std::lower_bound(adj.begin(), adj.end(), b,
                               [](const std::pair<ObjectIndex, double>& e,
                                  ObjectIndex key) { return e.first < key; });
    return it != adj.end() && it->first == b;
}

std::size_t default_oracle_cap() {
    if (const char* env = std::getenv("HPATH_ORACLE_CAP")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 500;
}

MaterializedNetwork materialize(const ModeView& view, const EdgeConstraint& constraint,
                                std::size_t cap) {
    const std::size_t n = view.rows().object_count();
    if (n > cap)
        throw std::length_error("refusing to materialize " + std::to_string(n) +
                                " objects (cap " + std::to_string(cap) + ")");
    MaterializedNetwork net;
    net.n = n;
    net.adjacency.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            ObjectIndex a = static_cast<ObjectIndex>(i);
            ObjectIndex b = static_cast<ObjectIndex>(j);
            if (!view.satisfies(constraint, a, b)) continue;
            double w = view.metric(a, b);
            net.adjacency[i].emplace_back(b, w);
            net.adjacency[j].emplace_back(a, w);
        }
    }
    return net;
}

std::optional<OraclePath> oracle_shortest_path(const MaterializedNetwork& net,
                                               ObjectIndex s, ObjectIndex t) {
    if (s < 0 || static_cast<std::size_t>(s) >= net.n || t < 0 ||
        static_cast<std::size_t>(t) >= net.n)
        throw std::out_of_range("path endpoint outside the network");

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(net.n, kInf);
    std::vector<ObjectIndex> pred(net.n, -1);
    std::vector<char> settled(net.n, 0);

    using Entry = std::pair<double, ObjectIndex>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
    dist[s] = 0.0;
    open.emplace(0.0, s);

    while (!open.empty()) {
        auto [du, u] = open.top();
        open.pop();
        if (settled[u]) continue;
        settled[u] = 1;
        for (const auto& [v, w] : net.adjacency[u]) {
            if (settled[v]) continue;
            double nd = du + w;
            if (nd < dist[v] || (nd == dist[v] && pred[v] >= 0 && u < pred[v])) {
                dist[v] = nd;
                pred[v] = u;
                open.emplace(nd, v);
            }
        }
    }

    if (dist[t] == kInf) return std::nullopt;
    OraclePath p;
    p.cost = dist[t];
    for (ObjectIndex v = t; v >= 0; v = pred[v]) p.chain.push_back(v);
    std::reverse(p.chain.begin(), p.chain.end());
    return p;
}

std::vector<std::vector<ObjectIndex>> enumerate_cliques(const MaterializedNetwork& net,
                                                        int k) {
    if (k < 1) throw std::invalid_argument("clique size must be positive");
    std::vector<std::vector<ObjectIndex>> out;
    std::vector<ObjectIndex> stack;

    auto rec = [&](auto&& self, ObjectIndex from) -> void {
        if (stack.size() == static_cast<std::size_t>(k)) {
            out.push_back(stack);
            return;
        }
        for (ObjectIndex v = from; static_cast<std::size_t>(v) < net.n; ++v) {
            bool ok = true;
            for (ObjectIndex u : stack)
                if (!net.has_edge(u, v)) { ok = false; break; }
            if (!ok) continue;
            stack.push_back(v);
            self(self, v + 1);
            stack.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<ClosedSet> enumerate_closed_sets(const SparseBipartiteDataset& d,
                                             int minsup) {
    if (minsup < 1) throw std::invalid_argument("minsup must be at least 1");
    const std::size_t nf = d.feature_count();
    if (nf > 20)
        throw std::length_error("closed-set brute force capped at 20 features");

    std::vector<ObjectIndex> all(d.object_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<ObjectIndex>(i);
    std::vector<FeatureIndex> bottom = d.features_of(all);

    std::vector<ClosedSet> out;
    for (std::uint64_t mask = 0; mask < (1ULL << nf); ++mask) {
        std::vector<FeatureIndex> fs;
        for (std::size_t f = 0; f < nf; ++f)
            if (mask & (1ULL << f)) fs.push_back(static_cast<FeatureIndex>(f));
        auto objs = d.objects_of(fs);
        if (d.features_of(objs) != fs) continue;  // not closed
        bool keep = objs.size() >= static_cast<std::size_t>(minsup) || fs == bottom;
        if (!keep) continue;
        out.push_back(ClosedSet{std::move(fs), std::move(objs)});
    }
    std::sort(out.begin(), out.end(), [](const ClosedSet& a, const ClosedSet& b) {
        return a.features < b.features;
    });
    return out;
}

} // namespace hpath
