#include "hpath/covertree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hpath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pow2(int i) { return std::ldexp(1.0, i); }

} // namespace

CoverTree::CoverTree(const SparseBipartiteDataset& d, MetricFn metric)
    : metric_(std::move(metric)) {
    if (!metric_) throw std::invalid_argument("cover tree needs a metric");
    nodes_.reserve(d.object_count());
    for (std::size_t o = 0; o < d.object_count(); ++o)
        insert(static_cast<ObjectIndex>(o));
}

double CoverTree::dist(ObjectIndex a, ObjectIndex b) const {
    double v = metric_(a, b);
    if (!(v >= 0.0) || v > 1.0)
        throw std::domain_error("cover tree metric out of [0, 1]");
    return v;
}

void CoverTree::insert(ObjectIndex p) {
    if (root_ < 0) {
        nodes_.push_back(Node{p, 0, -1, {}, {}});
        root_ = 0;
        count_ = 1;
        return;
    }

    // one exact descent up front: duplicates attach to their representative
    // and never become structural nodes
    std::vector<double> dc(nodes_.size(), -1.0);
    auto d_of = [&](int idx) {
        if (dc[idx] < 0.0) dc[idx] = dist(p, nodes_[idx].obj);
        return dc[idx];
    };

    {
        double best = kInf;
        int best_idx = -1;
        std::vector<int> cover = {root_};
        for (int i = 0; i > min_level_; --i) {
            std::vector<int> expanded;
            for (int q : cover) {
                expanded.push_back(q);
                auto it = nodes_[q].children.find(i - 1);
                if (it != nodes_[q].children.end())
                    expanded.insert(expanded.end(), it->second.begin(), it->second.end());
            }
            for (int q : expanded)
                if (d_of(q) < best) { best = d_of(q); best_idx = q; }
            double bound = best + pow2(i);
            cover.clear();
            for (int q : expanded)
                if (d_of(q) <= bound) cover.push_back(q);
        }
        for (int q : cover)
            if (d_of(q) < best) { best = d_of(q); best_idx = q; }
        if (best == 0.0) {
            nodes_[best_idx].duplicates.push_back(p);
            ++count_;
            return;
        }
    }

    // recursive insert: descend while some cover node is within 2^i, attach
    // one level below the deepest set that still covers p
    enum class Res { attached, no_parent };
    auto rec = [&](auto&& self, const std::vector<int>& qi, int i) -> Res {
        if (i < -1080) throw std::logic_error("cover tree descent underflowed");
        std::vector<int> expanded;
        for (int q : qi) {
            expanded.push_back(q);
            auto it = nodes_[q].children.find(i - 1);
            if (it != nodes_[q].children.end())
                expanded.insert(expanded.end(), it->second.begin(), it->second.end());
        }
        double dmin = kInf;
        for (int q : expanded) dmin = std::min(dmin, d_of(q));
        if (dmin > pow2(i)) return Res::no_parent;

        std::vector<int> next;
        for (int q : expanded)
            if (d_of(q) <= pow2(i)) next.push_back(q);
        if (self(self, next, i - 1) == Res::attached) return Res::attached;

        int parent = -1;
        for (int q : qi) {
            if (d_of(q) > pow2(i)) continue;
            if (parent < 0 || d_of(q) < d_of(parent) ||
                (d_of(q) == d_of(parent) && nodes_[q].obj < nodes_[parent].obj))
                parent = q;
        }
        if (parent < 0) return Res::no_parent;
        nodes_.push_back(Node{p, i - 1, parent, {}, {}});
        nodes_[parent].children[i - 1].push_back(static_cast<int>(nodes_.size()) - 1);
        min_level_ = std::min(min_level_, i - 1);
        return Res::attached;
    };

    std::vector<int> top = {root_};
    if (rec(rec, top, 0) != Res::attached)
        throw std::logic_error("cover tree insert failed to place a point");
    ++count_;
}

std::vector<CoverTree::Neighbor> CoverTree::nearest(
    ObjectIndex o, std::size_t n, std::span<const ObjectIndex> exclude) const {
    if (root_ < 0 || n == 0) return {};

    std::vector<ObjectIndex> banned(exclude.begin(), exclude.end());
    banned.push_back(o);
    std::sort(banned.begin(), banned.end());
    banned.erase(std::unique(banned.begin(), banned.end()), banned.end());
    auto admissible = [&](ObjectIndex x) {
        return !std::binary_search(banned.begin(), banned.end(), x);
    };
    auto node_yield = [&](const Node& nd) {
        std::size_t c = admissible(nd.obj) ? 1 : 0;
        for (ObjectIndex dup : nd.duplicates)
            if (admissible(dup)) ++c;
        return c;
    };

    std::vector<double> dc(nodes_.size(), -1.0);
    auto d_of = [&](int idx) {
        if (dc[idx] < 0.0) dc[idx] = dist(o, nodes_[idx].obj);
        return dc[idx];
    };

    // nth smallest admissible candidate distance in the working set, counting
    // each node once per admissible object it carries
    auto kth_best = [&](const std::vector<int>& set) {
        std::vector<std::pair<double, std::size_t>> have;
        for (int q : set) {
            std::size_t y = node_yield(nodes_[q]);
            if (y > 0) have.emplace_back(d_of(q), y);
        }
        std::sort(have.begin(), have.end());
        std::size_t left = n;
        for (const auto& [dv, y] : have) {
            if (y >= left) return dv;
            left -= y;
        }
        return kInf;
    };

    std::vector<int> cover = {root_};
    for (int i = 0; i > min_level_; --i) {
        std::vector<int> expanded;
        for (int q : cover) {
            expanded.push_back(q);
            auto it = nodes_[q].children.find(i - 1);
            if (it != nodes_[q].children.end())
                expanded.insert(expanded.end(), it->second.begin(), it->second.end());
        }
        double bound = kth_best(expanded);
        if (bound < kInf) bound += pow2(i);
        cover.clear();
        for (int q : expanded)
            if (d_of(q) <= bound) cover.push_back(q);
    }

    std::vector<Neighbor> out;
    for (int q : cover) {
        const Node& nd = nodes_[q];
        if (admissible(nd.obj)) out.push_back({nd.obj, d_of(q)});
        for (ObjectIndex dup : nd.duplicates)
            if (admissible(dup)) out.push_back({dup, d_of(q)});
    }
    std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.object < b.object;
    });
    if (out.size() > n) out.resize(n);
    return out;
}

void CoverTree::audit_invariants() const {
    if (root_ < 0) return;
    if (nodes_[root_].level != 0 || nodes_[root_].parent != -1)
        throw std::logic_error("root must sit at level 0 with no parent");

    for (std::size_t idx = 0; idx < nodes_.size(); ++idx) {
        const Node& nd = nodes_[idx];
        for (const auto& [lvl, kids] : nd.children) {
            if (lvl >= nd.level)
                throw std::logic_error("child hung at or above its parent's level");
            for (int k : kids) {
                if (nodes_[k].level != lvl)
                    throw std::logic_error("child level disagrees with its slot");
                if (nodes_[k].parent != static_cast<int>(idx))
                    throw std::logic_error("child points at the wrong parent");
                if (dist(nd.obj, nodes_[k].obj) > pow2(lvl + 1))
                    throw std::logic_error("covering violated");
            }
        }
        for (ObjectIndex dup : nd.duplicates)
            if (dist(nd.obj, dup) != 0.0)
                throw std::logic_error("duplicate not at distance zero");
    }

    for (std::size_t a = 0; a < nodes_.size(); ++a) {
        for (std::size_t b = a + 1; b < nodes_.size(); ++b) {
            int lvl = std::min(nodes_[a].level, nodes_[b].level);
            if (dist(nodes_[a].obj, nodes_[b].obj) <= pow2(lvl))
                throw std::logic_error("separation violated");
        }
    }
}

} // namespace hpath
