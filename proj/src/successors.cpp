#include "hpath/successors.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "hpath/metrics.hpp"

namespace hpath {

namespace {

void require_group_params(int b, int k) {
    if (k < 2) throw std::invalid_argument("group size k must be at least 2");
    if (b < 1) throw std::invalid_argument("breadth b must be at least 1");
}

bool pairs_satisfy(const ModeView& view, const EdgeConstraint& constraint,
                   const std::vector<ObjectIndex>& members) {
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (!view.satisfies(constraint, members[i], members[j])) return false;
    return true;
}

double mean_distance_from(const ModeView& view, ObjectIndex o,
                          std::span<const ObjectIndex> others) {
    double s = 0.0;
    for (ObjectIndex x : others) s += view.metric(o, x);
    return s / static_cast<double>(others.size());
}

} // namespace

std::vector<CoverTree::Neighbor> covertree_successors(const CoverTree& tree,
                                                      const ModeView& view,
                                                      const EdgeConstraint& constraint,
                                                      ObjectIndex o, int b) {
    if (b < 1) throw std::invalid_argument("breadth b must be at least 1");
    std::size_t want = static_cast<std::size_t>(b);
    std::size_t probe = std::max<std::size_t>(want, 16);
    for (;;) {
        auto found = tree.nearest(o, probe);
        std::vector<CoverTree::Neighbor> ok;
        for (const auto& nb : found) {
            if (!view.satisfies(constraint, o, nb.object)) continue;
            ok.push_back(nb);
            if (ok.size() == want) return ok;
        }
        if (found.size() < probe) return ok;  // index exhausted
        probe *= 2;
    }
}

struct NnaStream::FringeLess {
    const ConceptLattice* lat;
    bool operator()(ConceptId a, ConceptId b) const {
        const auto& fa = lat->concept_at(a).features;
        const auto& fb = lat->concept_at(b).features;
        if (fa.size() != fb.size()) return fa.size() < fb.size();
        return fa > fb;  // heap top gets the lexicographically smallest
    }
};

NnaStream::NnaStream(const ConceptLattice& lat, const SparseBipartiteDataset& rows,
                     ObjectIndex o)
    : lat_(lat), rows_(rows), o_(o), o_row_size_(rows.row(o).size()) {
    for (ConceptId c : lat_.top_concepts(o)) enqueue_concept(c);
}

void NnaStream::enqueue_concept(ConceptId c) {
    if (!seen_concepts_.insert(c).second) return;
    fringe_.push_back(c);
    std::push_heap(fringe_.begin(), fringe_.end(), FringeLess{&lat_});
}

void NnaStream::expand(ConceptId c) {
    for (ObjectIndex x : lat_.concept_at(c).objects) {
        if (x == o_) continue;
        if (!seen_objects_.insert(x).second) continue;
        prospects_.push(ProspectEntry{jaccard(rows_, o_, x), x});
    }
}

// Emitting early is sound only when the best prospect provably beats anything
// a narrower concept could still contribute; the bound compares the prospect's
// overlap ratio against the widest unexpanded concept.
bool NnaStream::guard_passes(const ProspectEntry& head) const {
    if (fringe_.empty()) return true;
    const auto& next_features = lat_.concept_at(fringe_.front()).features;
    if (next_features.empty()) return false;
    double bound =
        static_cast<double>(o_row_size_) / static_cast<double>(next_features.size());
    return head.j > bound;
}

std::optional<ObjectIndex> NnaStream::next() {
    for (;;) {
        if (current_) {
            for (ConceptId ch : lat_.concept_at(*current_).children) enqueue_concept(ch);
            current_.reset();
            continue;
        }
        if (fringe_.empty()) break;
        if (!prospects_.empty() && guard_passes(prospects_.top())) break;
        std::pop_heap(fringe_.begin(), fringe_.end(), FringeLess{&lat_});
        ConceptId c = fringe_.back();
        fringe_.pop_back();
        expand(c);
        current_ = c;
    }
    if (prospects_.empty()) return std::nullopt;
    ProspectEntry e = prospects_.top();
    prospects_.pop();
    return e.obj;
}

std::vector<CliqueCandidate> nna_successors(const ConceptLattice& lat,
                                            const ModeView& view,
                                            const EdgeConstraint& constraint,
                                            ObjectIndex o, int b, int k) {
    require_group_params(b, k);
    NnaStream stream(lat, view.rows(), o);
    std::vector<CliqueCandidate> out;
    while (out.size() < static_cast<std::size_t>(b)) {
        std::vector<ObjectIndex> block;
        while (block.size() + 1 < static_cast<std::size_t>(k)) {
            auto nb = stream.next();
            if (!nb) return out;  // stream dry mid-block: the block is lost
            block.push_back(*nb);
        }
        CliqueCandidate cand;
        cand.score = mean_distance_from(view, o, block);
        cand.members = std::move(block);
        cand.members.push_back(o);
        std::sort(cand.members.begin(), cand.members.end());
        cand.verified = pairs_satisfy(view, constraint, cand.members);
        if (cand.verified) out.push_back(std::move(cand));
    }
    return out;
}

int kcnn_m(std::int64_t b, int k) {
    if (b < 1) throw std::invalid_argument("breadth b must be at least 1");
    if (k < 1) throw std::invalid_argument("group size k must be at least 1");

    // C(m, k) capped just past b so the comparison never overflows
    auto reaches = [&](std::int64_t m) {
        unsigned __int128 r = 1;
        for (std::int64_t i = 1; i <= k; ++i) {
            r = r * static_cast<unsigned __int128>(m - k + i) /
                static_cast<unsigned __int128>(i);
            if (r > static_cast<unsigned __int128>(b) * 2) return true;
        }
        return r >= static_cast<unsigned __int128>(b);
    };

    std::int64_t lo = k;
    std::int64_t hi = k;
    while (!reaches(hi)) hi = hi * 2 + 1;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (reaches(mid)) hi = mid;
        else lo = mid + 1;
    }
    return static_cast<int>(lo);
}

KcnnResult kcnn(const ConceptLattice& lat, const ModeView& view,
                const EdgeConstraint& constraint, ObjectIndex o, int b, int k) {
    require_group_params(b, k);

    const auto& home = lat.concept_at(lat.widest_concept_for(o));
    std::vector<ObjectIndex> pool;
    std::size_t m = static_cast<std::size_t>(kcnn_m(b, k));
    for (ObjectIndex x : home.objects) {
        if (x == o) continue;
        pool.push_back(x);
        if (pool.size() == m) break;
    }

    KcnnResult res;
    std::size_t pick = static_cast<std::size_t>(k) - 1;
    if (pool.size() >= pick) {
        std::vector<std::size_t> idx(pick);
        for (std::size_t i = 0; i < pick; ++i) idx[i] = i;
        for (;;) {
            std::vector<ObjectIndex> others;
            others.reserve(pick);
            for (std::size_t i : idx) others.push_back(pool[i]);

            CliqueCandidate cand;
            cand.score = mean_distance_from(view, o, others);
            cand.members = std::move(others);
            cand.members.push_back(o);
            std::sort(cand.members.begin(), cand.members.end());
            res.candidates.push_back(std::move(cand));

            // next combination of indices into the pool
            std::size_t t = pick;
            while (t > 0 && idx[t - 1] == pool.size() - pick + t - 1) --t;
            if (t == 0) break;
            ++idx[t - 1];
            for (std::size_t i = t; i < pick; ++i) idx[i] = idx[i - 1] + 1;
        }
    }

    std::sort(res.candidates.begin(), res.candidates.end(),
              [](const CliqueCandidate& a, const CliqueCandidate& b2) {
                  if (a.score != b2.score) return a.score < b2.score;
                  return a.members < b2.members;
              });

    std::size_t survivors = 0;
    for (auto& cand : res.candidates) {
        if (survivors == static_cast<std::size_t>(b)) break;
        cand.verified = pairs_satisfy(view, constraint, cand.members);
        if (cand.verified) ++survivors;
    }
    res.shortfall = survivors < static_cast<std::size_t>(b);
    return res;
}

} // namespace hpath
