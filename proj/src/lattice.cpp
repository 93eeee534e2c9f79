#include "hpath/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hpath/errors.hpp"

namespace hpath {

namespace {

struct MinedConcept {
    std::vector<FeatureIndex> features;  // sorted
    std::vector<ObjectIndex> extent;     // sorted by index
};

// Close-by-one enumeration. Each closed set is produced exactly once: an
// extension by feature j is kept only if the closure adds nothing below j.
class Miner {
public:
    Miner(const SparseBipartiteDataset& d, int minsup) : d_(d), minsup_(minsup) {}

    std::vector<MinedConcept> run() {
        std::vector<ObjectIndex> all(d_.object_count());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<ObjectIndex>(i);
        std::vector<FeatureIndex> base = d_.features_of(all);
        out_.push_back({base, all});
        recurse(base, all, 0);
        return std::move(out_);
    }

private:
    void recurse(const std::vector<FeatureIndex>& b, const std::vector<ObjectIndex>& e,
                 FeatureIndex from) {
        const auto nf = static_cast<FeatureIndex>(d_.feature_count());
        for (FeatureIndex j = from; j < nf; ++j) {
            if (std::binary_search(b.begin(), b.end(), j)) continue;
            auto col = d_.column(j);
            std::vector<ObjectIndex> narrowed;
            std::set_intersection(e.begin(), e.end(), col.begin(), col.end(),
                                  std::back_inserter(narrowed));
            if (narrowed.size() < static_cast<std::size_t>(minsup_)) continue;
            std::vector<FeatureIndex> closed = d_.features_of(narrowed);
            if (!canonical(b, closed, j)) continue;
            out_.push_back({closed, narrowed});
            recurse(closed, narrowed, j + 1);
        }
    }

    // closed may add features only at j or beyond
    static bool canonical(const std::vector<FeatureIndex>& b,
                          const std::vector<FeatureIndex>& closed, FeatureIndex j) {
        auto bi = b.begin();
        for (FeatureIndex f : closed) {
            if (f >= j) break;
            while (bi != b.end() && *bi < f) ++bi;
            if (bi == b.end() || *bi != f) return false;
        }
        return true;
    }

    const SparseBipartiteDataset& d_;
    int minsup_;
    std::vector<MinedConcept> out_;
};

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

std::vector<std::string> split_pipes(const std::string& line) {
    std::vector<std::string> segs;
    std::size_t pos = 0;
    while (true) {
        std::size_t bar = line.find('|', pos);
        if (bar == std::string::npos) { segs.push_back(line.substr(pos)); break; }
        segs.push_back(line.substr(pos, bar - pos));
        pos = bar + 1;
    }
    return segs;
}

std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string t;
    while (is >> t) out.push_back(std::move(t));
    return out;
}

// display order inside a concept: biggest rows first, then by id
std::vector<ObjectIndex> display_order(const SparseBipartiteDataset& d,
                                       std::vector<ObjectIndex> extent) {
    std::stable_sort(extent.begin(), extent.end(),
                     [&d](ObjectIndex a, ObjectIndex b) {
                         std::size_t ra = d.row(a).size();
                         std::size_t rb = d.row(b).size();
                         if (ra != rb) return ra > rb;
                         return a < b;
                     });
    return extent;
}

void wire_covers(std::vector<LatticeConcept>& concepts,
                 const std::vector<std::vector<ObjectIndex>>& extents,
                 const SparseBipartiteDataset& d) {
    std::map<std::vector<FeatureIndex>, ConceptId> by_features;
    for (std::size_t i = 0; i < concepts.size(); ++i)
        by_features[concepts[i].features] = static_cast<ConceptId>(i);

    const std::size_t n = d.object_count();
    for (std::size_t x = 0; x < concepts.size(); ++x) {
        const auto& fx = concepts[x].features;
        const auto& ex = extents[x];
        // every lower cover arises as the meet with one outside object's row
        std::vector<std::vector<FeatureIndex>> cands;
        auto ei = ex.begin();
        for (std::size_t g = 0; g < n; ++g) {
            ObjectIndex go = static_cast<ObjectIndex>(g);
            if (ei != ex.end() && *ei == go) { ++ei; continue; }
            auto rg = d.row(go);
            std::vector<FeatureIndex> meet;
            auto fi = fx.begin();
            auto ri = rg.begin();
            while (fi != fx.end() && ri != rg.end()) {
                if (*fi < ri->feature) ++fi;
                else if (ri->feature < *fi) ++ri;
                else { meet.push_back(*fi); ++fi; ++ri; }
            }
            cands.push_back(std::move(meet));
        }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

        for (std::size_t i = 0; i < cands.size(); ++i) {
            bool maximal = true;
            for (std::size_t j = 0; j < cands.size() && maximal; ++j) {
                if (i == j || cands[j].size() <= cands[i].size()) continue;
                if (std::includes(cands[j].begin(), cands[j].end(),
                                  cands[i].begin(), cands[i].end()))
                    maximal = false;
            }
            if (!maximal) continue;
            auto it = by_features.find(cands[i]);
            if (it == by_features.end())
                throw std::logic_error("cover candidate is not a mined concept");
            concepts[x].children.push_back(it->second);
            concepts[it->second].parents.push_back(static_cast<ConceptId>(x));
        }
        std::sort(concepts[x].children.begin(), concepts[x].children.end());
    }
    for (auto& c : concepts) std::sort(c.parents.begin(), c.parents.end());
}

} // namespace

std::span<const ConceptId> ConceptLattice::concepts_of(ObjectIndex o) const {
    if (o < 0 || static_cast<std::size_t>(o) + 1 >= member_offsets_.size())
        throw std::out_of_range("object index " + std::to_string(o));
    return {member_lists_.data() + member_offsets_[o],
            member_offsets_[o + 1] - member_offsets_[o]};
}

std::span<const ConceptId> ConceptLattice::top_concepts(ObjectIndex o) const {
    if (o < 0 || static_cast<std::size_t>(o) + 1 >= top_offsets_.size())
        throw std::out_of_range("object index " + std::to_string(o));
    return {top_lists_.data() + top_offsets_[o], top_offsets_[o + 1] - top_offsets_[o]};
}

ConceptId ConceptLattice::widest_concept_for(ObjectIndex o) const {
    auto members = concepts_of(o);
    ConceptId best = members.front();
    for (ConceptId c : members) {
        const auto& fc = concepts_[c].features;
        const auto& fb = concepts_[best].features;
        if (fc.size() > fb.size() || (fc.size() == fb.size() && fc < fb)) best = c;
    }
    return best;
}

std::size_t ConceptLattice::leaf_count() const {
    std::size_t n = 0;
    for (const auto& c : concepts_)
        if (c.parents.empty()) ++n;
    return n;
}

void ConceptLattice::build_indexes(std::size_t object_count) {
    std::vector<std::vector<ConceptId>> member(object_count);
    for (std::size_t i = 0; i < concepts_.size(); ++i)
        for (ObjectIndex o : concepts_[i].objects)
            member[o].push_back(static_cast<ConceptId>(i));
    for (auto& m : member) std::sort(m.begin(), m.end());

    member_offsets_.assign(object_count + 1, 0);
    top_offsets_.assign(object_count + 1, 0);
    member_lists_.clear();
    top_lists_.clear();
    for (std::size_t o = 0; o < object_count; ++o) {
        member_offsets_[o + 1] = member_offsets_[o] + member[o].size();
        member_lists_.insert(member_lists_.end(), member[o].begin(), member[o].end());
        std::size_t tops = 0;
        for (ConceptId c : member[o]) {
            bool covered = false;
            for (ConceptId p : concepts_[c].parents) {
                if (std::binary_search(member[o].begin(), member[o].end(), p)) {
                    covered = true;
                    break;
                }
            }
            if (!covered) {
                top_lists_.push_back(c);
                ++tops;
            }
        }
        top_offsets_[o + 1] = top_offsets_[o] + tops;
    }
}

ConceptLattice build_lattice(const SparseBipartiteDataset& d, int minsup) {
    if (minsup < 1) throw std::invalid_argument("minsup must be at least 1");

    std::vector<MinedConcept> mined = Miner(d, minsup).run();
    std::sort(mined.begin(), mined.end(),
              [](const MinedConcept& a, const MinedConcept& b) {
                  return a.features < b.features;
              });

    ConceptLattice lat;
    lat.minsup_ = minsup;
    lat.bottom_below_minsup_ = d.object_count() < static_cast<std::size_t>(minsup);

    std::vector<std::vector<ObjectIndex>> extents;
    extents.reserve(mined.size());
    lat.concepts_.resize(mined.size());
    for (std::size_t i = 0; i < mined.size(); ++i) {
        lat.concepts_[i].features = std::move(mined[i].features);
        extents.push_back(std::move(mined[i].extent));
        if (extents[i].size() == d.object_count())
            lat.bottom_ = static_cast<ConceptId>(i);
    }

    wire_covers(lat.concepts_, extents, d);
    for (std::size_t i = 0; i < lat.concepts_.size(); ++i)
        lat.concepts_[i].objects = display_order(d, std::move(extents[i]));
    lat.build_indexes(d.object_count());
    return lat;
}

void save_lattice(const ConceptLattice& lat, const SparseBipartiteDataset& d,
                  std::ostream& out) {
    std::ostringstream body;
    body << "HPLATTICE 1 " << lat.minsup() << ' ' << lat.size() << '\n';
    for (std::size_t i = 0; i < lat.size(); ++i) {
        const auto& c = lat.concept_at(static_cast<ConceptId>(i));
        body << i << " |";
        for (FeatureIndex f : c.features) body << ' ' << d.feature_id(f);
        body << " |";
        for (ObjectIndex o : c.objects) body << ' ' << d.object_id(o);
        body << " |";
        for (ConceptId ch : c.children) body << ' ' << ch;
        body << '\n';
    }
    std::string text = body.str();
    out << text << "checksum " << hex64(fnv1a64(text)) << '\n';
}

ConceptLattice load_lattice(std::istream& in, const SparseBipartiteDataset& d) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty lattice file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::string body = line + "\n";
    auto header = tokens(line);
    if (header.size() != 4 || header[0] != "HPLATTICE" || header[1] != "1")
        throw FormatError("bad lattice header");
    int minsup = 0;
    std::size_t count = 0;
    try {
        minsup = std::stoi(header[2]);
        count = static_cast<std::size_t>(std::stoull(header[3]));
    } catch (const std::exception&) {
        throw FormatError("bad lattice header");
    }
    if (minsup < 1) throw FormatError("lattice minsup must be at least 1");

    ConceptLattice lat;
    lat.minsup_ = minsup;
    lat.bottom_below_minsup_ = d.object_count() < static_cast<std::size_t>(minsup);
    lat.concepts_.resize(count);

    ConceptId bottom = -1;
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(in, line)) throw FormatError("lattice file truncated");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        body += line + "\n";

        auto segs = split_pipes(line);
        if (segs.size() != 4) throw FormatError("concept line needs 4 segments");
        auto head = tokens(segs[0]);
        if (head.size() != 1 || head[0] != std::to_string(i))
            throw FormatError("concept ids must run 0..n-1 in order");

        LatticeConcept& c = lat.concepts_[i];
        for (const auto& fid : tokens(segs[1])) {
            auto f = d.try_feature_index(fid);
            if (!f) throw FormatError("unknown feature '" + fid + "' in lattice");
            c.features.push_back(*f);
        }
        std::sort(c.features.begin(), c.features.end());
        c.features.erase(std::unique(c.features.begin(), c.features.end()),
                         c.features.end());
        for (const auto& oid : tokens(segs[2])) {
            auto o = d.try_object_index(oid);
            if (!o) throw FormatError("unknown object '" + oid + "' in lattice");
            c.objects.push_back(*o);
        }
        if (c.objects.empty()) throw FormatError("concept with empty object set");
        {
            auto uniq = c.objects;
            std::sort(uniq.begin(), uniq.end());
            if (std::adjacent_find(uniq.begin(), uniq.end()) != uniq.end())
                throw FormatError("duplicate object in a concept line");
        }
        for (const auto& cid : tokens(segs[3])) {
            long v = 0;
            try { v = std::stol(cid); } catch (const std::exception&) {
                throw FormatError("bad child id '" + cid + "'");
            }
            if (v < 0 || static_cast<std::size_t>(v) >= count)
                throw FormatError("child id out of range");
            c.children.push_back(static_cast<ConceptId>(v));
        }
        if (c.objects.size() == d.object_count()) bottom = static_cast<ConceptId>(i);
    }
    if (bottom < 0) throw FormatError("lattice lacks a bottom concept");
    lat.bottom_ = bottom;

    if (!std::getline(in, line)) throw FormatError("missing checksum line");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto ck = tokens(line);
    if (ck.size() != 2 || ck[0] != "checksum")
        throw FormatError("missing checksum line");
    if (ck[1] != hex64(fnv1a64(body)))
        throw FormatError("lattice checksum mismatch");

    for (std::size_t i = 0; i < count; ++i)
        for (ConceptId ch : lat.concepts_[i].children)
            lat.concepts_[ch].parents.push_back(static_cast<ConceptId>(i));
    for (auto& c : lat.concepts_) std::sort(c.parents.begin(), c.parents.end());

    lat.build_indexes(d.object_count());
    return lat;
}

std::vector<FeatureIndex> lattice_feature_union(const ConceptLattice& lat) {
    std::vector<FeatureIndex> all;
    for (std::size_t i = 0; i < lat.size(); ++i) {
        const auto& f = lat.concept_at(static_cast<ConceptId>(i)).features;
        all.insert(all.end(), f.begin(), f.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

} // namespace hpath
