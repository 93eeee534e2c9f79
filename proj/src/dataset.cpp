#include "hpath/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace hpath {

namespace {

// Shortest decimal form that parses back to the same double.
std::string format_weight(double w) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), w);
    return std::string(buf, res.ptr);
}

bool valid_id(std::string_view id) {
    if (id.empty() || id.front() == '#') return false;
    for (char c : id)
        if (c == ' ' || c == '\t' || c == '|' || c == '\r' || c == '\n') return false;
    return true;
}

double parse_weight(std::string_view field, std::size_t line_no) {
    double w = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto res = std::from_chars(first, last, w);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ParseError("bad weight '" + std::string(field) + "'", line_no);
    if (!(w > 0.0) || !std::isfinite(w))
        throw std::domain_error("line " + std::to_string(line_no) +
                                ": weight must be positive, got " + std::string(field));
    return w;
}

} // namespace

SparseBipartiteDataset SparseBipartiteDataset::load_triples(std::istream& in,
                                                            bool weighted) {
    std::vector<Triple> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;

        std::size_t t1 = line.find('\t');
        if (t1 == std::string::npos)
            throw ParseError("expected object<TAB>feature", line_no);
        std::size_t t2 = line.find('\t', t1 + 1);

        std::string obj = line.substr(0, t1);
        std::string feat = (t2 == std::string::npos) ? line.substr(t1 + 1)
                                                     : line.substr(t1 + 1, t2 - t1 - 1);
        if (!valid_id(obj) || !valid_id(feat))
            throw ParseError("bad identifier", line_no);

        double w = 1.0;
        if (t2 != std::string::npos) {
            std::string_view rest(line);
            rest.remove_prefix(t2 + 1);
            if (!weighted)
                throw ParseError("weight column present in a non-weighted load", line_no);
            if (rest.find('\t') != std::string_view::npos)
                throw ParseError("too many fields", line_no);
            w = parse_weight(rest, line_no);
        }
        entries.push_back(Triple{std::move(obj), std::move(feat), w});
    }
    if (entries.empty()) throw std::domain_error("empty dataset");
    return assemble(std::move(entries), {}, weighted, false);
}

SparseBipartiteDataset SparseBipartiteDataset::assemble(std::vector<Triple> entries,
                                                        std::vector<std::string> object_universe,
                                                        bool weighted,
                                                        bool allow_empty_objects) {
    // last weight wins on duplicate (object, feature) pairs
    std::map<std::pair<std::string, std::string>, double> dedup;
    for (auto& e : entries) dedup[{e.object, e.feature}] = e.weight;
    if (dedup.empty() && object_universe.empty())
        throw std::domain_error("empty dataset");

    SparseBipartiteDataset d;
    d.weighted_ = weighted;

    for (const auto& [key, w] : dedup) {
        (void)w;
        d.object_ids_.push_back(key.first);
        d.feature_ids_.push_back(key.second);
    }
    for (auto& id : object_universe) d.object_ids_.push_back(std::move(id));
    auto uniq = [](std::vector<std::string>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(d.object_ids_);
    uniq(d.feature_ids_);

    for (std::size_t i = 0; i < d.object_ids_.size(); ++i)
        d.object_lookup_[d.object_ids_[i]] = static_cast<ObjectIndex>(i);
    for (std::size_t i = 0; i < d.feature_ids_.size(); ++i)
        d.feature_lookup_[d.feature_ids_[i]] = static_cast<FeatureIndex>(i);

    std::vector<std::vector<FeatureWeight>> rows(d.object_ids_.size());
    std::vector<std::vector<ObjectIndex>> cols(d.feature_ids_.size());
    for (const auto& [key, w] : dedup) {
        ObjectIndex oi = d.object_lookup_.at(key.first);
        FeatureIndex fi = d.feature_lookup_.at(key.second);
        rows[oi].push_back({fi, w});
        cols[fi].push_back(oi);
    }
    d.relations_ = dedup.size();

    if (!allow_empty_objects)
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].empty())
                throw std::domain_error("object '" + d.object_ids_[i] + "' has no features");

    d.row_offsets_.assign(rows.size() + 1, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto& r = rows[i];
        std::sort(r.begin(), r.end(),
                  [](const FeatureWeight& a, const FeatureWeight& b) {
                      return a.feature < b.feature;
                  });
        d.row_offsets_[i + 1] = d.row_offsets_[i] + r.size();
        d.rows_.insert(d.rows_.end(), r.begin(), r.end());
    }
    d.col_offsets_.assign(cols.size() + 1, 0);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        auto& c = cols[i];
        std::sort(c.begin(), c.end());
        d.col_offsets_[i + 1] = d.col_offsets_[i] + c.size();
        d.cols_.insert(d.cols_.end(), c.begin(), c.end());
    }
    return d;
}

ObjectIndex SparseBipartiteDataset::object_index(std::string_view id) const {
    auto it = object_lookup_.find(std::string(id));
    if (it == object_lookup_.end())
        throw std::out_of_range("unknown object '" + std::string(id) + "'");
    return it->second;
}

FeatureIndex SparseBipartiteDataset::feature_index(std::string_view id) const {
    auto it = feature_lookup_.find(std::string(id));
    if (it == feature_lookup_.end())
        throw std::out_of_range("unknown feature '" + std::string(id) + "'");
    return it->second;
}

std::optional<ObjectIndex> SparseBipartiteDataset::try_object_index(
    std::string_view id) const noexcept {
    auto it = object_lookup_.find(std::string(id));
    if (it == object_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<FeatureIndex> SparseBipartiteDataset::try_feature_index(
    std::string_view id) const noexcept {
    auto it = feature_lookup_.find(std::string(id));
    if (it == feature_lookup_.end()) return std::nullopt;
    return it->second;
}

std::span<const FeatureWeight> SparseBipartiteDataset::row(ObjectIndex o) const {
    if (o < 0 || static_cast<std::size_t>(o) >= object_ids_.size())
        throw std::out_of_range("object index " + std::to_string(o));
    return {rows_.data() + row_offsets_[o], row_offsets_[o + 1] - row_offsets_[o]};
}

std::span<const ObjectIndex> SparseBipartiteDataset::column(FeatureIndex f) const {
    if (f < 0 || static_cast<std::size_t>(f) >= feature_ids_.size())
        throw std::out_of_range("feature index " + std::to_string(f));
    return {cols_.data() + col_offsets_[f], col_offsets_[f + 1] - col_offsets_[f]};
}

std::vector<FeatureIndex> SparseBipartiteDataset::row_features(ObjectIndex o) const {
    auto r = row(o);
    std::vector<FeatureIndex> out;
    out.reserve(r.size());
    for (const auto& fw : r) out.push_back(fw.feature);
    return out;
}

double SparseBipartiteDataset::weight(ObjectIndex o, FeatureIndex f) const noexcept {
    if (o < 0 || static_cast<std::size_t>(o) >= object_ids_.size()) return 0.0;
    const FeatureWeight* first = rows_.data() + row_offsets_[o];
    const FeatureWeight* last = rows_.data() + row_offsets_[o + 1];
    auto it = std::lower_bound(first, last, f,
                               [](const FeatureWeight& fw, FeatureIndex key) {
                                   return fw.feature < key;
                               });
    if (it == last || it->feature != f) return 0.0;
    return it->weight;
}

std::vector<ObjectIndex> SparseBipartiteDataset::objects_of(
    std::span<const FeatureIndex> features) const {
    std::vector<FeatureIndex> fs(features.begin(), features.end());
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());

    std::vector<ObjectIndex> acc;
    if (fs.empty()) {
        acc.resize(object_ids_.size());
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = static_cast<ObjectIndex>(i);
        return acc;
    }
    // start from the rarest feature, intersect the rest in
    std::sort(fs.begin(), fs.end(), [this](FeatureIndex a, FeatureIndex b) {
        return column(a).size() < column(b).size();
    });
    auto c0 = column(fs[0]);
    acc.assign(c0.begin(), c0.end());
    std::vector<ObjectIndex> next;
    for (std::size_t i = 1; i < fs.size() && !acc.empty(); ++i) {
        auto c = column(fs[i]);
        next.clear();
        std::set_intersection(acc.begin(), acc.end(), c.begin(), c.end(),
                              std::back_inserter(next));
        acc.swap(next);
    }
    return acc;
}

std::vector<FeatureIndex> SparseBipartiteDataset::features_of(
    std::span<const ObjectIndex> objects) const {
    std::vector<ObjectIndex> os(objects.begin(), objects.end());
    std::sort(os.begin(), os.end());
    os.erase(std::unique(os.begin(), os.end()), os.end());

    std::vector<FeatureIndex> acc;
    if (os.empty()) {
        acc.resize(feature_ids_.size());
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = static_cast<FeatureIndex>(i);
        return acc;
    }
    std::sort(os.begin(), os.end(), [this](ObjectIndex a, ObjectIndex b) {
        return row(a).size() < row(b).size();
    });
    for (const auto& fw : row(os[0])) acc.push_back(fw.feature);
    std::vector<FeatureIndex> next;
    for (std::size_t i = 1; i < os.size() && !acc.empty(); ++i) {
        auto r = row(os[i]);
        next.clear();
        auto a = acc.begin();
        auto b = r.begin();
        while (a != acc.end() && b != r.end()) {
            if (*a < b->feature) ++a;
            else if (b->feature < *a) ++b;
            else { next.push_back(*a); ++a; ++b; }
        }
        acc.swap(next);
    }
    return acc;
}

std::vector<FeatureIndex> SparseBipartiteDataset::closure(
    std::span<const FeatureIndex> features) const {
    auto objs = objects_of(features);
    return features_of(objs);
}

std::size_t SparseBipartiteDataset::shared_feature_count(ObjectIndex a,
                                                         ObjectIndex b) const {
    auto ra = row(a);
    auto rb = row(b);
    std::size_t n = 0;
    auto i = ra.begin();
    auto j = rb.begin();
    while (i != ra.end() && j != rb.end()) {
        if (i->feature < j->feature) ++i;
        else if (j->feature < i->feature) ++j;
        else { ++n; ++i; ++j; }
    }
    return n;
}

void SparseBipartiteDataset::serialize(std::ostream& out) const {
    for (std::size_t o = 0; o < object_ids_.size(); ++o) {
        for (const auto& fw : row(static_cast<ObjectIndex>(o))) {
            out << object_ids_[o] << '\t' << feature_ids_[fw.feature];
            if (weighted_) out << '\t' << format_weight(fw.weight);
            out << '\n';
        }
    }
}

TruncatedDataset truncate(const SparseBipartiteDataset& d,
                          std::span<const FeatureIndex> retained) {
    if (retained.empty()) throw std::invalid_argument("retained feature set is empty");
    std::vector<FeatureIndex> keep(retained.begin(), retained.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.front() < 0 || static_cast<std::size_t>(keep.back()) >= d.feature_count())
        throw std::out_of_range("retained feature index out of range");

    std::vector<Triple> entries;
    std::vector<std::string> universe;
    universe.reserve(d.object_count());

    TruncatedDataset t;
    t.truncated_count = d.feature_count() - keep.size();
    t.min_weight.resize(d.object_count());
    t.max_weight.resize(d.object_count());

    for (std::size_t o = 0; o < d.object_count(); ++o) {
        ObjectIndex oi = static_cast<ObjectIndex>(o);
        universe.push_back(d.object_id(oi));
        auto r = d.row(oi);
        double lo = r.front().weight, hi = r.front().weight;
        std::size_t kept = 0;
        auto k = keep.begin();
        for (const auto& fw : r) {
            lo = std::min(lo, fw.weight);
            hi = std::max(hi, fw.weight);
            while (k != keep.end() && *k < fw.feature) ++k;
            if (k != keep.end() && *k == fw.feature) {
                entries.push_back(Triple{d.object_id(oi), d.feature_id(fw.feature), fw.weight});
                ++kept;
            }
        }
        t.min_weight[o] = lo;
        t.max_weight[o] = hi;
        if (kept == 0) t.empty_objects.push_back(oi);
    }

    t.base = SparseBipartiteDataset::assemble(std::move(entries), std::move(universe),
                                              d.weighted(), true);
    return t;
}

void save_truncated(const TruncatedDataset& t, std::ostream& out) {
    out << "#!HPTRUNC 1\n";
    out << "#!weighted " << (t.base.weighted() ? 1 : 0) << '\n';
    out << "#!truncated_count " << t.truncated_count << '\n';
    for (std::size_t o = 0; o < t.base.object_count(); ++o) {
        ObjectIndex oi = static_cast<ObjectIndex>(o);
        out << "#!object " << t.base.object_id(oi) << ' ' << format_weight(t.min_weight[o])
            << ' ' << format_weight(t.max_weight[o]);
        if (t.base.row(oi).empty()) out << " empty";
        out << '\n';
    }
    t.base.serialize(out);
}

TruncatedDataset load_truncated(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool saw_magic = false;
    bool weighted = false;
    long long truncated_count = -1;
    std::vector<std::string> universe;
    std::vector<std::pair<double, double>> aggregates;
    std::vector<bool> empty_flags;
    std::string triple_text;

    auto fields = [](const std::string& s) {
        std::vector<std::string> out;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t sp = s.find(' ', pos);
            if (sp == std::string::npos) { out.push_back(s.substr(pos)); break; }
            out.push_back(s.substr(pos, sp - pos));
            pos = sp + 1;
        }
        return out;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("#!", 0) == 0) {
            auto f = fields(line.substr(2));
            if (f.empty()) throw FormatError("bad directive at line " + std::to_string(line_no));
            if (f[0] == "HPTRUNC") {
                if (f.size() != 2 || f[1] != "1")
                    throw FormatError("unsupported truncated-dataset version");
                saw_magic = true;
            } else if (f[0] == "weighted" && f.size() == 2) {
                if (f[1] != "0" && f[1] != "1")
                    throw FormatError("bad weighted flag '" + f[1] + "'");
                weighted = (f[1] == "1");
            } else if (f[0] == "truncated_count" && f.size() == 2) {
                truncated_count = std::stoll(f[1]);
            } else if (f[0] == "object" && (f.size() == 4 || f.size() == 5)) {
                universe.push_back(f[1]);
                aggregates.emplace_back(std::stod(f[2]), std::stod(f[3]));
                empty_flags.push_back(f.size() == 5 && f[4] == "empty");
            } else {
                throw FormatError("bad directive at line " + std::to_string(line_no));
            }
            continue;
        }
        triple_text += line;
        triple_text += '\n';
    }
    if (!saw_magic) throw FormatError("missing HPTRUNC header");
    if (truncated_count < 0) throw FormatError("missing truncated_count");
    if (universe.empty()) throw FormatError("no objects declared");

    std::vector<Triple> entries;
    {
        std::size_t tl = 0;
        std::size_t pos = 0;
        while (pos < triple_text.size()) {
            ++tl;
            std::size_t nl = triple_text.find('\n', pos);
            std::string l = triple_text.substr(pos, nl - pos);
            pos = nl + 1;
            if (l.empty() || l.front() == '#') continue;
            std::size_t t1 = l.find('\t');
            if (t1 == std::string::npos) throw FormatError("bad triple line");
            std::size_t t2 = l.find('\t', t1 + 1);
            Triple tr;
            tr.object = l.substr(0, t1);
            tr.feature = (t2 == std::string::npos) ? l.substr(t1 + 1)
                                                   : l.substr(t1 + 1, t2 - t1 - 1);
            tr.weight = (t2 == std::string::npos) ? 1.0 : std::stod(l.substr(t2 + 1));
            entries.push_back(std::move(tr));
        }
        (void)tl;
    }

    // sort declarations into id order so aggregate slots line up with indices
    std::vector<std::size_t> order(universe.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return universe[a] < universe[b];
    });

    TruncatedDataset t;
    t.truncated_count = static_cast<std::size_t>(truncated_count);
    std::vector<std::string> sorted_universe;
    for (std::size_t idx : order) {
        sorted_universe.push_back(universe[idx]);
        t.min_weight.push_back(aggregates[idx].first);
        t.max_weight.push_back(aggregates[idx].second);
    }
    t.base = SparseBipartiteDataset::assemble(std::move(entries), std::move(sorted_universe),
                                              weighted, true);
    for (std::size_t i = 0; i < order.size(); ++i) {
        ObjectIndex oi = static_cast<ObjectIndex>(i);
        bool is_empty = t.base.row(oi).empty();
        if (is_empty != empty_flags[order[i]])
            throw FormatError("empty flag mismatch for object " + t.base.object_id(oi));
        if (is_empty) t.empty_objects.push_back(oi);
        if (t.min_weight[i] > t.max_weight[i] || !(t.min_weight[i] > 0.0))
            throw FormatError("bad aggregates for object " + t.base.object_id(oi));
    }
    return t;
}

} // namespace hpath
