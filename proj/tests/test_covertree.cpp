#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "hpath/covertree.hpp"
#include "hpath/metrics.hpp"
#include "testutil.hpp"

using namespace hpath;

namespace {

std::vector<CoverTree::Neighbor> scan_nearest(const SparseBipartiteDataset& d,
                                              const MetricFn& metric, ObjectIndex o,
                                              std::size_t n,
                                              std::span<const ObjectIndex> exclude) {
    std::vector<CoverTree::Neighbor> all;
    for (std::size_t i = 0; i < d.object_count(); ++i) {
        ObjectIndex v = static_cast<ObjectIndex>(i);
        if (v == o) continue;
        if (std::find(exclude.begin(), exclude.end(), v) != exclude.end()) continue;
        all.push_back({v, metric(o, v)});
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.object < b.object;
    });
    if (all.size() > n) all.resize(n);
    return all;
}

void check_agreement(const SparseBipartiteDataset& d, const MetricFn& metric,
                     std::mt19937_64& rng) {
    CoverTree tree(d, metric);
    tree.audit_invariants();
    CHECK(tree.size() == d.object_count());

    auto count = static_cast<ObjectIndex>(d.object_count());
    for (int q = 0; q < 8; ++q) {
        ObjectIndex o = static_cast<ObjectIndex>(rng() % count);
        std::size_t n = 1 + rng() % d.object_count();
        std::vector<ObjectIndex> exclude;
        if (q % 2 == 1)
            for (int e = 0; e < 3; ++e)
                exclude.push_back(static_cast<ObjectIndex>(rng() % count));
        auto got = tree.nearest(o, n, exclude);
        auto want = scan_nearest(d, metric, o, n, exclude);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].object == want[i].object);
            CHECK(got[i].distance == want[i].distance);
        }
    }
}

} // namespace

TEST_CASE("queries agree with a linear scan on binary data") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        auto d = testutil::random_dataset(rng, 60, 10, 0.3);
        MetricFn m = [&d](ObjectIndex a, ObjectIndex b) { return soergel(d, a, b); };
        check_agreement(d, m, rng);
    }
}

TEST_CASE("queries agree with a linear scan on weighted data") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        auto d = testutil::random_dataset(rng, 50, 8, 0.35, true);
        MetricFn m = [&d](ObjectIndex a, ObjectIndex b) {
            return weighted_soergel(d, a, b);
        };
        check_agreement(d, m, rng);
    }
}

TEST_CASE("heavy duplication: few patterns shared by many objects") {
    // 3 features and high density make identical rows all but certain
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        auto d = testutil::random_dataset(rng, 50, 3, 0.6);
        MetricFn m = [&d](ObjectIndex a, ObjectIndex b) { return soergel(d, a, b); };
        check_agreement(d, m, rng);
    }
}

TEST_CASE("single object tree yields nothing") {
    auto d = testutil::make_dataset("solo\tx\n");
    MetricFn m = [&d](ObjectIndex a, ObjectIndex b) { return soergel(d, a, b); };
    CoverTree tree(d, m);
    CHECK(tree.size() == 1);
    CHECK(tree.nearest(0, 5).empty());
}

TEST_CASE("oversized n returns everything, ordered") {
    auto d = testutil::toy3x3();
    MetricFn m = [&d](ObjectIndex a, ObjectIndex b) { return soergel(d, a, b); };
    CoverTree tree(d, m);
    auto got = tree.nearest(1, 100);
    REQUIRE(got.size() == 2);
    CHECK(got[0].object == 2);  // c at 1/2
    CHECK(got[1].object == 0);  // a at 2/3
    CHECK(got[0].distance == 0.5);
}

TEST_CASE("metric values outside the unit interval are rejected") {
    auto d = testutil::toy3x3();
    MetricFn bad = [](ObjectIndex, ObjectIndex) { return 2.0; };
    CHECK_THROWS_AS(CoverTree(d, bad), std::domain_error);
    MetricFn negative = [](ObjectIndex, ObjectIndex) { return -0.25; };
    CHECK_THROWS_AS(CoverTree(d, negative), std::domain_error);
}

TEST_CASE("all-duplicate dataset collapses to one node plus companions") {
    auto d = testutil::make_dataset("a\tx\nb\tx\nc\tx\nd\tx\n");
    MetricFn m = [&d](ObjectIndex a, ObjectIndex b) { return soergel(d, a, b); };
    CoverTree tree(d, m);
    tree.audit_invariants();
    CHECK(tree.size() == 4);
    auto got = tree.nearest(2, 10);
    REQUIRE(got.size() == 3);
    CHECK(got[0].object == 0);
    CHECK(got[1].object == 1);
    CHECK(got[2].object == 3);
    for (const auto& nb : got) CHECK(nb.distance == 0.0);
}
