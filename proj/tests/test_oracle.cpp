#include <doctest.h>

#include <cstdlib>
#include <stdexcept>

#include "hpath/metrics.hpp"
#include "hpath/oracle.hpp"
#include "testutil.hpp"

using namespace hpath;

TEST_CASE("materialization lists exactly the admissible edges") {
    auto d = testutil::toy3x3();
    auto view = ModeView::normal(d);
    auto net = materialize(view, EdgeConstraint::distance_at_most(0.95));

    CHECK(net.n == 3);
    CHECK(net.edge_count() == 2);
    CHECK(net.has_edge(0, 1));
    CHECK(net.has_edge(1, 0));
    CHECK(net.has_edge(1, 2));
    CHECK_FALSE(net.has_edge(0, 2));

    REQUIRE(net.adjacency[1].size() == 2);
    CHECK(net.adjacency[1][0].first == 0);
    CHECK(net.adjacency[1][0].second == soergel(d, 1, 0));
    CHECK(net.adjacency[1][1].second == 0.5);

    auto strict = materialize(view, EdgeConstraint::width_at_least(2));
    CHECK(strict.edge_count() == 0);
}

TEST_CASE("reference shortest paths on the toy network") {
    auto d = testutil::toy3x3();
    auto view = ModeView::normal(d);
    auto net = materialize(view, EdgeConstraint::distance_at_most(0.95));

    auto p = oracle_shortest_path(net, 0, 2);
    REQUIRE(p.has_value());
    CHECK(p->chain == std::vector<ObjectIndex>{0, 1, 2});
    CHECK(p->cost == (1.0 - 1.0 / 3.0) + 0.5);

    auto self = oracle_shortest_path(net, 1, 1);
    REQUIRE(self.has_value());
    CHECK(self->chain == std::vector<ObjectIndex>{1});
    CHECK(self->cost == 0.0);

    auto empty = materialize(view, EdgeConstraint::width_at_least(2));
    CHECK_FALSE(oracle_shortest_path(empty, 0, 2).has_value());

    CHECK_THROWS_AS(oracle_shortest_path(net, -1, 2), std::out_of_range);
    CHECK_THROWS_AS(oracle_shortest_path(net, 0, 5), std::out_of_range);
}

TEST_CASE("zero-weight tie clusters keep reconstruction deterministic") {
    auto d = testutil::make_dataset("a\tx\nb\tx\nc\tx\nd\tx\n");
    auto view = ModeView::normal(d);
    auto net = materialize(view, EdgeConstraint::distance_at_most(0.95));
    CHECK(net.edge_count() == 6);  // complete graph at distance zero

    auto p = oracle_shortest_path(net, 0, 3);
    REQUIRE(p.has_value());
    CHECK(p->cost == 0.0);
    CHECK(p->chain == std::vector<ObjectIndex>{0, 3});
}

TEST_CASE("materialization cap and its environment override") {
    auto d = testutil::make_dataset("a\tx\nb\tx\nc\tx\nd\tx\n");
    auto view = ModeView::normal(d);
    auto c = EdgeConstraint::distance_at_most(0.95);

    CHECK_THROWS_AS(materialize(view, c, 3), std::length_error);
    CHECK(materialize(view, c, 4).n == 4);

    unsetenv("HPATH_ORACLE_CAP");
    CHECK(default_oracle_cap() == 500);
    setenv("HPATH_ORACLE_CAP", "3", 1);
    CHECK(default_oracle_cap() == 3);
    setenv("HPATH_ORACLE_CAP", "garbage", 1);
    CHECK(default_oracle_cap() == 500);
    setenv("HPATH_ORACLE_CAP", "-2", 1);
    CHECK(default_oracle_cap() == 500);
    unsetenv("HPATH_ORACLE_CAP");
}

TEST_CASE("clique enumeration in lexicographic order") {
    auto d = testutil::toy3x3();
    auto view = ModeView::normal(d);
    auto net = materialize(view, EdgeConstraint::distance_at_most(0.95));

    auto pairs = enumerate_cliques(net, 2);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0] == std::vector<ObjectIndex>{0, 1});
    CHECK(pairs[1] == std::vector<ObjectIndex>{1, 2});
    CHECK(enumerate_cliques(net, 3).empty());

    auto singletons = enumerate_cliques(net, 1);
    CHECK(singletons.size() == 3);

    CHECK_THROWS_AS(enumerate_cliques(net, 0), std::invalid_argument);

    auto dd = testutil::make_dataset("a\tx\nb\tx\nc\tx\nd\tx\n");
    auto dview = ModeView::normal(dd);
    auto dnet = materialize(dview, EdgeConstraint::distance_at_most(0.95));
    auto triples = enumerate_cliques(dnet, 3);
    REQUIRE(triples.size() == 4);
    CHECK(triples[0] == std::vector<ObjectIndex>{0, 1, 2});
    CHECK(triples[3] == std::vector<ObjectIndex>{1, 2, 3});
}

TEST_CASE("closed-set enumeration matches the toy lattice facts") {
    auto d = testutil::toy3x3();

    auto all = enumerate_closed_sets(d, 1);
    REQUIRE(all.size() == 5);
    CHECK(all[0].features.empty());
    CHECK(all[0].objects == std::vector<ObjectIndex>{0, 1, 2});
    CHECK(all[1].features == std::vector<FeatureIndex>{0, 1});
    CHECK(all[2].features == std::vector<FeatureIndex>{1});
    CHECK(all[3].features == std::vector<FeatureIndex>{1, 2});
    CHECK(all[4].features == std::vector<FeatureIndex>{2});

    auto pruned = enumerate_closed_sets(d, 2);
    CHECK(pruned.size() == 3);

    // the bottom stays even when nothing reaches minsup
    auto only_bottom = enumerate_closed_sets(d, 9);
    REQUIRE(only_bottom.size() == 1);
    CHECK(only_bottom[0].objects.size() == 3);

    CHECK_THROWS_AS(enumerate_closed_sets(d, 0), std::invalid_argument);
}

TEST_CASE("closed-set enumeration guards its exponential blowup") {
    std::string text;
    for (int f = 0; f < 21; ++f)
        text += "obj\tf" + std::to_string(10 + f) + "\n";
    auto d = testutil::make_dataset(text);
    CHECK_THROWS_AS(enumerate_closed_sets(d, 1), std::length_error);
}
