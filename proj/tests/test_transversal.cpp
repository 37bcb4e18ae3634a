#include <doctest.h>

#include <algorithm>
#include <random>

#include "bnt/oracle.hpp"
#include "bnt/transversal.hpp"
#include "support/fixtures.hpp"
#include "support/reference.hpp"

using namespace bnt;
using namespace bnt::oracle;
using namespace bnt::transversal;

TEST_CASE("hypergraph construction validates its edges") {
    CHECK_NOTHROW(make_hypergraph({0, 1, 2}, {{0, 1}, {2}}));
    CHECK_THROWS_AS(make_hypergraph({0, 1}, {{2}}), BntError);
    CHECK_THROWS_AS(make_hypergraph({1, 0}, {{0}}), BntError);
    CHECK_THROWS_AS(make_hypergraph({0, 1}, {{1, 0}}), BntError);
    // empty edges may be carried, but no transversal operation accepts them
    Hypergraph h = make_hypergraph({0, 1}, {{}});
    BudgetCounter budget(kDefaultBudget);
    try {
        exact_mhs(h, budget);
        FAIL("expected the empty edge to trip");
    } catch (const BntError& e) {
        CHECK(e.kind() == ErrorKind::empty_edge);
    }
    CHECK_THROWS_AS(ht(h, {0, 1}), BntError);
}

TEST_CASE("greedy transversal on a fixed order") {
    // edges {0,1},{1,2},{3}; scanning 0..3 keeps 1 (hits both pair edges) and 3
    Hypergraph h = make_hypergraph({0, 1, 2, 3}, {{0, 1}, {1, 2}, {3}});
    CHECK(ht(h, {0, 1, 2, 3}) == NodeSet{1, 3});
    // the reversed order keeps a different but equally valid transversal
    NodeSet rev = ht(h, {3, 2, 1, 0});
    for (const auto& e : h.edges) {
        bool hit = false;
        for (NodeId v : rev) hit |= std::binary_search(e.begin(), e.end(), v);
        CHECK(hit);
    }
}

TEST_CASE("greedy result is always a minimal transversal") {
    std::mt19937_64 rng(555);
    for (int it = 0; it < 120; ++it) {
        Hypergraph h = reference::random_hypergraph(rng, 8, 6);
        NodeSet order = h.vertices;
        std::shuffle(order.begin(), order.end(), rng);
        NodeSet t = ht(h, order);
        CHECK(reference::is_transversal(h, t));
        // minimal: dropping any kept vertex uncovers some edge
        for (NodeId v : t) {
            NodeSet smaller;
            for (NodeId w : t)
                if (w != v) smaller.push_back(w);
            CHECK_FALSE(reference::is_transversal(h, smaller));
        }
    }
}

TEST_CASE("exact minimum transversal matches brute force, including ties") {
    std::mt19937_64 rng(556);
    for (int it = 0; it < 120; ++it) {
        Hypergraph h = reference::random_hypergraph(rng, 7, 6);
        BudgetCounter budget(kDefaultBudget);
        NodeSet got = exact_mhs(h, budget);
        auto want = reference::brute_mhs(h);
        REQUIRE(want.has_value());
        CHECK(got == *want);
    }
}

TEST_CASE("exact minimum transversal of an edgeless system is empty") {
    Hypergraph h = make_hypergraph({0, 1, 2}, {});
    BudgetCounter budget(kDefaultBudget);
    CHECK(exact_mhs(h, budget) == NodeSet{});
}

TEST_CASE("cover system of the seven-node example") {
    PathMatrix p = fixtures::demo_matrix();
    auto h = sep_cover_system(p, 4);
    REQUIRE(h.has_value());
    CHECK(h->vertices == NodeSet{0, 1, 2, 3, 5, 6});
    REQUIRE(h->edges.size() == 3);
    CHECK(h->edges[0] == NodeSet{0, 1, 2});
    CHECK(h->edges[1] == NodeSet{2, 3, 5});
    CHECK(h->edges[2] == NodeSet{1, 3, 6});
    BudgetCounter budget(kDefaultBudget);
    CHECK(exact_mhs(*h, budget) == NodeSet{0, 3});
}

TEST_CASE("cover system is absent for a node with an empty column allowance") {
    // node 1's column equals the union of a single other column, so some row of
    // node 1 must escape every candidate — here every node still has a system
    PathMatrix p = fixtures::demo_matrix();
    for (NodeId u = 0; u < p.node_count(); ++u) CHECK(sep_cover_system(p, u).has_value());
}

TEST_CASE("single-pass heuristic on the seven-node example") {
    PathMatrix p = fixtures::demo_matrix();
    auto w = simple_sep(p, 4);
    REQUIRE(w.has_value());
    CHECK(w->node == 4);
    CHECK(w->cover == NodeSet{2, 6});
    std::vector<size_t> sizes;
    for (NodeId u = 0; u < p.node_count(); ++u) {
        auto s = simple_sep(p, u);
        REQUIRE(s.has_value());
        sizes.push_back(s->size());
    }
    CHECK(sizes == std::vector<size_t>{2, 1, 2, 2, 2, 1, 1});
}

TEST_CASE("degree-ordered heuristic on the seven-node example") {
    PathMatrix p = fixtures::demo_matrix();
    auto big = decr_sep(p, 4, DecrDirection::largest_first);
    REQUIRE(big.has_value());
    CHECK(big->cover == NodeSet{0, 5, 6});
    auto small = decr_sep(p, 4, DecrDirection::smallest_first);
    REQUIRE(small.has_value());
    CHECK(small->cover == NodeSet{2, 3});
}

TEST_CASE("exact per-node threshold on the seven-node example") {
    PathMatrix p = fixtures::demo_matrix();
    std::vector<unsigned> ks;
    for (NodeId u = 0; u < p.node_count(); ++u) {
        BudgetCounter budget(kDefaultBudget);
        auto r = mns(p, u, budget);
        REQUIRE(r.has_value());
        ks.push_back(r->k);
    }
    CHECK(ks == std::vector<unsigned>{1, 1, 2, 2, 2, 1, 1});
}

TEST_CASE("the smallest blocking set sits exactly at the separability cliff") {
    std::mt19937_64 rng(777);
    for (int it = 0; it < 50; ++it) {
        PathMatrix p = reference::random_matrix(rng, 3 + rng() % 5, 2 + rng() % 4);
        for (NodeId u = 0; u < p.node_count(); ++u) {
            BudgetCounter budget(kDefaultBudget);
            auto r = mns(p, u, budget);
            if (!r) {
                // nothing blocks u: separable at every admissible level
                BudgetCounter b(kDefaultBudget);
                CHECK(is_node_separable(p, u, p.node_count() - 1, b));
                continue;
            }
            // the cover swallows u's paths and is as small as possible,
            // so u stays separable below |cover| and falls exactly there
            CHECK(r->k == r->cover.size());
            CHECK(p.column(u).is_subset_of(p.paths_mask(r->cover)));
            BudgetCounter b1(kDefaultBudget);
            CHECK_FALSE(is_node_separable(p, u, r->k, b1));
            if (r->k >= 2) {
                BudgetCounter b2(kDefaultBudget);
                CHECK(is_node_separable(p, u, r->k - 1, b2));
            }
            // and it is the lex-least minimum transversal of the cover system
            auto h = sep_cover_system(p, u);
            REQUIRE(h.has_value());
            auto want = reference::brute_mhs(*h);
            REQUIRE(want.has_value());
            CHECK(r->cover == *want);
        }
    }
}

TEST_CASE("heuristic covers are never smaller than the optimum") {
    std::mt19937_64 rng(778);
    for (int it = 0; it < 60; ++it) {
        PathMatrix p = reference::random_matrix(rng, 3 + rng() % 5, 2 + rng() % 4);
        for (NodeId u = 0; u < p.node_count(); ++u) {
            auto h = sep_cover_system(p, u);
            auto s = simple_sep(p, u);
            auto d = decr_sep(p, u);
            CHECK(h.has_value() == s.has_value());
            CHECK(h.has_value() == d.has_value());
            if (!h) continue;
            size_t best = reference::brute_mhs(*h)->size();
            CHECK(s->size() >= best);
            CHECK(d->size() >= best);
            CHECK(reference::is_transversal(*h, s->cover));
            CHECK(reference::is_transversal(*h, d->cover));
        }
    }
}

TEST_CASE("transversal problems reduce to per-node thresholds and back") {
    std::mt19937_64 rng(779);
    for (int it = 0; it < 60; ++it) {
        Hypergraph h = reference::random_hypergraph(rng, 7, 5);
        if (h.edges.empty()) continue;
        auto [p, u] = mhs_to_mns_instance(h);
        BudgetCounter b1(kDefaultBudget), b2(kDefaultBudget);
        auto r = mns(p, u, b1);
        NodeSet opt = exact_mhs(h, b2);
        REQUIRE(r.has_value());
        CHECK(r->cover.size() == opt.size());
    }
}

TEST_CASE("exact search honours its budget") {
    std::mt19937_64 rng(780);
    Hypergraph h = reference::random_hypergraph(rng, 10, 8);
    if (h.edges.empty()) h = make_hypergraph({0, 1}, {{0, 1}});
    BudgetCounter budget(2);
    CHECK_THROWS_AS(exact_mhs(h, budget), BntError);
}
