#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bnt/graphio.hpp"
#include "support/fixtures.hpp"
#include "support/reference.hpp"

using namespace bnt;
using namespace bnt::graphio;

TEST_CASE("construction normalizes edges and sorts adjacency") {
    Graph g = fixtures::demo_graph();
    CHECK(g.vertex_count == 7);
    std::vector<std::pair<NodeId, NodeId>> want = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 6}, {2, 3},
                                                   {2, 4}, {2, 6}, {3, 4}, {4, 5}, {4, 6}};
    CHECK(g.edges == want);
    CHECK(g.adjacency[0] == NodeSet{1, 2, 3});
    CHECK(g.adjacency[2] == NodeSet{0, 1, 3, 4, 6});
    CHECK(g.adjacency[5] == NodeSet{4});
}

TEST_CASE("construction rejects malformed edges") {
    CHECK_THROWS_AS(make_graph(3, {{0, 0}}), BntError);
    CHECK_THROWS_AS(make_graph(3, {{0, 3}}), BntError);
    try {
        make_graph(3, {{0, 1}, {1, 0}});
        FAIL("expected the reversed duplicate to trip");
    } catch (const BntError& e) {
        CHECK(e.kind() == ErrorKind::duplicate_edge);
    }
}

TEST_CASE("graph text round trip, 0- and 1-based") {
    Graph g = fixtures::demo_graph();
    CHECK(read_graph(write_graph(g)).edges == g.edges);
    std::string one = write_graph(g, true);
    CHECK(one.substr(0, 6) == "7\n1 2\n");
    Graph h = read_graph(one, true);
    CHECK(h.edges == g.edges);

    CHECK_THROWS_AS(read_graph(""), BntError);
    CHECK_THROWS_AS(read_graph("x\n"), BntError);
    CHECK_THROWS_AS(read_graph("2\n0 1 2\n"), BntError);
    CHECK_THROWS_AS(read_graph("2\n0 2\n"), BntError);
    // id 0 cannot appear in 1-based text
    CHECK_THROWS_AS(read_graph("2\n0 1\n", true), BntError);
}

TEST_CASE("hop distances on the seven-node example") {
    Graph g = fixtures::demo_graph();
    DistanceTable t = distances(g);
    CHECK(t.dist[0][5] == 3);
    CHECK(t.dist[5][0] == 3);
    for (NodeId u = 0; u < g.vertex_count; ++u) {
        CHECK(t.dist[u][u] == 0);
        for (NodeId v = 0; v < g.vertex_count; ++v) CHECK(t.dist[u][v] == t.dist[v][u]);
    }
}

TEST_CASE("disconnected pairs are flagged, not faked") {
    Graph g = make_graph(3, {{0, 1}});
    DistanceTable t = distances(g);
    CHECK(t.dist[0][2] == kUnreachable);
    CHECK(canonical_shortest_path(t, 0, 2).empty());
}

TEST_CASE("canonical shortest path picks least predecessors") {
    Graph g = fixtures::demo_graph();
    DistanceTable t = distances(g);
    // 0-2-4-5 wins over 0-3-4-5
    CHECK(canonical_shortest_path(t, 0, 5) == NodeSet{0, 2, 4, 5});
    CHECK(canonical_shortest_path(t, 3, 3) == NodeSet{3});
}

TEST_CASE("all shortest paths, canonical one included") {
    Graph g = fixtures::demo_graph();
    DistanceTable t = distances(g);
    BudgetCounter budget(kDefaultBudget);
    auto paths = all_shortest_paths(g, t, 0, 5, budget);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0] == NodeSet{0, 2, 4, 5});
    CHECK(paths[1] == NodeSet{0, 3, 4, 5});
    for (const auto& p : paths) CHECK(p.size() == t.dist[0][5] + 1);
    NodeSet canon = canonical_shortest_path(t, 0, 5);
    CHECK(std::find(paths.begin(), paths.end(), canon) != paths.end());
}

TEST_CASE("path enumeration: dedup, sort, column drop") {
    // complete graph on four vertices, probing 0 -> 3
    Graph k4 = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    ValidationOptions relax;
    relax.allow_duplicate_columns = true; // 0 and 3 ride every path
    PathEnumeration e = enumerate_paths(k4, {{0}, {3}}, 3, 1'000'000, relax);
    // 0-1-2-3 and 0-2-1-3 collapse to one vertex set
    CHECK(e.raw_path_count == 5);
    CHECK(e.matrix.path_count() == 4);
    CHECK(e.kept_nodes == NodeSet{0, 1, 2, 3});
    CHECK(e.matrix.row(0).to_indices() == PathSet{0, 1, 2, 3});
    CHECK(e.matrix.row(1).to_indices() == PathSet{0, 1, 3});
    CHECK(e.matrix.row(2).to_indices() == PathSet{0, 2, 3});
    CHECK(e.matrix.row(3).to_indices() == PathSet{0, 3});
}

TEST_CASE("path enumeration drops vertices that ride no path") {
    // a pendant vertex off the probed corridor disappears from the matrix
    Graph g = make_graph(4, {{0, 1}, {1, 2}, {0, 3}});
    ValidationOptions relax;
    relax.allow_duplicate_columns = true;
    PathEnumeration e = enumerate_paths(g, {{0}, {2}}, 2, 1'000'000, relax);
    CHECK(e.kept_nodes == NodeSet{0, 1, 2});
    CHECK(e.matrix.node_count() == 3);
    CHECK(e.raw_path_count == 1);
}

TEST_CASE("duplicate columns are tolerated by default, strict opts reject them") {
    // on a path graph every vertex rides the single probe, so all columns match
    Graph g = make_graph(3, {{0, 1}, {1, 2}});
    PathEnumeration e = enumerate_paths(g, {{0}, {2}}, 2);
    CHECK(e.matrix.path_count() == 1);
    CHECK(e.matrix.node_count() == 3);
    CHECK(e.matrix.row(0).to_indices() == PathSet{0, 1, 2});
    ValidationOptions strict; // all-false: distinct columns demanded
    CHECK_THROWS_AS(enumerate_paths(g, {{0}, {2}}, 2, 1'000'000, strict), BntError);
}

TEST_CASE("path enumeration failure modes") {
    Graph g = make_graph(2, {});
    try {
        enumerate_paths(g, {{0}, {1}}, 3);
        FAIL("expected no paths");
    } catch (const BntError& e) {
        CHECK(e.kind() == ErrorKind::no_paths);
    }
    Graph k4 = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    ValidationOptions relax;
    relax.allow_duplicate_columns = true;
    try {
        enumerate_paths(k4, {{0}, {3}}, 3, 3, relax);
        FAIL("expected the path cap to trip");
    } catch (const BntError& e) {
        CHECK(e.kind() == ErrorKind::path_budget_exceeded);
    }
    CHECK_THROWS_AS(enumerate_paths(k4, {{0}, {4}}, 2), BntError);
}

TEST_CASE("path enumeration agrees with a naive recursion") {
    std::mt19937_64 rng(1212);
    ValidationOptions relax;
    relax.allow_duplicate_columns = true;
    relax.allow_zero_columns = true;
    for (int it = 0; it < 60; ++it) {
        Graph g = reference::random_connected_graph(rng, 3 + rng() % 4);
        NodeSet sources = {static_cast<NodeId>(rng() % g.vertex_count)};
        NodeSet targets = {static_cast<NodeId>(rng() % g.vertex_count)};
        unsigned cutoff = 1 + rng() % 4;
        auto naive = reference::naive_simple_paths(g, sources, targets, cutoff);
        std::set<std::vector<unsigned>> naive_sets;
        for (auto seq : naive) {
            std::sort(seq.begin(), seq.end());
            naive_sets.insert(seq);
        }
        if (naive.empty()) {
            CHECK_THROWS_AS(enumerate_paths(g, {sources, targets}, cutoff, 1'000'000, relax),
                            BntError);
            continue;
        }
        PathEnumeration e = enumerate_paths(g, {sources, targets}, cutoff, 1'000'000, relax);
        CHECK(e.raw_path_count == naive.size());
        CHECK(e.matrix.path_count() == naive_sets.size());
        std::set<std::vector<unsigned>> got_sets;
        for (PathId r = 0; r < e.matrix.path_count(); ++r) {
            std::vector<unsigned> orig;
            for (NodeId c : e.matrix.row(r).to_indices()) orig.push_back(e.kept_nodes[c]);
            got_sets.insert(orig);
        }
        CHECK(got_sets == naive_sets);
    }
}

TEST_CASE("induced subgraph renumbers in order") {
    Graph g = fixtures::demo_graph();
    Graph s = induced_subgraph(g, {0, 2, 4, 5});
    CHECK(s.vertex_count == 4);
    std::vector<std::pair<NodeId, NodeId>> want = {{0, 1}, {1, 2}, {2, 3}};
    CHECK(s.edges == want);
}
