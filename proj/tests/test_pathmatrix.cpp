#include <doctest.h>

#include "bnt/pathmatrix.hpp"
#include "support/fixtures.hpp"

using namespace bnt;

TEST_CASE("matrix text round trip") {
    PathMatrix p = fixtures::demo_matrix();
    CHECK(p.path_count() == 4);
    CHECK(p.node_count() == 7);
    CHECK(write_matrix(p) == fixtures::kDemoMatrixText);
    PathMatrix again = read_matrix(write_matrix(p));
    CHECK(p == again);
}

TEST_CASE("columns are derived from rows") {
    PathMatrix p = fixtures::demo_matrix();
    CHECK(p.column(0).to_indices() == PathSet{0, 1});
    CHECK(p.column(4).to_indices() == PathSet{0, 2, 3});
    CHECK(p.column(5).to_indices() == PathSet{2});
    CHECK(p.bit(2, 5));
    CHECK_FALSE(p.bit(3, 5));
}

TEST_CASE("paths_mask unions columns; empty set gives empty mask") {
    PathMatrix p = fixtures::demo_matrix();
    CHECK(p.paths_of({1, 5}) == PathSet{0, 2, 3});
    CHECK(p.paths_of({}) == PathSet{});
    CHECK(p.paths_of({0, 1, 2, 3, 4, 5, 6}) == PathSet{0, 1, 2, 3});
}

TEST_CASE("parser rejects malformed input with positions") {
    CHECK_THROWS_AS(read_matrix(""), BntError);
    try {
        read_matrix("1,0\n1,2\n");
        FAIL("expected a parse error");
    } catch (const BntError& e) {
        CHECK(e.kind() == ErrorKind::parse_error);
        bool saw_line = false;
        for (const auto& [key, value] : e.details())
            if (key == "line") {
                saw_line = true;
                CHECK(value == 2);
            }
        CHECK(saw_line);
    }
    // ragged rows
    CHECK_THROWS_AS(read_matrix("1,0\n1\n"), BntError);
    // blank line inside the body
    CHECK_THROWS_AS(read_matrix("1,0\n\n0,1\n"), BntError);
    // CRLF and trailing blank lines are fine
    CHECK_NOTHROW(read_matrix("1,0\r\n0,1\r\n\r\n"));
    // spaces around fields are fine
    CHECK_NOTHROW(read_matrix(" 1 , 0\n 0 , 1\n"));
}

TEST_CASE("validation distinguishes the three defect kinds") {
    auto kind_of = [](const char* text, ValidationOptions opts = {}) {
        try {
            read_matrix(text, opts);
            return std::string("ok");
        } catch (const BntError& e) {
            return std::string(to_string(e.kind()));
        }
    };
    CHECK(kind_of("1,0\n1,0\n") == "zero_column");
    CHECK(kind_of("1,1\n1,1\n") == "duplicate_column");
    CHECK(kind_of("1,1\n0,0\n") == "empty_path");
    CHECK(kind_of("1,0\n0,1\n") == "ok");

    ValidationOptions relax;
    relax.allow_zero_columns = true;
    CHECK(kind_of("1,0\n1,0\n", relax) == "ok");
    relax.allow_duplicate_columns = true;
    CHECK(kind_of("1,1\n1,1\n", relax) == "ok");
    relax.allow_empty_paths = true;
    CHECK(kind_of("1,1\n0,0\n", relax) == "ok");
}

TEST_CASE("from_columns equals from_rows transpose") {
    PathMatrix p = fixtures::demo_matrix();
    std::vector<Bits> cols;
    for (NodeId u = 0; u < p.node_count(); ++u) cols.push_back(p.column(u));
    PathMatrix q = PathMatrix::from_columns(std::move(cols), p.path_count());
    CHECK(p == q);
}

TEST_CASE("check_node_set enforces sorted unique in-range") {
    PathMatrix p = fixtures::demo_matrix();
    CHECK_NOTHROW(p.check_node_set({0, 3, 6}));
    CHECK_NOTHROW(p.check_node_set({}));
    CHECK_THROWS_AS(p.check_node_set({3, 0}), BntError);
    CHECK_THROWS_AS(p.check_node_set({3, 3}), BntError);
    CHECK_THROWS_AS(p.check_node_set({7}), BntError);
}

TEST_CASE("measurement parse and write") {
    Measurement m = read_measurement("1,0,1,1\n");
    CHECK(m.size() == 4);
    CHECK(m.fail_mask().to_indices() == PathSet{0, 2, 3});
    CHECK(write_measurement(m) == "1,0,1,1\n");
    CHECK_THROWS_AS(read_measurement("1,0\n1,0\n"), BntError);
    CHECK_THROWS_AS(read_measurement(""), BntError);
}
