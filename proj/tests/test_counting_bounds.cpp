#include <doctest.h>

#include <cmath>
#include <random>

#include "bnt/counting_bounds.hpp"
#include "bnt/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/reference.hpp"

using namespace bnt;
using namespace bnt::counting;
using namespace bnt::oracle;
using namespace bnt::transversal;

TEST_CASE("too few paths rule out full 1-identifiability") {
    CHECK_FALSE(mu_lt_1(3, 2));   // 2^2 = 4 > 3
    CHECK(mu_lt_1(4, 2));         // 2^2 = 4 <= 4
    CHECK_FALSE(mu_lt_1(7, 3));
    CHECK(mu_lt_1(8, 3));
    // huge m never triggers: 2^m outgrows any representable n
    CHECK_FALSE(mu_lt_1(UINT64_MAX, 64));
    CHECK_FALSE(mu_lt_1(UINT64_MAX, 4000));
    CHECK(mu_lt_1(UINT64_MAX, 63));
    // degenerate shapes are rejected, not guessed at
    CHECK_THROWS_AS(mu_lt_1(0, 3), BntError);
    CHECK_THROWS_AS(mu_lt_1(3, 0), BntError);
}

TEST_CASE("cap on 1-identifiable nodes") {
    CHECK(id1_upper(7, 4) == 7);     // 2^4 - 1 = 15 >= n
    CHECK(id1_upper(100, 3) == 7);   // 2^3 - 1
    CHECK(id1_upper(5, 70) == 5);    // saturating power
    CHECK(id1_upper(UINT64_MAX, 64) == UINT64_MAX);
    CHECK_THROWS_AS(id1_upper(100, 0), BntError);
}

TEST_CASE("the two 1-level forms agree") {
    for (std::uint64_t n = 1; n <= 40; ++n)
        for (std::uint64_t m = 1; m <= 8; ++m)
            CHECK(mu_lt_1(n, m) == (id1_upper(n, m) < n));
}

TEST_CASE("k-level threshold test at its exact boundary") {
    // k = 2, m = 3: the comparison sum is 3 + 9 + 27 = 39
    CHECK_FALSE(mu_lt_k(39, 3, 2));
    CHECK(mu_lt_k(40, 3, 2));
    // k = 3, m = 4: 4 + 4 + 16 + 16 = 40
    CHECK_FALSE(mu_lt_k(40, 4, 3));
    CHECK(mu_lt_k(41, 4, 3));
    // scaling C doubles the sum
    BoundParams doubled;
    doubled.C = 2.0;
    CHECK_FALSE(mu_lt_k(78, 3, 2, doubled));
    CHECK(mu_lt_k(79, 3, 2, doubled));
}

TEST_CASE("k-level threshold rejects out-of-regime arguments") {
    CHECK_THROWS_AS(mu_lt_k(10, 3, 1), BntError);
    CHECK_THROWS_AS(mu_lt_k(10, 3, 0), BntError);
    try {
        BoundParams params;
        params.m0 = 5;
        mu_lt_k(10, 4, 2, params);
        FAIL("expected the m floor to trip");
    } catch (const BntError& e) {
        CHECK(e.kind() == ErrorKind::m_below_threshold);
    }
}

TEST_CASE("threshold solved for m") {
    // n = 2^10, k = 2, C = 1, eps = 0.01: (0.5 * 10)^(1/1.01) - 1
    double t = m_threshold(1024, 2);
    CHECK(t == doctest::Approx(std::pow(5.0, 1.0 / 1.01) - 1.0).epsilon(1e-12));
    // no meaningful threshold once log2(n) <= log2(C)
    CHECK(std::isnan(m_threshold(1, 2)));
    BoundParams heavy;
    heavy.C = 16.0;
    CHECK(std::isnan(m_threshold(16, 2, heavy)));
    CHECK_THROWS_AS(m_threshold(1024, 1), BntError);
}

TEST_CASE("cap on k-identifiable nodes keeps its exponent exact") {
    IdkBound b = idk_upper(7, 4, 2);
    CHECK(b.value == 7);
    CHECK(b.bound_is_n);
    CHECK(b.exponent_num == 72);        // 2 * (4 + 2)^2 / 1
    CHECK(b.exponent_den == 1);
    CHECK(b.alt_exponent_num == 50);    // 2 * (4 + 1)^2 / 1
    CHECK(b.alt_exponent_den == 1);

    IdkBound c = idk_upper(UINT64_MAX, 1, 3);
    // exponent 3 * 25 / 2 = 37.5, far below 64 bits, so the cap binds
    CHECK_FALSE(c.bound_is_n);
    CHECK(static_cast<double>(c.exponent_num) / static_cast<double>(c.exponent_den) ==
          doctest::Approx(37.5));
    CHECK(c.value > (std::uint64_t{1} << 37));
    CHECK(c.value < (std::uint64_t{1} << 38));

    CHECK_THROWS_AS(idk_upper(7, 0, 2), BntError);
    CHECK_THROWS_AS(idk_upper(7, 4, 1), BntError);
}

TEST_CASE("column family of the seven-node example") {
    PathMatrix p = fixtures::demo_matrix();
    transversal::Hypergraph h = path_family(p);
    CHECK(h.vertices == NodeSet{0, 1, 2, 3});
    REQUIRE(h.edges.size() == 7);
    CHECK(h.edges[0] == NodeSet{0, 1});
    CHECK(h.edges[5] == NodeSet{2});
    CHECK(h.edges[6] == NodeSet{1, 3});

    ValidationOptions relax;
    relax.allow_duplicate_columns = true;
    PathMatrix dup = read_matrix("1,1\n1,1\n", relax);
    CHECK_THROWS_AS(path_family(dup), BntError);
}

TEST_CASE("union-freeness matches matrix identifiability") {
    PathMatrix demo = fixtures::demo_matrix();
    transversal::Hypergraph fam = path_family(demo);
    BudgetCounter b1(kDefaultBudget), b2(kDefaultBudget);
    CHECK(is_k_union_free(fam, 1, b1));
    CHECK_FALSE(is_k_union_free(fam, 2, b2));

    std::mt19937_64 rng(888);
    for (int it = 0; it < 60; ++it) {
        PathMatrix p = reference::random_matrix(rng, 3 + rng() % 5, 2 + rng() % 4);
        unsigned k = 1 + rng() % 2;
        if (k > p.node_count()) k = p.node_count();
        BudgetCounter bu(kDefaultBudget), bm(kDefaultBudget);
        CHECK(is_k_union_free(path_family(p), k, bu) == is_matrix_identifiable(p, k, bm));
    }
}

TEST_CASE("duplicate family members collapse before the union scan") {
    transversal::Hypergraph h = make_hypergraph({0, 1}, {{0}, {0}, {1}});
    BudgetCounter budget(kDefaultBudget);
    // as a set the family is {{0},{1}}: distinct singletons, distinct unions
    CHECK(is_k_union_free(h, 1, budget));
}

TEST_CASE("union scan honours its budget") {
    PathMatrix p = fixtures::demo_matrix();
    BudgetCounter budget(2);
    CHECK_THROWS_AS(is_k_union_free(path_family(p), 2, budget), BntError);
}
