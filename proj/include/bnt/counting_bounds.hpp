#pragma once

#include <cstdint>

#include "bnt/budget.hpp"
#include "bnt/pathmatrix.hpp"
#include "bnt/transversal.hpp"

namespace bnt::counting {

// Closed-form counting bounds tying the number of measurement paths m to
// how many of the n nodes can be identifiable. All integer comparisons are
// exact; sums that overflow extended precision fall back to log-domain
// (boundary fuzz is then confined to astronomically large regimes).

// True iff m < log2(n+1), i.e. 2^m <= n: with fewer than log2(n+1) paths
// no matrix on n nodes is 1-identifiable.
bool mu_lt_1(std::uint64_t n, std::uint64_t m);

// Cap on the number of 1-identifiable nodes: min(n, 2^m - 1), saturating.
std::uint64_t id1_upper(std::uint64_t n, std::uint64_t m);

// Parameters of the heuristic k-level threshold test. C and the exponent
// slack epsilon come from an asymptotic counting argument and carry no
// finite-size guarantee; every output derived from them is labeled
// heuristic. m0 is the smallest m the test accepts.
struct BoundParams {
    double C = 1.0;
    double epsilon = 0.01;
    std::uint32_t m0 = 1;
};

// Heuristic: true iff n > sum_{r=1..m} C * m^ceil(r/(k-1)), in which case
// fewer than k levels of identifiability are attainable for all matrices
// of the given shape. Requires k >= 2 and m >= m0 (m below the threshold
// is an error since the asymptotic regime is meaningless there).
bool mu_lt_k(std::uint64_t n, std::uint64_t m, unsigned k, const BoundParams& params = {});

// Convenience form of the same heuristic solved for m: the threshold value
// ((k-1)/k * (log2 n - D))^(1/(1+epsilon)) - (k-1) with D = log2 C.
// NaN when log2 n <= D (no meaningful threshold).
double m_threshold(std::uint64_t n, unsigned k, const BoundParams& params = {});

// Cap on the number of k-identifiable nodes: min(n, 2^(k(m+2k-2)^2/(k-1))).
// The exponent is kept as an exact rational; the alternative exponent
// variant k(m+k-1)^2/(k-1) in circulation is computed alongside for
// comparison but does not feed the value. Requires k >= 2, m >= 1.
struct IdkBound {
    std::uint64_t value = 0;       // min(n, floor(2^exponent)), saturating
    bool bound_is_n = false;       // true iff n <= 2^exponent
    std::uint64_t exponent_num = 0, exponent_den = 1;         // k(m+2k-2)^2 / (k-1)
    std::uint64_t alt_exponent_num = 0, alt_exponent_den = 1; // k(m+k-1)^2 / (k-1)
};
IdkBound idk_upper(std::uint64_t n, std::uint64_t m, unsigned k);

// The column family of a matrix: one edge per node, namely its set of
// paths, over the vertex set of all path ids. Columns must be pairwise
// distinct so the family has exactly n members (verified).
transversal::Hypergraph path_family(const PathMatrix& P);

// True iff no two distinct subfamilies of 1..k edges have equal unions.
// Duplicate edges in the input are collapsed first (a family is a set).
// The budget is charged once per subfamily enumerated.
bool is_k_union_free(const transversal::Hypergraph& H, unsigned k, BudgetCounter& budget);

} // namespace bnt::counting
