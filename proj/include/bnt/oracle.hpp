#pragma once

#include <cstdint>
#include <vector>

#include "bnt/budget.hpp"
#include "bnt/pathmatrix.hpp"

namespace bnt::oracle {

// Exact brute-force decision procedures for the three per-node properties,
// by direct enumeration of candidate node sets. Definitions (k >= 1):
//
//   u is k-separable:       every U subseteq [n]\{u} with |U| <= k leaves
//                           some path of P(u) uncovered: P(u) \ P(U) != {}.
//   u is k-distinguishable: every such U has P(U) != P(u).
//   u is k-identifiable:    no pair U, W with |U|,|W| <= k that differ
//                           exactly at u (u in U, u notin W) has P(U) = P(W).
//
// The empty set participates as a candidate of size 0 throughout, so on
// matrices with zero columns allowed, a node on no path is not k-separable
// for any k. Enumeration visits sizes ascending, lexicographic within a
// size, and exits on the first counterexample; the budget counter is
// charged once per candidate set (per candidate pair for identifiability).
//
// Per-node implication chain (every matrix, every k):
//   k-separable => k-identifiable => k-distinguishable
// and each property is anti-monotone in k.

bool is_node_separable(const PathMatrix& P, NodeId u, unsigned k, BudgetCounter& budget);
bool is_node_distinguishable(const PathMatrix& P, NodeId u, unsigned k, BudgetCounter& budget);

// Search form: only pairs (U, W) with u in U, u notin W are compared
// (swapping names, any violating pair can be brought to this form).
bool is_node_identifiable(const PathMatrix& P, NodeId u, unsigned k, BudgetCounter& budget);

// Literal form of the definition: quantifies over all pairs U, W of size
// <= k with U cap {u} != W cap {u}. Exponentially wasteful; kept as an
// independent cross-check for the search form.
bool is_node_identifiable_literal(const PathMatrix& P, NodeId u, unsigned k,
                                  BudgetCounter& budget);

// Matrix-level k-identifiability by direct enumeration of all pairs of
// distinct candidate sets of size <= k: true iff all unions differ.
// Equivalent to "every node is k-identifiable"; implemented independently.
bool is_matrix_identifiable(const PathMatrix& P, unsigned k, BudgetCounter& budget);

struct IdentifiabilityReport {
    unsigned k = 0;
    NodeSet sep, id, dis; // nodes passing each property at level k
};

// Classifies every node at level k. `threads` > 1 splits the per-node loop;
// results are schedule-independent.
IdentifiabilityReport report(const PathMatrix& P, unsigned k, BudgetCounter& budget,
                             unsigned threads = 1);

struct Thresholds {
    unsigned mu = 0, sigma = 0, delta = 0;      // largest k at which ALL nodes pass
    bool mu_capped = false, sigma_capped = false, delta_capped = false;
};

// Computes the three whole-matrix thresholds by ascending scan of k in
// [1, k_max]. A value equals k_max with its capped flag set when every node
// still passes at k_max. Verifies sigma <= mu <= delta before returning.
Thresholds mu_sigma_delta(const PathMatrix& P, unsigned k_max, BudgetCounter& budget,
                          unsigned threads = 1);

// All node sets W with |W| <= k whose failure signature reproduces the
// measurement exactly: P(W) = fail(M). Ordered by size, then
// lexicographically. k = 0 is allowed and can only yield the empty set.
std::vector<NodeSet> localize(const PathMatrix& P, const Measurement& M, unsigned k,
                              BudgetCounter& budget);

} // namespace bnt::oracle
