#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bnt/budget.hpp"
#include "bnt/pathmatrix.hpp"

namespace bnt::transversal {

// Finite set system: a nonempty vertex set plus a list of hyperedges over
// it. Vertex ids need not be contiguous. Edges are sorted, duplicate-free
// subsets of the vertex set; an empty edge list is permitted, empty edges
// are rejected by the operations that cannot serve them.
struct Hypergraph {
    NodeSet vertices;
    std::vector<NodeSet> edges;
};

// Validates and normalizes the invariants above.
Hypergraph make_hypergraph(NodeSet vertices, std::vector<NodeSet> edges);

// Greedy deletion sweep: starts from the full vertex set and deletes each
// vertex, in the given order, whenever the remainder still meets every
// edge. Returns a minimal transversal in O(|V| * total edge size).
// No edges -> {}. Any empty edge -> error (no transversal exists).
// The order must be a permutation of the vertex set; the overload without
// one sweeps ascending.
NodeSet ht(const Hypergraph& H, const NodeSet& order);
NodeSet ht(const Hypergraph& H);

// Exact minimum hitting set by branch and bound: branches on the vertices
// of the first uncovered edge, prunes with a greedy disjoint-edge-packing
// lower bound, and keeps the lexicographically smallest among all covers
// of minimum size. The budget is charged once per search node.
NodeSet exact_mhs(const Hypergraph& H, BudgetCounter& budget);

// Witness that `node` is not |cover|-separable: a set of other nodes whose
// paths jointly cover P(node).
struct SepWitness {
    NodeId node = 0;
    NodeSet cover;
    std::size_t size() const { return cover.size(); }
};

// The covering system behind separability of u: vertices are the nodes
// v != u that share at least one path with u, and each path of P(u)
// contributes the edge of its other traversed nodes. nullopt iff u has a
// private path (an edge would be empty, so no cover exists and u is
// k-separable for every k).
std::optional<Hypergraph> sep_cover_system(const PathMatrix& P, NodeId u);

// Heuristic witness via a single deletion sweep over the covering system.
// nullopt iff u has a private path. Default sweep order ascending; a custom
// order is interpreted over the full node range and restricted to the
// system's vertices, preserving relative order.
std::optional<SepWitness> simple_sep(const PathMatrix& P, NodeId u,
                                     const NodeSet* order = nullptr);

// Staged variant: other nodes are grouped by how many paths of P(u) they
// miss, groups are processed in one pass (most-missing group first by
// default), each stage covers what it can of the still-uncovered paths via
// a deletion sweep, and a final sweep over the per-group coverage vectors
// picks a minimal set of groups. nullopt iff u has a private path.
enum class DecrDirection { largest_first, smallest_first };
std::optional<SepWitness> decr_sep(const PathMatrix& P, NodeId u,
                                   DecrDirection direction = DecrDirection::largest_first);

struct MnsResult {
    unsigned k = 0;  // least k at which u stops being k-separable
    NodeSet cover;   // a minimum cover witnessing it
};

// Exact minimal non-separability threshold: the least k such that u is not
// k-separable, i.e. the minimum hitting set size of the covering system.
// nullopt iff u has a private path (u is k-separable for every k).
std::optional<MnsResult> mns(const PathMatrix& P, NodeId u, BudgetCounter& budget);

// Embeds a hitting-set instance into a separability instance: one node per
// vertex plus a fresh node u lying on every path, one path per edge. The
// minimum hitting set size of H equals mns of u in the image. Columns may
// collide or be empty for degenerate H, so the image matrix is built with
// relaxed validation. Returns the matrix and the index of u.
// H must have at least one edge and no empty edge.
std::pair<PathMatrix, NodeId> mhs_to_mns_instance(const Hypergraph& H);

} // namespace bnt::transversal
