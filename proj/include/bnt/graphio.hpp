#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bnt/budget.hpp"
#include "bnt/pathmatrix.hpp"

namespace bnt::graphio {

// Simple undirected graph: no self-loops, no parallel edges. Vertices are
// 0-based and contiguous; adjacency lists are kept sorted.
struct Graph {
    std::uint32_t vertex_count = 0;
    std::vector<std::pair<NodeId, NodeId>> edges; // normalized u < v, sorted
    std::vector<NodeSet> adjacency;
};

Graph make_graph(std::uint32_t vertex_count, std::vector<std::pair<NodeId, NodeId>> edges);

// Text format: first line the vertex count, then one "u v" pair per line.
// With one_based set, vertex ids in the text are 1-based.
Graph read_graph(std::string_view text, bool one_based = false);
std::string write_graph(const Graph& g, bool one_based = false);

struct MonitorSpec {
    NodeSet sources, targets; // need not be disjoint
};

struct PathEnumeration {
    PathMatrix matrix;
    // new column index -> original vertex id. Vertices on no enumerated
    // path are dropped from the matrix.
    std::vector<NodeId> kept_nodes;
    std::uint64_t raw_path_count = 0; // before node-set deduplication
};

// Enumerates every simple path with at least one edge and at most `cutoff`
// edges from any source to any target, records each as its set of
// traversed vertices, deduplicates equal sets, sorts them, drops vertices
// on no path, and validates the resulting matrix under `opts`. Duplicate
// columns are tolerated by default: vertices that always travel together
// (a vertex and its sole gateway, say) are a fact of the topology.
// Errors: path_budget_exceeded once more than max_paths raw paths are
// recorded; no_paths if nothing was found.
PathEnumeration enumerate_paths(const Graph& g, const MonitorSpec& monitors,
                                std::uint32_t cutoff, std::uint64_t max_paths = 1'000'000,
                                const ValidationOptions& opts = {false, true, false});

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

// All-pairs BFS distances plus, per source, the lexicographically least
// predecessor of every reachable vertex (the smallest neighbour one step
// closer to the source), fixing one canonical shortest path per pair.
struct DistanceTable {
    std::vector<std::vector<std::uint32_t>> dist;  // kUnreachable if disconnected
    std::vector<std::vector<NodeId>> parent;       // kUnreachable if none/self
};

DistanceTable distances(const Graph& g);

// Vertex set of the canonical shortest path from u to v (endpoints
// included); empty if unreachable. u = v gives {u}.
NodeSet canonical_shortest_path(const DistanceTable& t, NodeId u, NodeId v);

// Vertex sets of every shortest u-v path, in lexicographic order of the
// underlying vertex sequences. Budget charged per enumerated path.
std::vector<NodeSet> all_shortest_paths(const Graph& g, const DistanceTable& t, NodeId u,
                                        NodeId v, BudgetCounter& budget);

// Subgraph induced by `kept` (sorted vertex ids), with vertices renumbered
// to 0..|kept|-1 in order.
Graph induced_subgraph(const Graph& g, const NodeSet& kept);

} // namespace bnt::graphio
