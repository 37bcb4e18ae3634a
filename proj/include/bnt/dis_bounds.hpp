#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "bnt/bits.hpp"
#include "bnt/budget.hpp"
#include "bnt/graphio.hpp"
#include "bnt/pathmatrix.hpp"

// Structural upper bounds on how many nodes can be k-distinguishable.
//
// The engine rests on a relaxed column comparison: node u and a partner set
// W are "k-equal modulo a path selection" when, after discarding a chosen
// sub-block of shared paths per partner, (1) some partner pair absorbs what
// remains of u's paths and (2) u absorbs what remains of every partner's
// paths. Any such (u, W) has P(W) = P(u), so u cannot be distinguished from
// W at level |W|. Counting nodes caught this way level by level (tau),
// over a shrinking live set, yields the bound n - sum(tau).
namespace bnt::dis_bounds {

// Where the candidate partner sets W for a node u come from.
enum class PoolKind {
    neighbours,     // graph neighbours of u
    distance,       // vertices at hop distance exactly d from u
    all_nodes,      // every other node (paired with shortest-path selectors)
    explicit_sets,  // caller-supplied candidate sets per node
};

// Which shared paths may be discarded when comparing u with a partner w.
enum class SelectorKind {
    full_intersection, // all paths touching both u and w
    shortest_only,     // only rows containing a full shortest u-w path
    explicit_sets,     // caller-supplied rows per (u, w); missing pairs = none
};

struct StrategyConfig {
    PoolKind pool = PoolKind::neighbours;
    std::uint32_t d = 1; // hop distance for PoolKind::distance, >= 1
    SelectorKind selector = SelectorKind::full_intersection;

    // PoolKind::explicit_sets: candidate_sets[u] lists the partner sets W
    // tried for node u, in the order given. Sets are normalized (sorted,
    // deduplicated) on construction; u itself must not appear.
    std::vector<std::vector<NodeSet>> candidate_sets;

    // SelectorKind::explicit_sets: discardable rows per (u, w).
    std::map<std::pair<NodeId, NodeId>, PathSet> selectors;

    // Cap on the shortest-path enumeration behind SelectorKind::shortest_only.
    std::uint64_t shortest_path_budget = kDefaultBudget;
};

// A path selection: mask over rows that may be discarded when comparing u
// with w. Must select a subset of P(u) & P(w).
using PathSelector = std::function<Bits(NodeId u, NodeId w)>;

// True iff u and the nonempty set W (u not in W) are equal modulo the
// selection: (1) there are w, w' in W (equality allowed) with
// P(u) \ sel(u,w) contained in P(w'), and (2) for every w in W,
// P(w) \ sel(u,w) is contained in P(u).
// Throws selector_out_of_range if a selection leaves P(u) & P(w).
bool k_equal(const PathMatrix& p, NodeId u, const NodeSet& w_set, const PathSelector& selector);

// A StrategyConfig resolved against a concrete matrix (and graph, for the
// graph-derived kinds). Immutable once built.
class Strategy {
public:
    // Graph-free kinds only (explicit pool + non-shortest selector).
    Strategy(const PathMatrix& p, StrategyConfig config);

    // Graph-derived kinds; the graph's vertices must be the matrix columns.
    Strategy(const graphio::Graph& g, const PathMatrix& p, StrategyConfig config);

    const StrategyConfig& config() const { return config_; }
    const PathMatrix& matrix() const { return *matrix_; }

    // Partner pool of u (builtin kinds; never contains u). For the
    // explicit kind: the union of u's candidate sets.
    const NodeSet& pool(NodeId u) const { return pools_.at(u); }

    // The discardable-row mask for (u, w).
    Bits selector_mask(NodeId u, NodeId w) const;
    PathSelector path_selector() const;

    // Walks the candidate sets W for u with 1 <= |W| <= k and W inside
    // `live` (u excluded), in deterministic order: subsets of the pool by
    // size then lexicographically, or the supplied order for the explicit
    // kind. fn returning true stops the walk early.
    void for_each_candidate(NodeId u, std::uint32_t k, const Bits& live,
                            const std::function<bool(const NodeSet&)>& fn) const;

private:
    void build_pools(const graphio::Graph* g);
    void build_shortest_masks(const graphio::Graph& g);

    const PathMatrix* matrix_;
    StrategyConfig config_;
    std::vector<NodeSet> pools_;
    std::vector<std::vector<Bits>> shortest_masks_; // [u][w], shortest_only
};

// Nodes of v_set admitting some candidate set (within v_set) they are
// k-equal to. Deterministic; propagates selector errors.
NodeSet e_set(const PathMatrix& p, const NodeSet& v_set, std::uint32_t k,
              const Strategy& strategy);

struct TauLevel {
    std::uint32_t k = 0;
    std::uint32_t tau = 0; // |removed|
    NodeSet removed;
};

// Level-by-level removal ledger. The removed sets are pairwise disjoint
// and bound = n - sum(tau) >= 0.
struct TauLedger {
    std::vector<TauLevel> per_level;
    std::uint32_t bound = 0;
};

// Runs the shrinking-live-set recursion: live starts at all nodes and
// level j removes e_set(p, live, j, strategy). A node removed at level j
// cannot be j-distinguishable (nor i-distinguishable for any i >= j), so
// n - sum(tau_1..tau_j) caps the number of j-distinguishable nodes, and
// `bound` (the full sum, j = k_max) caps the count at level k_max. Lower
// levels are capped only by their own prefix, not by `bound`.
TauLedger lb_dis(const PathMatrix& p, std::uint32_t k_max, const Strategy& strategy);

} // namespace bnt::dis_bounds
