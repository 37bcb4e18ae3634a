#include "bnt/dis_bounds.hpp"

#include <algorithm>

#include "bnt/enumerate.hpp"
#include "bnt/error.hpp"

namespace bnt::dis_bounds {

bool k_equal(const PathMatrix& p, NodeId u, const NodeSet& w_set, const PathSelector& selector) {
    p.check_node_set(w_set);
    if (u >= p.node_count())
        throw BntError(ErrorKind::invalid_argument, "node id out of range", {{"node", u}});
    if (w_set.empty())
        throw BntError(ErrorKind::invalid_argument, "partner set must be nonempty");

    const Bits& cu = p.column(u);
    std::vector<Bits> sels;
    sels.reserve(w_set.size());
    for (NodeId w : w_set) {
        if (w == u)
            throw BntError(ErrorKind::node_in_w, "node compared against a set containing itself",
                           {{"node", u}});
        Bits sel = selector(u, w);
        if (sel.size() != p.path_count())
            throw BntError(ErrorKind::invalid_argument, "selector mask has the wrong width",
                           {{"u", u}, {"w", w}});
        if (!sel.is_subset_of(cu & p.column(w)))
            throw BntError(ErrorKind::selector_out_of_range,
                           "selection leaves the shared paths of the pair", {{"u", u}, {"w", w}});
        sels.push_back(std::move(sel));
    }

    // (2) after discarding, every partner's paths lie inside P(u)
    for (std::size_t i = 0; i < w_set.size(); ++i)
        if (!p.column(w_set[i]).and_not(sels[i]).is_subset_of(cu)) return false;

    // (1) some partner pair absorbs what remains of P(u); w = w' allowed
    for (std::size_t i = 0; i < w_set.size(); ++i) {
        const Bits residue = cu.and_not(sels[i]);
        for (NodeId w2 : w_set)
            if (residue.is_subset_of(p.column(w2))) return true;
    }
    return false;
}

Strategy::Strategy(const PathMatrix& p, StrategyConfig config)
    : matrix_(&p), config_(std::move(config)) {
    if (config_.pool != PoolKind::explicit_sets || config_.selector == SelectorKind::shortest_only)
        throw BntError(ErrorKind::invalid_argument,
                       "this strategy kind is derived from a graph; supply one");
    build_pools(nullptr);
}

Strategy::Strategy(const graphio::Graph& g, const PathMatrix& p, StrategyConfig config)
    : matrix_(&p), config_(std::move(config)) {
    if (g.vertex_count != p.node_count())
        throw BntError(ErrorKind::graph_matrix_mismatch,
                       "graph vertices and matrix columns disagree",
                       {{"vertex_count", g.vertex_count},
                        {"node_count", static_cast<std::int64_t>(p.node_count())}});
    build_pools(&g);
    if (config_.selector == SelectorKind::shortest_only) build_shortest_masks(g);
}

void Strategy::build_pools(const graphio::Graph* g) {
    const std::uint32_t n = static_cast<std::uint32_t>(matrix_->node_count());
    pools_.assign(n, {});
    switch (config_.pool) {
        case PoolKind::neighbours:
            for (NodeId u = 0; u < n; ++u) pools_[u] = g->adjacency[u];
            break;
        case PoolKind::distance: {
            if (config_.d == 0)
                throw BntError(ErrorKind::invalid_argument, "hop distance must be at least 1");
            const auto table = graphio::distances(*g);
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = 0; v < n; ++v)
                    if (table.dist[u][v] == config_.d) pools_[u].push_back(v);
            break;
        }
        case PoolKind::all_nodes:
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = 0; v < n; ++v)
                    if (v != u) pools_[u].push_back(v);
            break;
        case PoolKind::explicit_sets: {
            if (config_.candidate_sets.size() != n)
                throw BntError(ErrorKind::invalid_argument,
                               "need one candidate list per node",
                               {{"lists", static_cast<std::int64_t>(config_.candidate_sets.size())},
                                {"node_count", n}});
            for (NodeId u = 0; u < n; ++u) {
                Bits member(n);
                for (NodeSet& w_set : config_.candidate_sets[u]) {
                    std::sort(w_set.begin(), w_set.end());
                    w_set.erase(std::unique(w_set.begin(), w_set.end()), w_set.end());
                    for (NodeId w : w_set) {
                        if (w >= n)
                            throw BntError(ErrorKind::invalid_argument,
                                           "candidate node id out of range", {{"node", w}});
                        if (w == u)
                            throw BntError(ErrorKind::node_in_w,
                                           "candidate set contains its own node", {{"node", u}});
                        member.set(w);
                    }
                }
                pools_[u] = member.to_indices();
            }
            break;
        }
    }
    if (config_.selector == SelectorKind::explicit_sets) {
        for (const auto& [pair, rows] : config_.selectors) {
            if (pair.first >= n || pair.second >= n)
                throw BntError(ErrorKind::invalid_argument, "selector node id out of range",
                               {{"u", pair.first}, {"w", pair.second}});
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i] >= matrix_->path_count())
                    throw BntError(ErrorKind::invalid_argument, "selector path id out of range",
                                   {{"path", rows[i]}});
                if (i > 0 && rows[i] <= rows[i - 1])
                    throw BntError(ErrorKind::invalid_argument,
                                   "selector path list must be strictly increasing");
            }
        }
    }
}

void Strategy::build_shortest_masks(const graphio::Graph& g) {
    const std::uint32_t n = g.vertex_count;
    const std::uint32_t m = static_cast<std::uint32_t>(matrix_->path_count());
    const auto table = graphio::distances(g);
    shortest_masks_.assign(n, std::vector<Bits>(n, Bits(m)));
    BudgetCounter budget(config_.shortest_path_budget);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (table.dist[u][v] == graphio::kUnreachable) continue;
            Bits mask(m);
            for (const NodeSet& path : graphio::all_shortest_paths(g, table, u, v, budget)) {
                Bits path_bits = Bits::from_indices(n, path);
                for (PathId r = 0; r < m; ++r)
                    if (path_bits.is_subset_of(matrix_->row(r))) mask.set(r);
            }
            shortest_masks_[u][v] = mask;
            shortest_masks_[v][u] = std::move(mask);
        }
    }
}

Bits Strategy::selector_mask(NodeId u, NodeId w) const {
    switch (config_.selector) {
        case SelectorKind::full_intersection:
            return matrix_->column(u) & matrix_->column(w);
        case SelectorKind::shortest_only:
            return shortest_masks_.at(u).at(w);
        case SelectorKind::explicit_sets: {
            const auto it = config_.selectors.find({u, w});
            if (it == config_.selectors.end()) return Bits(matrix_->path_count());
            return Bits::from_indices(matrix_->path_count(), it->second);
        }
    }
    return Bits(static_cast<std::uint32_t>(matrix_->path_count()));
}

PathSelector Strategy::path_selector() const {
    return [this](NodeId u, NodeId w) { return selector_mask(u, w); };
}

void Strategy::for_each_candidate(NodeId u, std::uint32_t k, const Bits& live,
                                  const std::function<bool(const NodeSet&)>& fn) const {
    if (config_.pool == PoolKind::explicit_sets) {
        for (const NodeSet& w_set : config_.candidate_sets[u]) {
            if (w_set.empty() || w_set.size() > k) continue;
            bool inside = true;
            for (NodeId w : w_set)
                if (!live.test(w)) {
                    inside = false;
                    break;
                }
            if (inside && fn(w_set)) return;
        }
        return;
    }
    NodeSet alive;
    for (NodeId v : pools_[u])
        if (live.test(v)) alive.push_back(v);
    NodeSet w_set;
    for_each_combination_up_to(
        static_cast<std::uint32_t>(alive.size()), 1, k,
        [&](const std::vector<std::uint32_t>& picks) {
            w_set.clear();
            for (std::uint32_t i : picks) w_set.push_back(alive[i]);
            return fn(w_set);
        });
}

NodeSet e_set(const PathMatrix& p, const NodeSet& v_set, std::uint32_t k,
              const Strategy& strategy) {
    p.check_node_set(v_set);
    if (k == 0)
        throw BntError(ErrorKind::invalid_argument, "level must be at least 1");
    Bits live(static_cast<std::uint32_t>(p.node_count()));
    for (NodeId v : v_set) live.set(v);
    const PathSelector sel = strategy.path_selector();
    NodeSet caught;
    for (NodeId u : v_set) {
        bool hit = false;
        strategy.for_each_candidate(u, k, live, [&](const NodeSet& w_set) {
            hit = k_equal(p, u, w_set, sel);
            return hit;
        });
        if (hit) caught.push_back(u);
    }
    return caught;
}

TauLedger lb_dis(const PathMatrix& p, std::uint32_t k_max, const Strategy& strategy) {
    const std::size_t n = p.node_count();
    if (k_max == 0)
        throw BntError(ErrorKind::invalid_argument, "level cap must be at least 1");
    if (k_max > n)
        throw BntError(ErrorKind::k_too_large, "level cap exceeds the node count",
                       {{"k", k_max}, {"node_count", static_cast<std::int64_t>(n)}});

    NodeSet live(n);
    for (NodeId u = 0; u < n; ++u) live[u] = u;
    TauLedger ledger;
    for (std::uint32_t j = 1; j <= k_max; ++j) {
        NodeSet removed = e_set(p, live, j, strategy);
        NodeSet rest;
        std::set_difference(live.begin(), live.end(), removed.begin(), removed.end(),
                            std::back_inserter(rest));
        live = std::move(rest);
        ledger.per_level.push_back({j, static_cast<std::uint32_t>(removed.size()),
                                    std::move(removed)});
    }
    ledger.bound = static_cast<std::uint32_t>(live.size());
    return ledger;
}

} // namespace bnt::dis_bounds
