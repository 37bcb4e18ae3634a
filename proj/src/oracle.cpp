#include "bnt/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "bnt/enumerate.hpp"

namespace bnt::oracle {

namespace {

void check_k(const PathMatrix& P, unsigned k, bool allow_zero = false) {
    if (k == 0 && !allow_zero)
        throw BntError(ErrorKind::invalid_argument, "k must be at least 1");
    if (k > P.node_count())
        throw BntError(ErrorKind::k_too_large,
                       "k = " + std::to_string(k) + " exceeds node count " +
                           std::to_string(P.node_count()),
                       {{"k", static_cast<std::int64_t>(k)},
                        {"nodes", static_cast<std::int64_t>(P.node_count())}});
}

void check_node(const PathMatrix& P, NodeId u) {
    if (u >= P.node_count())
        throw BntError(ErrorKind::invalid_argument, "node index out of range", {{"node", u}});
}

// Pool of all node ids except u, ascending.
NodeSet others(const PathMatrix& P, NodeId u) {
    NodeSet pool;
    pool.reserve(P.node_count() - 1);
    for (NodeId v = 0; v < P.node_count(); ++v)
        if (v != u) pool.push_back(v);
    return pool;
}

Bits union_of(const PathMatrix& P, const NodeSet& pool, const std::vector<std::uint32_t>& idxs) {
    Bits acc(P.path_count());
    for (auto i : idxs) acc |= P.column(pool[i]);
    return acc;
}

// Enumerates subsets W of `pool` with lo <= |W| <= hi (ascending size, lex
// within size) and hands their path mask to fn; stops when fn returns true.
template <typename Fn>
bool scan_unions(const PathMatrix& P, const NodeSet& pool, unsigned lo, unsigned hi, Fn&& fn) {
    const auto pool_n = static_cast<std::uint32_t>(pool.size());
    return for_each_combination_up_to(
        pool_n, lo, std::min<std::uint32_t>(hi, pool_n),
        [&](const std::vector<std::uint32_t>& idxs) { return fn(union_of(P, pool, idxs), idxs); });
}

// Runs fn(u) over all nodes on `threads` workers; exceptions are replayed
// on the caller thread. fn must only write to per-node slots.
template <typename Fn>
void parallel_nodes(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t u = 0; u < n; ++u) fn(static_cast<NodeId>(u));
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t u = next.fetch_add(1);
            if (u >= n) return;
            try {
                fn(static_cast<NodeId>(u));
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned use = std::min<unsigned>(threads, static_cast<unsigned>(n));
    pool.reserve(use);
    for (unsigned t = 0; t < use; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

} // namespace

bool is_node_separable(const PathMatrix& P, NodeId u, unsigned k, BudgetCounter& budget) {
    check_node(P, u);
    check_k(P, k);
    const Bits& cu = P.column(u);
    const NodeSet pool = others(P, u);
    const bool covered = scan_unions(P, pool, 0, k, [&](const Bits& mask, const auto&) {
        budget.charge();
        return cu.is_subset_of(mask); // P(u) \ P(U) = {}  -- counterexample
    });
    return !covered;
}

bool is_node_distinguishable(const PathMatrix& P, NodeId u, unsigned k, BudgetCounter& budget) {
    check_node(P, u);
    check_k(P, k);
    const Bits& cu = P.column(u);
    const NodeSet pool = others(P, u);
    const bool matched = scan_unions(P, pool, 0, k, [&](const Bits& mask, const auto&) {
        budget.charge();
        return mask == cu; // P(U) = P(u)  -- counterexample
    });
    return !matched;
}

bool is_node_identifiable(const PathMatrix& P, NodeId u, unsigned k, BudgetCounter& budget) {
    check_node(P, u);
    check_k(P, k);
    const NodeSet pool = others(P, u);
    // Pre-build the W side (u notin W, |W| <= k) once, in enumeration order.
    std::vector<Bits> w_masks;
    scan_unions(P, pool, 0, k, [&](const Bits& mask, const auto&) {
        w_masks.push_back(mask);
        return false;
    });
    // U side: U = {u} cup A with |A| <= k-1.
    const Bits& cu = P.column(u);
    const bool collision =
        scan_unions(P, pool, 0, k - 1, [&](const Bits& a_mask, const auto&) {
            Bits u_mask = a_mask;
            u_mask |= cu;
            for (const Bits& w : w_masks) {
                budget.charge();
                if (w == u_mask) return true; // P(U) = P(W) -- counterexample
            }
            return false;
        });
    return !collision;
}

bool is_node_identifiable_literal(const PathMatrix& P, NodeId u, unsigned k,
                                  BudgetCounter& budget) {
    check_node(P, u);
    check_k(P, k);
    // All candidate sets of size <= k over [n], with their masks and their
    // membership bit at u.
    NodeSet all;
    for (NodeId v = 0; v < P.node_count(); ++v) all.push_back(v);
    std::vector<std::pair<Bits, bool>> sets; // (mask, contains u)
    for_each_combination_up_to(static_cast<std::uint32_t>(all.size()), 0, k,
                               [&](const std::vector<std::uint32_t>& idxs) {
                                   bool has_u = false;
                                   for (auto i : idxs) has_u |= (all[i] == u);
                                   sets.emplace_back(union_of(P, all, idxs), has_u);
                                   return false;
                               });
    for (const auto& [mu_mask, u_in_U] : sets) {
        for (const auto& [mw_mask, u_in_W] : sets) {
            budget.charge();
            if (u_in_U != u_in_W && mu_mask == mw_mask) return false;
        }
    }
    return true;
}

bool is_matrix_identifiable(const PathMatrix& P, unsigned k, BudgetCounter& budget) {
    check_k(P, k);
    NodeSet all;
    for (NodeId v = 0; v < P.node_count(); ++v) all.push_back(v);
    // All pairs of distinct candidate sets of size <= k must have distinct
    // unions. Sets are compared as index sets, unions as path masks.
    std::vector<std::pair<Bits, std::vector<std::uint32_t>>> sets;
    for_each_combination_up_to(static_cast<std::uint32_t>(all.size()), 0, k,
                               [&](const std::vector<std::uint32_t>& idxs) {
                                   sets.emplace_back(union_of(P, all, idxs), idxs);
                                   return false;
                               });
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            budget.charge();
            if (sets[i].first == sets[j].first) return false;
        }
    }
    return true;
}

IdentifiabilityReport report(const PathMatrix& P, unsigned k, BudgetCounter& budget,
                             unsigned threads) {
    check_k(P, k);
    const std::size_t n = P.node_count();
    std::vector<std::uint8_t> sep(n), id(n), dis(n);
    parallel_nodes(n, threads, [&](NodeId u) {
        sep[u] = is_node_separable(P, u, k, budget);
        id[u] = is_node_identifiable(P, u, k, budget);
        dis[u] = is_node_distinguishable(P, u, k, budget);
    });
    IdentifiabilityReport r;
    r.k = k;
    for (NodeId u = 0; u < n; ++u) {
        if (sep[u]) r.sep.push_back(u);
        if (id[u]) r.id.push_back(u);
        if (dis[u]) r.dis.push_back(u);
    }
    return r;
}

Thresholds mu_sigma_delta(const PathMatrix& P, unsigned k_max, BudgetCounter& budget,
                          unsigned threads) {
    check_k(P, k_max);
    Thresholds t;
    bool sep_alive = true, id_alive = true, dis_alive = true;
    for (unsigned k = 1; k <= k_max && (sep_alive || id_alive || dis_alive); ++k) {
        const std::size_t n = P.node_count();
        std::vector<std::uint8_t> sep(n, 1), id(n, 1), dis(n, 1);
        parallel_nodes(n, threads, [&](NodeId u) {
            if (sep_alive) sep[u] = is_node_separable(P, u, k, budget);
            if (id_alive) id[u] = is_node_identifiable(P, u, k, budget);
            if (dis_alive) dis[u] = is_node_distinguishable(P, u, k, budget);
        });
        auto all = [n](const std::vector<std::uint8_t>& v) {
            for (std::size_t u = 0; u < n; ++u)
                if (!v[u]) return false;
            return true;
        };
        if (sep_alive) {
            if (all(sep)) t.sigma = k;
            else sep_alive = false;
        }
        if (id_alive) {
            if (all(id)) t.mu = k;
            else id_alive = false;
        }
        if (dis_alive) {
            if (all(dis)) t.delta = k;
            else dis_alive = false;
        }
    }
    t.sigma_capped = sep_alive;
    t.mu_capped = id_alive;
    t.delta_capped = dis_alive;
    if (!(t.sigma <= t.mu && t.mu <= t.delta))
        throw std::logic_error("threshold ordering sigma <= mu <= delta violated");
    return t;
}

std::vector<NodeSet> localize(const PathMatrix& P, const Measurement& M, unsigned k,
                              BudgetCounter& budget) {
    check_k(P, k, /*allow_zero=*/true);
    if (M.size() != P.path_count())
        throw BntError(ErrorKind::invalid_argument,
                       "measurement has " + std::to_string(M.size()) + " entries, matrix has " +
                           std::to_string(P.path_count()) + " paths");
    const Bits fail = M.fail_mask();
    NodeSet all;
    for (NodeId v = 0; v < P.node_count(); ++v) all.push_back(v);
    std::vector<NodeSet> hits;
    for_each_combination_up_to(static_cast<std::uint32_t>(all.size()), 0, k,
                               [&](const std::vector<std::uint32_t>& idxs) {
                                   budget.charge();
                                   if (union_of(P, all, idxs) == fail) {
                                       NodeSet w;
                                       w.reserve(idxs.size());
                                       for (auto i : idxs) w.push_back(all[i]);
                                       hits.push_back(std::move(w));
                                   }
                                   return false;
                               });
    return hits;
}

} // namespace bnt::oracle
