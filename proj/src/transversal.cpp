#include "bnt/transversal.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace bnt::transversal {

namespace {

// Dense view of a hypergraph: vertices remapped to positions 0..V-1,
// edges as V-bit masks.
struct DenseSystem {
    const Hypergraph* H;
    std::unordered_map<NodeId, std::uint32_t> pos; // vertex id -> position
    std::vector<Bits> edges;

    explicit DenseSystem(const Hypergraph& h) : H(&h) {
        pos.reserve(h.vertices.size() * 2);
        for (std::uint32_t i = 0; i < h.vertices.size(); ++i) pos.emplace(h.vertices[i], i);
        edges.reserve(h.edges.size());
        for (const auto& e : h.edges) {
            Bits mask(h.vertices.size());
            for (auto v : e) mask.set(pos.at(v));
            edges.push_back(std::move(mask));
        }
    }

    NodeSet to_vertex_set(const Bits& mask) const {
        NodeSet out;
        out.reserve(mask.count());
        mask.for_each_set([&](std::uint32_t p) { out.push_back(H->vertices[p]); });
        std::sort(out.begin(), out.end());
        return out;
    }
};

void check_no_empty_edge(const Hypergraph& H) {
    for (std::size_t i = 0; i < H.edges.size(); ++i)
        if (H.edges[i].empty())
            throw BntError(ErrorKind::empty_edge,
                           "edge " + std::to_string(i) + " is empty; no transversal exists",
                           {{"edge", static_cast<std::int64_t>(i)}});
}

bool sorted_unique(const NodeSet& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i - 1] >= s[i]) return false;
    return true;
}

} // namespace

Hypergraph make_hypergraph(NodeSet vertices, std::vector<NodeSet> edges) {
    if (vertices.empty())
        throw BntError(ErrorKind::invalid_argument, "hypergraph: vertex set must be nonempty");
    if (!sorted_unique(vertices))
        throw BntError(ErrorKind::invalid_argument,
                       "hypergraph: vertex set must be sorted and duplicate-free");
    for (const auto& e : edges) {
        if (!sorted_unique(e))
            throw BntError(ErrorKind::invalid_argument,
                           "hypergraph: edges must be sorted and duplicate-free");
        for (auto v : e)
            if (!std::binary_search(vertices.begin(), vertices.end(), v))
                throw BntError(ErrorKind::invalid_argument,
                               "hypergraph: edge member outside vertex set", {{"vertex", v}});
    }
    return Hypergraph{std::move(vertices), std::move(edges)};
}

NodeSet ht(const Hypergraph& H, const NodeSet& order) {
    if (H.edges.empty()) return {};
    check_no_empty_edge(H);
    {
        NodeSet sorted_order = order;
        std::sort(sorted_order.begin(), sorted_order.end());
        if (sorted_order != H.vertices)
            throw BntError(ErrorKind::invalid_argument,
                           "ht: order must be a permutation of the vertex set");
    }
    DenseSystem d(H);
    Bits keep(H.vertices.size());
    for (std::size_t i = 0; i < H.vertices.size(); ++i) keep.set(i);
    for (auto v : order) {
        const std::uint32_t p = d.pos.at(v);
        keep.set(p, false);
        bool still_transversal = true;
        for (const auto& e : d.edges) {
            if (!e.intersects(keep)) {
                still_transversal = false;
                break;
            }
        }
        if (!still_transversal) keep.set(p, true);
    }
    return d.to_vertex_set(keep);
}

NodeSet ht(const Hypergraph& H) { return ht(H, H.vertices); }

namespace {

struct MhsSearch {
    const DenseSystem& d;
    BudgetCounter& budget;
    std::uint32_t V;
    NodeSet best;            // as positions, sorted; empty + found=false means none yet
    bool found = false;

    MhsSearch(const DenseSystem& dd, BudgetCounter& b)
        : d(dd), budget(b), V(static_cast<std::uint32_t>(dd.H->vertices.size())) {}

    // Greedy lower bound: number of uncovered edges whose allowed vertex
    // sets are pairwise disjoint (each needs its own pick). Returns V+1 if
    // some uncovered edge has no allowed vertex at all (branch infeasible).
    std::uint32_t lower_bound(const Bits& chosen, const Bits& forbidden) const {
        Bits used(V); // vertices consumed by packed edges
        std::uint32_t packed = 0;
        for (const auto& e : d.edges) {
            if (e.intersects(chosen)) continue; // already covered
            const Bits avail = e.and_not(forbidden);
            if (avail.none()) return V + 1;
            if (!avail.intersects(used)) {
                used |= avail;
                ++packed;
            }
        }
        return packed;
    }

    void run(Bits& chosen, std::vector<std::uint32_t>& picks, const Bits& forbidden) {
        budget.charge();
        // find first uncovered edge
        const Bits* branch_edge = nullptr;
        for (const auto& e : d.edges) {
            if (!e.intersects(chosen)) {
                branch_edge = &e;
                break;
            }
        }
        if (!branch_edge) {
            NodeSet cand(picks.begin(), picks.end());
            std::sort(cand.begin(), cand.end());
            if (!found || cand.size() < best.size() ||
                (cand.size() == best.size() && cand < best)) {
                best = std::move(cand);
                found = true;
            }
            return;
        }
        const std::uint32_t lb = lower_bound(chosen, forbidden);
        if (lb == V + 1) return; // some edge has no usable vertex left
        if (found && picks.size() + lb > best.size()) return;
        // Branch on each allowed vertex of the edge, ascending; forbid
        // previously tried ones in later branches so each cover family is
        // explored once. Equal-size branches stay open so the
        // lexicographically smallest minimum cover is found.
        Bits forb = forbidden;
        std::vector<std::uint32_t> options;
        branch_edge->for_each_set([&](std::uint32_t p) {
            if (!forbidden.test(p)) options.push_back(p);
        });
        for (auto p : options) {
            chosen.set(p);
            picks.push_back(p);
            run(chosen, picks, forb);
            picks.pop_back();
            chosen.set(p, false);
            forb.set(p);
        }
    }
};

} // namespace

NodeSet exact_mhs(const Hypergraph& H, BudgetCounter& budget) {
    if (H.edges.empty()) return {};
    check_no_empty_edge(H);
    DenseSystem d(H);
    MhsSearch search(d, budget);
    Bits chosen(H.vertices.size());
    Bits forbidden(H.vertices.size());
    std::vector<std::uint32_t> picks;
    search.run(chosen, picks, forbidden);
    if (!search.found)
        throw std::logic_error("exact_mhs: no cover found despite nonempty edges");
    Bits mask(H.vertices.size());
    for (auto p : search.best) mask.set(p);
    return d.to_vertex_set(mask);
}

std::optional<Hypergraph> sep_cover_system(const PathMatrix& P, NodeId u) {
    if (u >= P.node_count()) throw BntError(ErrorKind::invalid_argument, "node index out of range", {{"node", u}});
    const Bits& cu = P.column(u);
    // T(u): other nodes sharing at least one path with u.
    NodeSet tu;
    for (NodeId v = 0; v < P.node_count(); ++v)
        if (v != u && P.column(v).intersects(cu)) tu.push_back(v);
    std::vector<NodeSet> edges;
    bool private_path = false;
    cu.for_each_set([&](std::uint32_t p) {
        NodeSet e;
        P.row(p).for_each_set([&](std::uint32_t v) {
            if (v != u) e.push_back(v);
        });
        if (e.empty()) private_path = true;
        edges.push_back(std::move(e));
    });
    if (private_path) return std::nullopt;
    if (edges.empty()) {
        // P(u) empty (possible only with zero columns allowed): covered by
        // the empty set, modeled as a system with no edges. Vertex sets must
        // be nonempty, so surface this degenerate case to the callers.
        return std::nullopt;
    }
    if (tu.empty()) return std::nullopt; // unreachable given the above, kept defensive
    return make_hypergraph(std::move(tu), std::move(edges));
}

namespace {

std::optional<SepWitness> degenerate_empty_column_witness(const PathMatrix& P, NodeId u) {
    // A node on no path is covered by the empty set: not 0-separable.
    if (P.column(u).none()) return SepWitness{u, {}};
    return std::nullopt;
}

} // namespace

std::optional<SepWitness> simple_sep(const PathMatrix& P, NodeId u, const NodeSet* order) {
    if (u >= P.node_count()) throw BntError(ErrorKind::invalid_argument, "node index out of range", {{"node", u}});
    if (auto w = degenerate_empty_column_witness(P, u)) return w;
    auto sys = sep_cover_system(P, u);
    if (!sys) return std::nullopt; // private path
    NodeSet sweep;
    if (order) {
        for (auto v : *order)
            if (std::binary_search(sys->vertices.begin(), sys->vertices.end(), v))
                sweep.push_back(v);
        NodeSet check = sweep;
        std::sort(check.begin(), check.end());
        if (check != sys->vertices)
            throw BntError(ErrorKind::invalid_argument,
                "simple_sep: order must cover the covering system's vertices");
    } else {
        sweep = sys->vertices;
    }
    return SepWitness{u, ht(*sys, sweep)};
}

std::optional<SepWitness> decr_sep(const PathMatrix& P, NodeId u, DecrDirection direction) {
    if (u >= P.node_count()) throw BntError(ErrorKind::invalid_argument, "node index out of range", {{"node", u}});
    if (auto w = degenerate_empty_column_witness(P, u)) return w;
    const Bits& cu = P.column(u);
    // Private path check: some path of P(u) touching no other node.
    {
        bool private_path = false;
        cu.for_each_set([&](std::uint32_t p) {
            Bits rest = P.row(p);
            rest.set(u, false);
            if (rest.none()) private_path = true;
        });
        if (private_path) return std::nullopt;
    }
    const std::size_t pu_size = cu.count();
    // Group the other nodes by how many paths of P(u) they miss.
    std::vector<NodeSet> groups(pu_size + 1);
    for (NodeId v = 0; v < P.node_count(); ++v) {
        if (v == u) continue;
        const std::size_t hits = (P.column(v) & cu).count();
        groups[pu_size - hits].push_back(v);
    }
    std::vector<std::size_t> order; // nonempty group indices, processing order
    for (std::size_t i = 0; i <= pu_size; ++i)
        if (!groups[i].empty()) order.push_back(i);
    if (direction == DecrDirection::largest_first)
        std::reverse(order.begin(), order.end());

    struct Stage {
        std::size_t group;
        Bits coverage;  // paths of P(u) newly coverable by this group
        NodeSet picked; // minimal members covering them
    };
    std::vector<Stage> stages;
    Bits uncovered = cu;
    for (auto g : order) {
        // Stage system: still-uncovered paths restricted to this group's
        // members; paths the group cannot reach stay for later groups.
        Bits group_mask(P.path_count());
        for (auto v : groups[g]) group_mask |= P.column(v);
        const Bits reach = group_mask & uncovered;
        NodeSet picked;
        if (reach.any()) {
            std::vector<NodeSet> edges;
            reach.for_each_set([&](std::uint32_t p) {
                NodeSet e;
                for (auto v : groups[g])
                    if (P.bit(p, v)) e.push_back(v);
                edges.push_back(std::move(e));
            });
            picked = ht(make_hypergraph(groups[g], std::move(edges)));
        }
        stages.push_back(Stage{g, reach, std::move(picked)});
        uncovered = uncovered.and_not(reach);
    }
    if (uncovered.any())
        throw std::logic_error("decr_sep: paths left uncovered despite no private path");
    // Final sweep over groups: each path of P(u) is an edge listing the
    // stages that cover it; keep a minimal set of stages.
    NodeSet stage_ids;
    for (std::uint32_t i = 0; i < stages.size(); ++i) stage_ids.push_back(i);
    std::vector<NodeSet> group_edges;
    cu.for_each_set([&](std::uint32_t p) {
        NodeSet e;
        for (std::uint32_t i = 0; i < stages.size(); ++i)
            if (stages[i].coverage.test(p)) e.push_back(i);
        group_edges.push_back(std::move(e));
    });
    const NodeSet picked_stages = ht(make_hypergraph(stage_ids, std::move(group_edges)));
    NodeSet cover;
    for (auto i : picked_stages)
        cover.insert(cover.end(), stages[i].picked.begin(), stages[i].picked.end());
    std::sort(cover.begin(), cover.end());
    cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
    return SepWitness{u, std::move(cover)};
}

std::optional<MnsResult> mns(const PathMatrix& P, NodeId u, BudgetCounter& budget) {
    if (u >= P.node_count()) throw BntError(ErrorKind::invalid_argument, "node index out of range", {{"node", u}});
    if (P.column(u).none()) return MnsResult{0, {}};
    auto sys = sep_cover_system(P, u);
    if (!sys) return std::nullopt; // private path: separable at every k
    NodeSet cover = exact_mhs(*sys, budget);
    MnsResult r;
    r.k = static_cast<unsigned>(cover.size());
    r.cover = std::move(cover);
    return r;
}

std::pair<PathMatrix, NodeId> mhs_to_mns_instance(const Hypergraph& H) {
    if (H.edges.empty())
        throw BntError(ErrorKind::empty_matrix,
                       "hitting-set instance with no edges maps to a matrix with no paths");
    check_no_empty_edge(H);
    const auto q = static_cast<NodeId>(H.vertices.size());
    std::unordered_map<NodeId, std::uint32_t> pos;
    for (std::uint32_t i = 0; i < H.vertices.size(); ++i) pos.emplace(H.vertices[i], i);
    std::vector<Bits> rows;
    rows.reserve(H.edges.size());
    for (const auto& e : H.edges) {
        Bits row(q + 1);
        for (auto v : e) row.set(pos.at(v));
        row.set(q); // the fresh node lies on every path
        rows.push_back(std::move(row));
    }
    ValidationOptions relaxed;
    relaxed.allow_zero_columns = true;      // isolated vertices
    relaxed.allow_duplicate_columns = true; // vertices with equal edge incidence
    return {PathMatrix::from_rows(std::move(rows), q + 1, relaxed), q};
}

} // namespace bnt::transversal
