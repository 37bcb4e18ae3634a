#include "bnt/counting_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>
#include <vector>

#include "bnt/enumerate.hpp"

namespace bnt::counting {

namespace {

void check_nm(std::uint64_t n, std::uint64_t m) {
    if (n == 0 || m == 0)
        throw BntError(ErrorKind::invalid_argument, "n and m must be at least 1");
}

// log(sum exp(xs)) evaluated stably.
double log_sum_exp(const std::vector<double>& xs) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double x : xs) mx = std::max(mx, x);
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - mx);
    return mx + std::log(s);
}

// base^e by squaring. Exact while every intermediate stays below 2^64
// (64-bit long double mantissa), which keeps small integer boundary cases
// sharp; beyond that it rounds like any float power.
long double ipow(long double base, std::uint64_t e) {
    long double r = 1.0L;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

} // namespace

bool mu_lt_1(std::uint64_t n, std::uint64_t m) {
    check_nm(n, m);
    // m < log2(n+1)  <=>  2^m <= n   (exact in integers)
    if (m >= 64) return false; // 2^64 > any representable n
    return (std::uint64_t{1} << m) <= n;
}

std::uint64_t id1_upper(std::uint64_t n, std::uint64_t m) {
    check_nm(n, m);
    if (m >= 64) return n;
    return std::min<std::uint64_t>(n, (std::uint64_t{1} << m) - 1);
}

bool mu_lt_k(std::uint64_t n, std::uint64_t m, unsigned k, const BoundParams& params) {
    check_nm(n, m);
    if (k < 2)
        throw BntError(ErrorKind::invalid_argument, "k must be at least 2");
    if (m < params.m0)
        throw BntError(ErrorKind::m_below_threshold,
                       "m = " + std::to_string(m) + " is below the minimum m0 = " +
                           std::to_string(params.m0),
                       {{"m", static_cast<std::int64_t>(m)},
                        {"m0", static_cast<std::int64_t>(params.m0)}});
    if (!(params.C > 0.0))
        throw BntError(ErrorKind::invalid_argument, "C must be positive");
    // sum_{r=1..m} C * m^ceil(r/(k-1)), in extended precision first
    const long double md = static_cast<long double>(m);
    long double sum = 0.0L;
    for (std::uint64_t r = 1; r <= m; ++r) {
        const std::uint64_t e = (r + (k - 2)) / (k - 1); // ceil(r/(k-1))
        sum += static_cast<long double>(params.C) * ipow(md, e);
        if (!std::isfinite(sum)) break;
    }
    if (std::isfinite(sum))
        return static_cast<long double>(n) > sum;
    // log-domain fallback for astronomically large sums
    std::vector<double> logs;
    logs.reserve(m);
    const double logm = std::log(static_cast<double>(m));
    const double logc = std::log(params.C);
    for (std::uint64_t r = 1; r <= m; ++r) {
        const std::uint64_t e = (r + (k - 2)) / (k - 1);
        logs.push_back(logc + static_cast<double>(e) * logm);
    }
    return std::log(static_cast<double>(n)) > log_sum_exp(logs);
}

double m_threshold(std::uint64_t n, unsigned k, const BoundParams& params) {
    if (n == 0) throw BntError(ErrorKind::invalid_argument, "n must be at least 1");
    if (k < 2) throw BntError(ErrorKind::invalid_argument, "k must be at least 2");
    if (!(params.C > 0.0))
        throw BntError(ErrorKind::invalid_argument, "C must be positive");
    const double d = std::log2(params.C);
    const double gap = std::log2(static_cast<double>(n)) - d;
    if (!(gap > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double base = (static_cast<double>(k - 1) / k) * gap;
    return std::pow(base, 1.0 / (1.0 + params.epsilon)) - static_cast<double>(k - 1);
}

IdkBound idk_upper(std::uint64_t n, std::uint64_t m, unsigned k) {
    check_nm(n, m);
    if (k < 2)
        throw BntError(ErrorKind::invalid_argument, "k must be at least 2");
    IdkBound b;
    const auto sq = [](unsigned __int128 x) { return x * x; };
    const unsigned __int128 num =
        static_cast<unsigned __int128>(k) * sq(static_cast<unsigned __int128>(m) + 2 * k - 2);
    const unsigned __int128 alt_num =
        static_cast<unsigned __int128>(k) * sq(static_cast<unsigned __int128>(m) + k - 1);
    const std::uint64_t sat = std::numeric_limits<std::uint64_t>::max();
    b.exponent_num = num > sat ? sat : static_cast<std::uint64_t>(num);
    b.exponent_den = k - 1;
    b.alt_exponent_num = alt_num > sat ? sat : static_cast<std::uint64_t>(alt_num);
    b.alt_exponent_den = k - 1;
    // Compare n <= 2^(num/den) in extended precision; exact short-circuit
    // when the exponent already clears 64 bits.
    const long double exponent =
        static_cast<long double>(b.exponent_num) / static_cast<long double>(b.exponent_den);
    if (exponent >= 64.0L) {
        b.bound_is_n = true;
        b.value = n;
        return b;
    }
    const long double log2n = std::log2(static_cast<long double>(n));
    b.bound_is_n = log2n <= exponent;
    if (b.bound_is_n) {
        b.value = n;
    } else {
        const long double p = std::floor(std::exp2(exponent));
        b.value = static_cast<std::uint64_t>(p);
    }
    return b;
}

transversal::Hypergraph path_family(const PathMatrix& P) {
    NodeSet vertices;
    for (PathId p = 0; p < P.path_count(); ++p) vertices.push_back(p);
    std::vector<NodeSet> edges;
    edges.reserve(P.node_count());
    for (NodeId u = 0; u < P.node_count(); ++u) {
        edges.push_back(P.column(u).to_indices());
    }
    // The family's members must be pairwise distinct and partition counts
    // by size must add back to n; both fail only on duplicate columns.
    {
        std::map<std::size_t, std::uint64_t> by_size;
        std::unordered_map<Bits, NodeId, BitsHash> seen;
        for (NodeId u = 0; u < P.node_count(); ++u) {
            auto [it, fresh] = seen.emplace(P.column(u), u);
            if (!fresh)
                throw BntError(ErrorKind::duplicate_column,
                               "path family requires pairwise distinct columns",
                               {{"node_a", static_cast<std::int64_t>(it->second)},
                                {"node_b", static_cast<std::int64_t>(u)}});
            ++by_size[edges[u].size()];
        }
        std::uint64_t total = 0;
        for (auto& [sz, c] : by_size) total += c;
        if (total != P.node_count())
            throw std::logic_error("path_family: size histogram does not add up");
    }
    return transversal::make_hypergraph(std::move(vertices), std::move(edges));
}

bool is_k_union_free(const transversal::Hypergraph& H, unsigned k, BudgetCounter& budget) {
    if (k == 0) throw BntError(ErrorKind::invalid_argument, "k must be at least 1");
    // Collapse duplicate edges: a family is a set of sets.
    std::vector<Bits> family;
    {
        std::unordered_map<Bits, bool, BitsHash> seen;
        const std::size_t width = H.vertices.empty() ? 0 : H.vertices.back() + 1;
        for (const auto& e : H.edges) {
            Bits mask(width);
            for (auto v : e) mask.set(v);
            if (seen.emplace(mask, true).second) family.push_back(std::move(mask));
        }
    }
    if (family.empty()) return true;
    const std::size_t width = family.front().size();
    // Walk every subfamily of size 1..k; two distinct subfamilies sharing a
    // union witness failure.
    std::unordered_map<Bits, std::vector<std::uint32_t>, BitsHash> first_owner;
    bool violated = false;
    for_each_combination_up_to(
        static_cast<std::uint32_t>(family.size()), 1, std::min<std::uint32_t>(k, family.size()),
        [&](const std::vector<std::uint32_t>& idxs) {
            budget.charge();
            Bits un(width);
            for (auto i : idxs) un |= family[i];
            auto [it, fresh] = first_owner.emplace(std::move(un), idxs);
            if (!fresh && it->second != idxs) {
                violated = true;
                return true;
            }
            return false;
        });
    return !violated;
}

} // namespace bnt::counting
