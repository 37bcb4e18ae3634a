#include "bnt/random_model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "bnt/enumerate.hpp"
#include "bnt/oracle.hpp"
#include "bnt/random_util.hpp"

namespace bnt::random_model {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// log of (1 - lambda_u * prod(1 - lambda_w))^m via log1p.
double log_prob_bad(double lambda_u, const NodeSet& W, std::uint32_t m,
                    const LambdaVector& lambdas) {
    double log_miss = 0.0; // log prod (1 - lambda_w)
    for (auto w : W) log_miss += std::log1p(-lambdas[w]);
    const double s = lambda_u * std::exp(log_miss); // P[path hits u, misses W]
    return static_cast<double>(m) * std::log1p(-s);
}

template <typename Fn>
void parallel_indices(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned use = std::min<unsigned>(threads, static_cast<unsigned>(count));
    for (unsigned t = 0; t < use; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

} // namespace

void check_lambdas(const LambdaVector& lambdas, std::size_t n) {
    if (lambdas.size() != n)
        throw BntError(ErrorKind::invalid_argument,
                       "expected " + std::to_string(n) + " rates, got " +
                           std::to_string(lambdas.size()));
    for (double l : lambdas)
        if (!(l >= 0.0 && l <= 1.0))
            throw BntError(ErrorKind::invalid_argument, "rates must lie in [0, 1]");
}

std::vector<Bits> sample_columns(std::uint32_t n, std::uint32_t m, const LambdaVector& lambdas,
                                 std::mt19937_64& rng) {
    check_lambdas(lambdas, n);
    std::vector<Bits> cols;
    cols.reserve(n);
    for (std::uint32_t u = 0; u < n; ++u) {
        Bits c(m);
        for (std::uint32_t p = 0; p < m; ++p)
            if (uniform01(rng) < lambdas[u]) c.set(p);
        cols.push_back(std::move(c));
    }
    return cols;
}

SampleResult sample(std::uint32_t n, std::uint32_t m, const LambdaVector& lambdas,
                    std::uint64_t seed, std::uint32_t redraw_cap) {
    check_lambdas(lambdas, n);
    if (n == 0 || m == 0)
        throw BntError(ErrorKind::empty_matrix, "matrix must have at least one path and one node");
    std::mt19937_64 rng(seed);
    std::vector<Bits> cols;
    cols.reserve(n);
    std::unordered_set<Bits, BitsHash> taken;
    std::uint32_t redraws = 0;
    auto draw = [&] {
        Bits c(m);
        for (std::uint32_t p = 0; p < m; ++p)
            if (uniform01(rng) < lambdas[cols.size()]) c.set(p);
        return c;
    };
    while (cols.size() < n) {
        Bits c = draw();
        while (c.none() || taken.count(c)) {
            if (++redraws > redraw_cap)
                throw BntError(ErrorKind::retry_cap_exceeded,
                               "column redraw cap exceeded while sampling a valid matrix",
                               {{"redraws", static_cast<std::int64_t>(redraws)},
                                {"cap", static_cast<std::int64_t>(redraw_cap)}});
            c = draw();
        }
        taken.insert(c);
        cols.push_back(std::move(c));
    }
    ValidationOptions opts;
    opts.allow_empty_paths = true; // a path probing no node is fine in a synthetic draw
    return SampleResult{PathMatrix::from_columns(std::move(cols), m, opts), redraws};
}

double prob_bad(NodeId u, const NodeSet& W, std::uint32_t m, const LambdaVector& lambdas) {
    if (u >= lambdas.size())
        throw BntError(ErrorKind::invalid_argument, "node index out of range");
    for (std::size_t i = 0; i < W.size(); ++i) {
        if (W[i] >= lambdas.size())
            throw BntError(ErrorKind::invalid_argument, "candidate node out of range");
        if (i > 0 && W[i - 1] >= W[i])
            throw BntError(ErrorKind::invalid_argument, "candidate set must be sorted, duplicate-free");
        if (W[i] == u)
            throw BntError(ErrorKind::node_in_w, "candidate set must not contain the node itself",
                           {{"node", static_cast<std::int64_t>(u)}});
    }
    check_lambdas(lambdas, lambdas.size());
    if (m == 0) throw BntError(ErrorKind::invalid_argument, "m must be at least 1");
    return std::exp(log_prob_bad(lambdas[u], W, m, lambdas));
}

double prob_sep(NodeId u, unsigned k, std::uint32_t n, std::uint32_t m,
                const LambdaVector& lambdas, BudgetCounter& budget) {
    check_lambdas(lambdas, n);
    if (u >= n) throw BntError(ErrorKind::invalid_argument, "node index out of range");
    if (m == 0) throw BntError(ErrorKind::invalid_argument, "m must be at least 1");
    if (k == 0) throw BntError(ErrorKind::invalid_argument, "k must be at least 1");
    if (k > n - 1)
        throw BntError(ErrorKind::k_too_large,
                       "k = " + std::to_string(k) + " exceeds candidate pool size " +
                           std::to_string(n - 1),
                       {{"k", static_cast<std::int64_t>(k)},
                        {"nodes", static_cast<std::int64_t>(n)}});
    NodeSet pool;
    for (NodeId v = 0; v < n; ++v)
        if (v != u) pool.push_back(v);
    double log_p = 0.0;
    for_each_combination_up_to(static_cast<std::uint32_t>(pool.size()), 1, k,
                               [&](const std::vector<std::uint32_t>& idxs) {
                                   budget.charge();
                                   NodeSet W;
                                   W.reserve(idxs.size());
                                   for (auto i : idxs) W.push_back(pool[i]);
                                   const double lb = log_prob_bad(lambdas[u], W, m, lambdas);
                                   log_p += std::log1p(-std::exp(lb));
                                   return false;
                               });
    return clamp01(std::exp(log_p));
}

LambdaVector mle(const PathMatrix& P) {
    LambdaVector out;
    out.reserve(P.node_count());
    for (NodeId u = 0; u < P.node_count(); ++u)
        out.push_back(static_cast<double>(P.column(u).count()) /
                      static_cast<double>(P.path_count()));
    return out;
}

EstimateReport chi(const PathMatrix& P, unsigned k, BudgetCounter& budget, unsigned threads) {
    const auto n = static_cast<std::uint32_t>(P.node_count());
    const auto m = static_cast<std::uint32_t>(P.path_count());
    if (n < 2 || k == 0 || k > n - 1)
        throw BntError(ErrorKind::k_too_large, "need 1 <= k <= n-1 for a nonempty candidate pool",
                       {{"k", static_cast<std::int64_t>(k)},
                        {"nodes", static_cast<std::int64_t>(n)}});
    const LambdaVector lambdas = mle(P);
    EstimateReport r;
    r.k = k;
    r.mode = "exact";
    r.per_node.assign(n, 0.0);
    parallel_indices(n, threads, [&](std::size_t u) {
        r.per_node[u] = prob_sep(static_cast<NodeId>(u), k, n, m, lambdas, budget);
    });
    for (double v : r.per_node) r.total += v;
    return r;
}

EstimateReport chi2(const PathMatrix& P, unsigned k) {
    const auto n = static_cast<std::uint32_t>(P.node_count());
    const auto m = static_cast<std::uint32_t>(P.path_count());
    if (n < 2 || k == 0 || k > n - 1)
        throw BntError(ErrorKind::k_too_large, "need 1 <= k <= n-1 for a nonempty candidate pool",
                       {{"k", static_cast<std::int64_t>(k)},
                        {"nodes", static_cast<std::int64_t>(n)}});
    const LambdaVector lambdas = mle(P);
    const double lmax = *std::max_element(lambdas.begin(), lambdas.end());
    EstimateReport r;
    r.k = k;
    r.mode = "chi2";
    r.per_node.reserve(n);
    for (NodeId u = 0; u < n; ++u) {
        // log nu2(u) = sum_j C(n-1, j) * log(1 - (1 - lambda_u (1-lmax)^j)^m)
        double log_nu = 0.0;
        for (unsigned j = 1; j <= k; ++j) {
            const double miss = std::exp(static_cast<double>(j) * std::log1p(-lmax));
            const double log_bad = static_cast<double>(m) * std::log1p(-lambdas[u] * miss);
            const double log_factor = std::log1p(-std::exp(log_bad));
            // C(n-1, j) through lgamma: exact enough and overflow-proof
            const double log_binom = std::lgamma(static_cast<double>(n)) -
                                     std::lgamma(static_cast<double>(j) + 1.0) -
                                     std::lgamma(static_cast<double>(n - j));
            log_nu += std::exp(log_binom) * log_factor;
        }
        r.per_node.push_back(clamp01(std::exp(log_nu)));
    }
    for (double v : r.per_node) r.total += v;
    return r;
}

MonteCarloReport montecarlo_sep(std::uint32_t n, std::uint32_t m, const LambdaVector& lambdas,
                                unsigned k, std::uint64_t trials, std::uint64_t seed,
                                BudgetCounter& budget, unsigned threads) {
    check_lambdas(lambdas, n);
    if (trials == 0) throw BntError(ErrorKind::invalid_argument, "trials must be at least 1");
    if (k == 0 || k > n)
        throw BntError(ErrorKind::k_too_large, "need 1 <= k <= n",
                       {{"k", static_cast<std::int64_t>(k)},
                        {"nodes", static_cast<std::int64_t>(n)}});
    ValidationOptions relaxed;
    relaxed.allow_zero_columns = true;
    relaxed.allow_duplicate_columns = true;
    relaxed.allow_empty_paths = true;
    std::vector<std::atomic<std::uint64_t>> hits(n);
    for (auto& h : hits) h.store(0);
    parallel_indices(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        std::mt19937_64 rng(derive_seed(seed, t));
        PathMatrix P = PathMatrix::from_columns(sample_columns(n, m, lambdas, rng), m, relaxed);
        for (NodeId u = 0; u < n; ++u)
            if (oracle::is_node_separable(P, u, k, budget)) hits[u].fetch_add(1);
    });
    MonteCarloReport r;
    r.k = k;
    r.trials = trials;
    r.freq.reserve(n);
    r.std_err.reserve(n);
    for (NodeId u = 0; u < n; ++u) {
        const double f = static_cast<double>(hits[u].load()) / static_cast<double>(trials);
        r.freq.push_back(f);
        r.std_err.push_back(std::sqrt(f * (1.0 - f) / static_cast<double>(trials)));
    }
    return r;
}

} // namespace bnt::random_model
