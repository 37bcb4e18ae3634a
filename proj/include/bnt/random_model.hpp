#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bnt/budget.hpp"
#include "bnt/pathmatrix.hpp"

namespace bnt::random_model {

// Independent-column Bernoulli model: column i holds m i.i.d. Bernoulli
// draws with success rate lambda[i]. All randomness flows through
// mt19937_64 seeded explicitly, with per-trial seeds derived from
// (seed, trial index); repeated runs with one seed are byte-identical.

using LambdaVector = std::vector<double>;

// Throws unless every rate lies in [0, 1] and the length matches n.
void check_lambdas(const LambdaVector& lambdas, std::size_t n);

// One raw draw of n columns of height m. No validity conditioning: zero
// and duplicate columns are returned as drawn.
std::vector<Bits> sample_columns(std::uint32_t n, std::uint32_t m, const LambdaVector& lambdas,
                                 std::mt19937_64& rng);

struct SampleResult {
    PathMatrix matrix;
    std::uint32_t redraws = 0; // offending-column redraws performed
};

// Draws a valid matrix: columns violating the invariants (zero column, or
// duplicate of an already-accepted column) are redrawn individually, up to
// `redraw_cap` redraws total. All-zero rows are permitted (synthetic
// matrices need not probe every path). Deterministic given the seed.
SampleResult sample(std::uint32_t n, std::uint32_t m, const LambdaVector& lambdas,
                    std::uint64_t seed, std::uint32_t redraw_cap = 10'000);

// Probability that a candidate pair fails: no path hits u and misses all
// of W, i.e. (1 - lambda_u * prod_{w in W}(1 - lambda_w))^m, evaluated in
// the log domain. W must not contain u; W = {} is allowed and yields
// (1 - lambda_u)^m.
double prob_bad(NodeId u, const NodeSet& W, std::uint32_t m, const LambdaVector& lambdas);

// Product-form probability that u is k-separable: over every candidate set
// W of size 1..k drawn from the other nodes, multiply (1 - prob_bad).
// The per-set events are treated as independent (they are in fact
// positively correlated, making this a lower bound on the true
// probability; the gap vanishes as the per-set factors approach 1).
// Accumulated as a sum of log1p terms; result clamped to [0, 1].
double prob_sep(NodeId u, unsigned k, std::uint32_t n, std::uint32_t m,
                const LambdaVector& lambdas, BudgetCounter& budget);

// Maximum-likelihood rate per node: the fraction of paths it lies on.
LambdaVector mle(const PathMatrix& P);

struct EstimateReport {
    unsigned k = 0;
    std::string mode;              // "exact" or "chi2"
    std::vector<double> per_node;  // nu(u), clamped to [0, 1]
    double total = 0.0;            // sum over nodes, in [0, n]
};

// Expected number of k-separable nodes, fitting rates by mle and summing
// prob_sep per node.
EstimateReport chi(const PathMatrix& P, unsigned k, BudgetCounter& budget,
                   unsigned threads = 1);

// Closed-form lower variant: replaces every candidate's rate by the
// maximal rate, collapsing the product over sets of size j into a single
// factor raised to C(n-1, j) (binomials via lgamma in the log domain).
// Never exceeds chi termwise.
EstimateReport chi2(const PathMatrix& P, unsigned k);

struct MonteCarloReport {
    unsigned k = 0;
    std::uint64_t trials = 0;
    std::vector<double> freq;     // per node: fraction of trials it was k-separable
    std::vector<double> std_err;  // binomial standard error per node
};

// Samples unconditioned matrices (zero/duplicate columns kept, since the
// closed forms are derived without validity conditioning) and counts, per
// node, how often the separability oracle accepts it at level k.
MonteCarloReport montecarlo_sep(std::uint32_t n, std::uint32_t m, const LambdaVector& lambdas,
                                unsigned k, std::uint64_t trials, std::uint64_t seed,
                                BudgetCounter& budget, unsigned threads = 1);

} // namespace bnt::random_model
