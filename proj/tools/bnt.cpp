#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bnt/budget.hpp"
#include "bnt/counting_bounds.hpp"
#include "bnt/dis_bounds.hpp"
#include "bnt/error.hpp"
#include "bnt/graphio.hpp"
#include "bnt/json_io.hpp"
#include "bnt/oracle.hpp"
#include "bnt/pathmatrix.hpp"
#include "bnt/random_model.hpp"
#include "bnt/transversal.hpp"

namespace {

using bnt::BntError;
using bnt::BudgetCounter;
using bnt::ErrorKind;
using bnt::Measurement;
using bnt::NodeId;
using bnt::NodeSet;
using bnt::PathMatrix;
using bnt::jsonio::Json;

// Flags shared by every subcommand. One-based mode shifts ids in command-line
// arguments, graph files, and table output; JSON ids stay 0-based always.
struct GlobalOpts {
    std::string format = "json";
    std::string output; // empty = stdout
    bool one_based = false;
    unsigned threads = 1;
    std::uint64_t budget = bnt::kDefaultBudget;
};

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void emit(const GlobalOpts& g, const Json& j, const std::string& table) {
    const std::string text = g.format == "table" ? table : bnt::jsonio::dump(j);
    if (g.output.empty())
        std::cout << text;
    else
        bnt::jsonio::write_text_file(g.output, text);
}

PathMatrix load_matrix(const std::string& path) {
    return bnt::read_matrix(bnt::jsonio::read_text_file(path));
}

bnt::graphio::Graph load_graph(const std::string& path, bool one_based) {
    return bnt::graphio::read_graph(bnt::jsonio::read_text_file(path), one_based);
}

// --measurement takes the outcome bits inline (e.g. 1,0,1,1) or a file path.
Measurement load_measurement(const std::string& arg) {
    const bool inline_bits =
        !arg.empty() && arg.find_first_not_of("01, \t") == std::string::npos;
    return bnt::read_measurement(inline_bits ? arg : bnt::jsonio::read_text_file(arg));
}

// Comma-separated ids from the command line, honoring --one-based. Order is
// preserved (--order is a permutation); callers needing a set sort afterwards.
NodeSet parse_ids(const std::string& text, const GlobalOpts& g, const std::string& flag) {
    NodeSet out;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
        while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.erase(0, 1);
        while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.pop_back();
        if (tok.empty() || tok.size() > 10 ||
            tok.find_first_not_of("0123456789") != std::string::npos)
            throw CLI::ValidationError(flag + ": expected comma-separated node ids");
        std::uint64_t v = std::stoull(tok);
        if (g.one_based) {
            if (v == 0) throw CLI::ValidationError(flag + ": ids start at 1 in one-based mode");
            --v;
        }
        if (v > 0xffffffffULL) throw CLI::ValidationError(flag + ": id out of range");
        out.push_back(static_cast<NodeId>(v));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

NodeId parse_id(const std::string& text, const GlobalOpts& g, const std::string& flag) {
    NodeSet ids = parse_ids(text, g, flag);
    if (ids.size() != 1) throw CLI::ValidationError(flag + ": expected exactly one id");
    return ids[0];
}

// --lambda is either a single rate applied to every node or a file holding
// one rate per node (whitespace or comma separated).
std::vector<double> load_lambdas(const std::string& arg, std::uint32_t n) {
    char* end = nullptr;
    const double v = std::strtod(arg.c_str(), &end);
    if (end != arg.c_str() && end != nullptr && *end == '\0')
        return std::vector<double>(n, v);
    std::string text = bnt::jsonio::read_text_file(arg);
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream in(text);
    std::vector<double> out;
    double rate = 0.0;
    while (in >> rate) out.push_back(rate);
    if (!in.eof())
        throw BntError(ErrorKind::parse_error, "failure-rate file holds a non-numeric token",
                       {{"parsed", static_cast<std::int64_t>(out.size())}});
    return out;
}

unsigned display_base(const GlobalOpts& g) { return g.one_based ? 1 : 0; }

std::string show_set(const NodeSet& s, const GlobalOpts& g) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i] + display_base(g));
    }
    return out + "}";
}

// Space-separated id list for tables; "-" for the empty set.
std::string show_list(const NodeSet& s, const GlobalOpts& g) {
    if (s.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(s[i] + display_base(g));
    }
    return out;
}

Json ids_json(const NodeSet& s) {
    Json a = Json::array();
    for (NodeId u : s) a.push_back(u);
    return a;
}

Json doubles_json(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(bnt::jsonio::number(x));
    return a;
}

// Rows as the same comma-separated text a matrix file would hold, so JSON
// consumers can reassemble a loadable file by joining with newlines.
Json matrix_rows_json(const PathMatrix& P) {
    Json rows = Json::array();
    for (std::uint32_t p = 0; p < P.path_count(); ++p) {
        std::string line;
        for (std::uint32_t u = 0; u < P.node_count(); ++u) {
            if (u) line += ',';
            line += P.bit(p, u) ? '1' : '0';
        }
        rows.push_back(line);
    }
    return rows;
}

const CLI::Validator strategy_check(
    [](std::string& s) -> std::string {
        if (s == "neighbours" || s == "shortest") return {};
        if (s.rfind("dist:", 0) == 0) {
            const std::string d = s.substr(5);
            if (d.empty() || d.size() > 9 ||
                d.find_first_not_of("0123456789") != std::string::npos || std::stoull(d) == 0)
                return "hop distance must be a positive integer: " + s;
            return {};
        }
        return "expected neighbours, dist:D or shortest, got " + s;
    },
    "STRATEGY");

} // namespace

int main(int argc, char** argv) {
    GlobalOpts g;
    if (const char* env = std::getenv("BNT_BUDGET")) {
        char* end = nullptr;
        const std::uint64_t v = std::strtoull(env, &end, 10);
        if (*env == '\0' || (end != nullptr && *end != '\0') || v == 0) {
            std::cerr << bnt::jsonio::dump(bnt::jsonio::error_json(
                BntError(ErrorKind::invalid_argument, "BNT_BUDGET must be a positive integer")));
            return 1;
        }
        g.budget = v;
    }

    CLI::App app{"boolean network tomography: node identifiability analysis, failure "
                 "localization, counting bounds, and random-model estimation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "bnt 1.0.0");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
    app.add_option("--output", g.output, "write the result to a file instead of stdout");
    app.add_flag("--one-based", g.one_based,
                 "read and print 1-based ids in text arguments, graph files and tables "
                 "(JSON output stays 0-based)");
    app.add_option("--threads", g.threads, "worker threads for per-node scans")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--budget", g.budget, "candidate-set budget for exhaustive scans")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // ---- analyze ----------------------------------------------------------
    struct {
        std::string matrix;
        unsigned k = 1;
    } an;
    auto* analyze = app.add_subcommand(
        "analyze", "classify every node at level k and report the mu/sigma/delta thresholds");
    analyze->fallthrough();
    analyze->add_option("--matrix", an.matrix, "path matrix file")->required();
    analyze->add_option("--k", an.k, "failure-set size bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    analyze->callback([&] {
        const PathMatrix P = load_matrix(an.matrix);
        BudgetCounter class_budget(g.budget);
        const auto rep = bnt::oracle::report(P, an.k, class_budget, g.threads);
        // Candidate sets never exceed n-1 nodes, so scanning past that level
        // cannot change any class; n-1 is the exhaustive threshold scan.
        const unsigned k_max = P.node_count() > 1 ? P.node_count() - 1 : 1;
        BudgetCounter threshold_budget(g.budget);
        const auto th = bnt::oracle::mu_sigma_delta(P, k_max, threshold_budget, g.threads);
        const bool capped = th.mu_capped || th.sigma_capped || th.delta_capped;
        const Json j{{"k", rep.k},     {"sep", ids_json(rep.sep)}, {"id", ids_json(rep.id)},
                     {"dis", ids_json(rep.dis)}, {"mu", th.mu},    {"sigma", th.sigma},
                     {"delta", th.delta},        {"capped", capped}};
        std::string t;
        t += "k: " + std::to_string(rep.k) + "\n";
        t += "mu: " + std::to_string(th.mu) + "\n";
        t += "sigma: " + std::to_string(th.sigma) + "\n";
        t += "delta: " + std::to_string(th.delta) + "\n";
        t += std::string("capped: ") + (capped ? "yes" : "no") + "\n";
        t += "sep (" + std::to_string(rep.sep.size()) + "): " + show_list(rep.sep, g) + "\n";
        t += "id (" + std::to_string(rep.id.size()) + "): " + show_list(rep.id, g) + "\n";
        t += "dis (" + std::to_string(rep.dis.size()) + "): " + show_list(rep.dis, g) + "\n";
        emit(g, j, t);
    });

    // ---- localize ---------------------------------------------------------
    struct {
        std::string matrix, measurement;
        unsigned k = 1;
    } lo;
    auto* localize = app.add_subcommand(
        "localize", "list every node set of size <= k that explains the measurement exactly");
    localize->fallthrough();
    localize->add_option("--matrix", lo.matrix, "path matrix file")->required();
    localize
        ->add_option("--measurement", lo.measurement,
                     "per-path outcomes, inline like 1,0,1,1 or a file (1 = failing)")
        ->required();
    localize->add_option("--k", lo.k, "failure-set size bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    localize->callback([&] {
        const PathMatrix P = load_matrix(lo.matrix);
        const Measurement M = load_measurement(lo.measurement);
        BudgetCounter budget(g.budget);
        const auto sets = bnt::oracle::localize(P, M, lo.k, budget);
        Json j = Json::array();
        for (const auto& s : sets) j.push_back(ids_json(s));
        std::string t;
        if (sets.empty())
            t = "no consistent failure set of size <= " + std::to_string(lo.k) + "\n";
        else
            for (const auto& s : sets) t += show_set(s, g) + "\n";
        emit(g, j, t);
    });

    // ---- sep --------------------------------------------------------------
    struct {
        std::string matrix, node, algo = "simple", order, direction = "largest-first";
    } se;
    auto* sep = app.add_subcommand(
        "sep", "find a blocking set for one node: a cover whose size bounds non-separability");
    sep->fallthrough();
    sep->add_option("--matrix", se.matrix, "path matrix file")->required();
    sep->add_option("--node", se.node, "node to probe")->required();
    sep->add_option("--algo", se.algo, "cover search: simple (greedy scan), decr "
                                       "(degree-greedy), exact (minimum cover)")
        ->check(CLI::IsMember({"simple", "decr", "exact"}))
        ->capture_default_str();
    sep->add_option("--order", se.order,
                    "scan order for --algo simple: comma-separated permutation of the "
                    "cover-system nodes");
    sep->add_option("--direction", se.direction, "tie between greedy directions for --algo decr")
        ->check(CLI::IsMember({"largest-first", "smallest-first"}))
        ->capture_default_str();
    sep->callback([&] {
        if (!se.order.empty() && se.algo != "simple")
            throw CLI::ValidationError("--order only applies to --algo simple");
        if (sep->count("--direction") != 0 && se.algo != "decr")
            throw CLI::ValidationError("--direction only applies to --algo decr");
        const PathMatrix P = load_matrix(se.matrix);
        const NodeId u = parse_id(se.node, g, "--node");
        std::optional<NodeSet> cover;
        if (se.algo == "simple") {
            std::optional<NodeSet> order;
            if (!se.order.empty()) order = parse_ids(se.order, g, "--order");
            if (const auto w = bnt::transversal::simple_sep(P, u, order ? &*order : nullptr))
                cover = w->cover;
        } else if (se.algo == "decr") {
            const auto dir = se.direction == "largest-first"
                                 ? bnt::transversal::DecrDirection::largest_first
                                 : bnt::transversal::DecrDirection::smallest_first;
            if (const auto w = bnt::transversal::decr_sep(P, u, dir)) cover = w->cover;
        } else {
            BudgetCounter budget(g.budget);
            if (const auto r = bnt::transversal::mns(P, u, budget)) cover = r->cover;
        }
        const Json j{{"node", u},
                     {"cover", cover ? ids_json(*cover) : Json(nullptr)},
                     {"k_not_sep", cover ? Json(cover->size()) : Json(nullptr)}};
        std::string t;
        t += "node: " + std::to_string(u + display_base(g)) + "\n";
        t += "algo: " + se.algo + "\n";
        if (cover) {
            t += "cover: " + show_set(*cover, g) + "\n";
            t += "k_not_sep: " + std::to_string(cover->size()) + "\n";
        } else {
            t += "cover: none (the node rides a private path)\n";
            t += "k_not_sep: -\n";
        }
        emit(g, j, t);
    });

    // ---- bound ------------------------------------------------------------
    struct {
        std::uint64_t n = 0, m = 0;
        unsigned k = 1;
        double C = 1.0, eps = 0.01;
        std::uint32_t m0 = 1;
    } bo;
    auto* bound = app.add_subcommand(
        "bound", "shape-only counting bounds: no matrix needed, just n, m and k");
    bound->fallthrough();
    bound->add_option("--n", bo.n, "node count")->required()->check(CLI::PositiveNumber);
    bound->add_option("--m", bo.m, "path count")->required()->check(CLI::PositiveNumber);
    bound->add_option("--k", bo.k, "failure-set size bound")
        ->required()
        ->check(CLI::PositiveNumber);
    bound->add_option("--C", bo.C, "family-size constant in the k >= 2 tests")
        ->capture_default_str();
    bound->add_option("--eps", bo.eps, "exponent slack in the path-count threshold")
        ->capture_default_str();
    bound->add_option("--m0", bo.m0, "smallest path count the k >= 2 test accepts")
        ->capture_default_str();
    bound->callback([&] {
        using namespace bnt::counting;
        const BoundParams params{bo.C, bo.eps, bo.m0};
        const bool mu1 = mu_lt_1(bo.n, bo.m);
        const std::uint64_t id1 = id1_upper(bo.n, bo.m);
        Json muk{{"applicable", false}, {"heuristic", true}, {"value", nullptr},
                 {"m_threshold", nullptr}};
        if (bo.k >= 2) {
            muk["m_threshold"] = bnt::jsonio::number(m_threshold(bo.n, bo.k, params));
            if (bo.m >= params.m0) {
                muk["applicable"] = true;
                muk["value"] = mu_lt_k(bo.n, bo.m, bo.k, params);
            }
        }
        Json idk{{"applicable", false}, {"heuristic", true}, {"value", nullptr}};
        if (bo.k >= 2) {
            const IdkBound b = idk_upper(bo.n, bo.m, bo.k);
            idk = Json{{"applicable", true},
                       {"heuristic", true},
                       {"value", b.value},
                       {"bound_is_n", b.bound_is_n},
                       {"exponent_num", b.exponent_num},
                       {"exponent_den", b.exponent_den},
                       {"alt_exponent_num", b.alt_exponent_num},
                       {"alt_exponent_den", b.alt_exponent_den}};
        }
        const Json j{
            {"n", bo.n},
            {"m", bo.m},
            {"k", bo.k},
            {"params", Json{{"C", bnt::jsonio::number(bo.C)},
                            {"epsilon", bnt::jsonio::number(bo.eps)},
                            {"m0", bo.m0}}},
            {"mu_lt_1", Json{{"applicable", true}, {"heuristic", false}, {"value", mu1}}},
            {"id1_upper", Json{{"applicable", true},
                               {"heuristic", false},
                               {"value", id1},
                               {"bound_is_n", id1 == bo.n}}},
            {"mu_lt_k", muk},
            {"idk_upper", idk}};
        std::string t;
        t += "n: " + std::to_string(bo.n) + "  m: " + std::to_string(bo.m) +
             "  k: " + std::to_string(bo.k) + "\n";
        t += std::string("mu_lt_1: ") + (mu1 ? "yes" : "no") + "  (rigorous)\n";
        t += "id1_upper: " + std::to_string(id1) +
             (id1 == bo.n ? "  (rigorous, capped at n)\n" : "  (rigorous)\n");
        if (bo.k >= 2) {
            if (bo.m >= params.m0)
                t += std::string("mu_lt_k: ") + (muk["value"].get<bool>() ? "yes" : "no") +
                     "  (heuristic)\n";
            else
                t += "mu_lt_k: not applicable (m below m0)\n";
            t += "m_threshold: " +
                 (muk["m_threshold"].is_null() ? std::string("undefined")
                                               : fmt12(muk["m_threshold"].get<double>())) +
                 "\n";
            t += "idk_upper: " + std::to_string(idk["value"].get<std::uint64_t>()) +
                 "  (heuristic, exponent " + std::to_string(idk["exponent_num"].get<std::uint64_t>()) +
                 "/" + std::to_string(idk["exponent_den"].get<std::uint64_t>()) + ", alt " +
                 std::to_string(idk["alt_exponent_num"].get<std::uint64_t>()) + "/" +
                 std::to_string(idk["alt_exponent_den"].get<std::uint64_t>()) + ")\n";
        } else {
            t += "mu_lt_k: not applicable (k < 2)\n";
            t += "idk_upper: not applicable (k < 2)\n";
        }
        emit(g, j, t);
    });

    // ---- estimate ---------------------------------------------------------
    struct {
        std::string matrix, mode;
        unsigned k = 1;
        std::uint64_t trials = 10000, seed = 0;
    } es;
    auto* estimate = app.add_subcommand(
        "estimate", "expected number of k-separable nodes under rates fitted to the matrix");
    estimate->fallthrough();
    estimate->add_option("--matrix", es.matrix, "path matrix file")->required();
    estimate->add_option("--k", es.k, "failure-set size bound")
        ->required()
        ->check(CLI::PositiveNumber);
    estimate
        ->add_option("--mode", es.mode, "exact (full product), chi2 (max-rate collapse), mc "
                                        "(simulation)")
        ->required()
        ->check(CLI::IsMember({"exact", "chi2", "mc"}));
    estimate->add_option("--trials", es.trials, "simulated matrices for --mode mc")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* estimate_seed =
        estimate->add_option("--seed", es.seed, "rng seed (required for --mode mc)");
    estimate->callback([&] {
        const PathMatrix P = load_matrix(es.matrix);
        const auto lambdas = bnt::random_model::mle(P);
        Json j;
        std::string t;
        if (es.mode == "mc") {
            if (estimate_seed->count() == 0)
                throw CLI::ValidationError("--seed is required for --mode mc; this tool never "
                                           "defaults a seed silently");
            BudgetCounter budget(g.budget);
            const auto mc = bnt::random_model::montecarlo_sep(
                P.node_count(), P.path_count(), lambdas, es.k, es.trials, es.seed, budget,
                g.threads);
            double total = 0.0;
            for (double f : mc.freq) total += f;
            j = Json{{"k", mc.k},
                     {"mode", "mc"},
                     {"trials", mc.trials},
                     {"seed", es.seed},
                     {"lambda", doubles_json(lambdas)},
                     {"per_node", doubles_json(mc.freq)},
                     {"std_err", doubles_json(mc.std_err)},
                     {"total", bnt::jsonio::number(total)}};
            t += "k: " + std::to_string(mc.k) + "\nmode: mc\n";
            t += "trials: " + std::to_string(mc.trials) + "\n";
            t += "total: " + fmt12(total) + "\n";
            t += "node rate chance std_err\n";
            for (std::uint32_t u = 0; u < P.node_count(); ++u)
                t += std::to_string(u + display_base(g)) + " " + fmt12(lambdas[u]) + " " +
                     fmt12(mc.freq[u]) + " " + fmt12(mc.std_err[u]) + "\n";
        } else {
            bnt::random_model::EstimateReport r;
            if (es.mode == "exact") {
                BudgetCounter budget(g.budget);
                r = bnt::random_model::chi(P, es.k, budget, g.threads);
            } else {
                r = bnt::random_model::chi2(P, es.k);
            }
            j = Json{{"k", r.k},
                     {"mode", r.mode},
                     {"lambda", doubles_json(lambdas)},
                     {"per_node", doubles_json(r.per_node)},
                     {"total", bnt::jsonio::number(r.total)}};
            t += "k: " + std::to_string(r.k) + "\nmode: " + r.mode + "\n";
            t += "total: " + fmt12(r.total) + "\n";
            t += "node rate chance\n";
            for (std::uint32_t u = 0; u < P.node_count(); ++u)
                t += std::to_string(u + display_base(g)) + " " + fmt12(lambdas[u]) + " " +
                     fmt12(r.per_node[u]) + "\n";
        }
        emit(g, j, t);
    });

    // ---- sample -----------------------------------------------------------
    struct {
        std::string lambda;
        std::uint32_t n = 0, m = 0, redraw_cap = 10000;
        std::uint64_t seed = 0;
    } sa;
    auto* sample = app.add_subcommand(
        "sample", "draw a valid random matrix with per-node traversal rates");
    sample->fallthrough();
    sample->add_option("--n", sa.n, "node count")->required()->check(CLI::PositiveNumber);
    sample->add_option("--m", sa.m, "path count")->required()->check(CLI::PositiveNumber);
    sample
        ->add_option("--lambda", sa.lambda,
                     "traversal rate in [0,1] applied to every node, or a file with one "
                     "rate per node")
        ->required();
    sample->add_option("--seed", sa.seed, "rng seed")->required();
    sample->add_option("--redraw-cap", sa.redraw_cap, "give up after this many column redraws")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sample->callback([&] {
        const auto lambdas = load_lambdas(sa.lambda, sa.n);
        const auto res = bnt::random_model::sample(sa.n, sa.m, lambdas, sa.seed, sa.redraw_cap);
        const Json j{{"n", sa.n},
                     {"m", sa.m},
                     {"seed", sa.seed},
                     {"redraws", res.redraws},
                     {"lambda", doubles_json(lambdas)},
                     {"matrix", matrix_rows_json(res.matrix)}};
        // Table mode prints the bare matrix text, directly loadable as a file.
        emit(g, j, bnt::write_matrix(res.matrix));
    });

    // ---- paths ------------------------------------------------------------
    struct {
        std::string graph, sources, targets;
        std::uint32_t cutoff = 0;
        std::uint64_t max_paths = 1'000'000;
    } pa;
    auto* paths = app.add_subcommand(
        "paths", "turn a topology and monitor placement into a path matrix");
    paths->fallthrough();
    paths->add_option("--graph", pa.graph, "graph file: vertex count, then one edge per line")
        ->required();
    paths->add_option("--sources", pa.sources, "comma-separated source vertices")->required();
    paths->add_option("--targets", pa.targets, "comma-separated target vertices")->required();
    auto* paths_cutoff =
        paths->add_option("--cutoff", pa.cutoff, "most edges per path (default: vertex count)")
            ->check(CLI::PositiveNumber);
    paths->add_option("--max-paths", pa.max_paths, "abort beyond this many raw paths")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    paths->callback([&] {
        const auto gr = load_graph(pa.graph, g.one_based);
        NodeSet sources = parse_ids(pa.sources, g, "--sources");
        NodeSet targets = parse_ids(pa.targets, g, "--targets");
        std::sort(sources.begin(), sources.end());
        sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        // A simple path has at most |V| - 1 edges, so |V| is an exhaustive cutoff.
        const std::uint32_t cutoff = paths_cutoff->count() ? pa.cutoff : gr.vertex_count;
        const auto e =
            bnt::graphio::enumerate_paths(gr, {sources, targets}, cutoff, pa.max_paths);
        const Json j{{"vertex_count", gr.vertex_count},
                     {"sources", ids_json(sources)},
                     {"targets", ids_json(targets)},
                     {"cutoff", cutoff},
                     {"max_paths", pa.max_paths},
                     {"raw_path_count", e.raw_path_count},
                     {"kept_nodes", ids_json(e.kept_nodes)},
                     {"matrix", matrix_rows_json(e.matrix)}};
        // Table mode prints the bare matrix; the column->vertex map rides in JSON.
        emit(g, j, bnt::write_matrix(e.matrix));
    });

    // ---- ubdis ------------------------------------------------------------
    struct {
        std::string matrix, graph, strategy = "neighbours", selector;
        unsigned k = 1;
    } ub;
    auto* ubdis = app.add_subcommand(
        "ubdis", "upper-bound the k-distinguishable count by discarding confusable nodes");
    ubdis->fallthrough();
    ubdis->add_option("--matrix", ub.matrix, "path matrix file")->required();
    ubdis->add_option("--graph", ub.graph, "graph file matching the matrix columns")->required();
    ubdis->add_option("--k", ub.k, "deepest level to scan")
        ->required()
        ->check(CLI::PositiveNumber);
    ubdis->add_option("--strategy", ub.strategy, "partner pool: neighbours, dist:D or shortest")
        ->check(strategy_check)
        ->capture_default_str();
    auto* ubdis_selector =
        ubdis->add_option("--selector", ub.selector,
                          "paths compared per partner pair: full (shared paths) or "
                          "shortest-only")
            ->check(CLI::IsMember({"full", "shortest-only"}));
    ubdis->callback([&] {
        const auto gr = load_graph(ub.graph, g.one_based);
        const PathMatrix P = load_matrix(ub.matrix);
        bnt::dis_bounds::StrategyConfig cfg;
        if (ub.strategy == "neighbours") {
            cfg.pool = bnt::dis_bounds::PoolKind::neighbours;
        } else if (ub.strategy == "shortest") {
            // whole-graph pool probed through shortest paths only
            cfg.pool = bnt::dis_bounds::PoolKind::all_nodes;
            cfg.selector = bnt::dis_bounds::SelectorKind::shortest_only;
        } else {
            cfg.pool = bnt::dis_bounds::PoolKind::distance;
            cfg.d = static_cast<std::uint32_t>(std::stoull(ub.strategy.substr(5)));
        }
        if (ubdis_selector->count() != 0)
            cfg.selector = ub.selector == "shortest-only"
                               ? bnt::dis_bounds::SelectorKind::shortest_only
                               : bnt::dis_bounds::SelectorKind::full_intersection;
        cfg.shortest_path_budget = g.budget;
        const bnt::dis_bounds::Strategy strat(gr, P, cfg);
        const auto ledger = bnt::dis_bounds::lb_dis(P, ub.k, strat);
        const std::string selector_name =
            cfg.selector == bnt::dis_bounds::SelectorKind::shortest_only ? "shortest-only"
                                                                         : "full";
        Json levels = Json::array();
        for (const auto& lv : ledger.per_level)
            levels.push_back(
                Json{{"k", lv.k}, {"tau", lv.tau}, {"removed", ids_json(lv.removed)}});
        const Json j{{"k_max", ub.k},
                     {"strategy", ub.strategy},
                     {"selector", selector_name},
                     {"per_level", levels},
                     {"bound", ledger.bound}};
        std::string t;
        t += "strategy: " + ub.strategy + "  selector: " + selector_name + "\n";
        t += "k tau removed\n";
        for (const auto& lv : ledger.per_level)
            t += std::to_string(lv.k) + " " + std::to_string(lv.tau) + " " +
                 show_list(lv.removed, g) + "\n";
        t += "bound: " + std::to_string(ledger.bound) + "\n";
        emit(g, j, t);
    });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const BntError& e) {
        std::cerr << bnt::jsonio::dump(bnt::jsonio::error_json(e));
        return 1;
    } catch (const std::exception& e) {
        std::cerr << bnt::jsonio::dump(bnt::jsonio::error_json(e));
        return 1;
    }
}
