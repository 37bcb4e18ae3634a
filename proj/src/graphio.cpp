#include "bnt/graphio.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>
#include <utility>

#include "bnt/bits.hpp"
#include "bnt/error.hpp"

namespace bnt::graphio {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    // Trailing blank lines are tolerated everywhere.
    while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string_view::npos)
        lines.pop_back();
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        std::size_t begin = line.find_first_not_of(" \t", pos);
        if (begin == std::string_view::npos) break;
        std::size_t end = line.find_first_of(" \t", begin);
        if (end == std::string_view::npos) end = line.size();
        fields.push_back(line.substr(begin, end - begin));
        pos = end;
    }
    return fields;
}

std::uint64_t parse_uint(std::string_view field, std::size_t line_no) {
    std::uint64_t value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw BntError(ErrorKind::parse_error, "expected a non-negative integer",
                       {{"line", static_cast<std::int64_t>(line_no)}});
    return value;
}

void check_vertex(const Graph& g, NodeId v, const char* what) {
    if (v >= g.vertex_count)
        throw BntError(ErrorKind::invalid_argument,
                       std::string(what) + " vertex id out of range",
                       {{"vertex", v}, {"vertex_count", g.vertex_count}});
}

void check_monitor_set(const Graph& g, const NodeSet& s, const char* what) {
    if (s.empty())
        throw BntError(ErrorKind::invalid_argument, std::string(what) + " set is empty");
    for (std::size_t i = 0; i < s.size(); ++i) {
        check_vertex(g, s[i], what);
        if (i > 0 && s[i] <= s[i - 1])
            throw BntError(ErrorKind::invalid_argument,
                           std::string(what) + " set must be strictly increasing");
    }
}

} // namespace

Graph make_graph(std::uint32_t vertex_count, std::vector<std::pair<NodeId, NodeId>> edges) {
    Graph g;
    g.vertex_count = vertex_count;
    for (auto& [a, b] : edges) {
        if (a >= vertex_count || b >= vertex_count)
            throw BntError(ErrorKind::invalid_argument, "edge endpoint out of range",
                           {{"u", a}, {"v", b}, {"vertex_count", vertex_count}});
        if (a == b)
            throw BntError(ErrorKind::self_loop, "self-loops are not allowed", {{"vertex", a}});
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            throw BntError(ErrorKind::duplicate_edge, "edge listed twice",
                           {{"u", edges[i].first}, {"v", edges[i].second}});
    g.edges = std::move(edges);
    g.adjacency.assign(vertex_count, {});
    for (const auto& [a, b] : g.edges) {
        g.adjacency[a].push_back(b);
        g.adjacency[b].push_back(a);
    }
    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

Graph read_graph(std::string_view text, bool one_based) {
    const auto lines = split_lines(text);
    if (lines.empty())
        throw BntError(ErrorKind::parse_error, "graph text is empty", {{"line", 1}});
    const auto head = split_fields(lines[0]);
    if (head.size() != 1)
        throw BntError(ErrorKind::parse_error, "first line must hold the vertex count",
                       {{"line", 1}});
    const std::uint64_t count = parse_uint(head[0], 1);
    if (count > std::numeric_limits<NodeId>::max())
        throw BntError(ErrorKind::parse_error, "vertex count too large", {{"line", 1}});

    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const auto fields = split_fields(lines[i]);
        if (fields.empty())
            throw BntError(ErrorKind::parse_error, "blank line inside the edge list",
                           {{"line", static_cast<std::int64_t>(line_no)}});
        if (fields.size() != 2)
            throw BntError(ErrorKind::parse_error, "edge line must hold exactly two vertex ids",
                           {{"line", static_cast<std::int64_t>(line_no)}});
        std::uint64_t a = parse_uint(fields[0], line_no);
        std::uint64_t b = parse_uint(fields[1], line_no);
        if (one_based) {
            if (a == 0 || b == 0)
                throw BntError(ErrorKind::parse_error, "vertex id 0 is invalid in one-based input",
                               {{"line", static_cast<std::int64_t>(line_no)}});
            --a;
            --b;
        }
        if (a >= count || b >= count)
            throw BntError(ErrorKind::parse_error, "edge endpoint out of range",
                           {{"line", static_cast<std::int64_t>(line_no)},
                            {"u", static_cast<std::int64_t>(a)},
                            {"v", static_cast<std::int64_t>(b)},
                            {"vertex_count", static_cast<std::int64_t>(count)}});
        edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
    }
    return make_graph(static_cast<std::uint32_t>(count), std::move(edges));
}

std::string write_graph(const Graph& g, bool one_based) {
    const std::uint32_t shift = one_based ? 1 : 0;
    std::string out = std::to_string(g.vertex_count);
    out.push_back('\n');
    for (const auto& [a, b] : g.edges) {
        out += std::to_string(a + shift);
        out.push_back(' ');
        out += std::to_string(b + shift);
        out.push_back('\n');
    }
    return out;
}

namespace {

struct PathCollector {
    const Graph& g;
    const Bits& is_target;
    std::uint32_t cutoff;
    std::uint64_t max_paths;

    Bits on_path;
    std::vector<NodeId> stack;
    std::uint64_t raw = 0;
    std::unordered_set<Bits, BitsHash> seen;
    std::vector<Bits> rows;

    PathCollector(const Graph& graph, const Bits& targets, std::uint32_t cutoff_edges,
                  std::uint64_t budget)
        : g(graph), is_target(targets), cutoff(cutoff_edges), max_paths(budget),
          on_path(graph.vertex_count) {}

    void record() {
        if (++raw > max_paths)
            throw BntError(ErrorKind::path_budget_exceeded, "too many raw paths",
                           {{"max_paths", static_cast<std::int64_t>(max_paths)}});
        if (seen.insert(on_path).second) rows.push_back(on_path);
    }

    void extend(NodeId v) {
        on_path.set(v);
        stack.push_back(v);
        if (stack.size() >= 2 && is_target.test(v)) record();
        if (stack.size() <= cutoff) { // edges used so far < cutoff
            for (NodeId w : g.adjacency[v])
                if (!on_path.test(w)) extend(w);
        }
        stack.pop_back();
        on_path.set(v, false);
    }
};

} // namespace

PathEnumeration enumerate_paths(const Graph& g, const MonitorSpec& monitors,
                                std::uint32_t cutoff, std::uint64_t max_paths,
                                const ValidationOptions& opts) {
    check_monitor_set(g, monitors.sources, "source");
    check_monitor_set(g, monitors.targets, "target");
    if (max_paths == 0)
        throw BntError(ErrorKind::invalid_argument, "max_paths must be positive");

    Bits is_target(g.vertex_count);
    for (NodeId t : monitors.targets) is_target.set(t);

    PathCollector collector(g, is_target, cutoff, max_paths);
    for (NodeId s : monitors.sources) collector.extend(s);
    if (collector.rows.empty())
        throw BntError(ErrorKind::no_paths, "no path connects the monitors",
                       {{"cutoff", cutoff}});

    // Canonical row order: compare the vertex-index sequences.
    std::vector<NodeSet> row_sets;
    row_sets.reserve(collector.rows.size());
    for (const Bits& row : collector.rows) row_sets.push_back(row.to_indices());
    std::sort(row_sets.begin(), row_sets.end());

    // Drop vertices that lie on no enumerated path and renumber the rest.
    Bits used(g.vertex_count);
    for (const Bits& row : collector.rows) used |= row;
    NodeSet kept = used.to_indices();

    std::vector<std::uint32_t> position(g.vertex_count, 0);
    for (std::size_t i = 0; i < kept.size(); ++i)
        position[kept[i]] = static_cast<std::uint32_t>(i);

    std::vector<Bits> remapped;
    remapped.reserve(row_sets.size());
    for (const NodeSet& row : row_sets) {
        Bits r(static_cast<std::uint32_t>(kept.size()));
        for (NodeId v : row) r.set(position[v]);
        remapped.push_back(std::move(r));
    }
    PathMatrix matrix = PathMatrix::from_rows(std::move(remapped),
                                              static_cast<std::uint32_t>(kept.size()), opts);
    return PathEnumeration{std::move(matrix), std::move(kept), collector.raw};
}

DistanceTable distances(const Graph& g) {
    const std::uint32_t n = g.vertex_count;
    DistanceTable t;
    t.dist.assign(n, std::vector<std::uint32_t>(n, kUnreachable));
    t.parent.assign(n, std::vector<NodeId>(n, kUnreachable));
    std::vector<NodeId> queue;
    queue.reserve(n);
    for (NodeId s = 0; s < n; ++s) {
        auto& dist = t.dist[s];
        dist[s] = 0;
        queue.assign(1, s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const NodeId v = queue[head];
            for (NodeId w : g.adjacency[v]) {
                if (dist[w] != kUnreachable) continue;
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
        // Canonical predecessor: the smallest neighbour one step closer.
        auto& parent = t.parent[s];
        for (NodeId v = 0; v < n; ++v) {
            if (v == s || dist[v] == kUnreachable) continue;
            for (NodeId w : g.adjacency[v]) {
                if (dist[w] + 1 == dist[v]) {
                    parent[v] = w; // adjacency is sorted: first hit is least
                    break;
                }
            }
        }
    }
    return t;
}

NodeSet canonical_shortest_path(const DistanceTable& t, NodeId u, NodeId v) {
    if (u >= t.dist.size() || v >= t.dist.size())
        throw BntError(ErrorKind::invalid_argument, "vertex id out of range",
                       {{"u", u}, {"v", v}});
    if (t.dist[u][v] == kUnreachable) return {};
    NodeSet path;
    NodeId cur = v;
    while (cur != u) {
        path.push_back(cur);
        cur = t.parent[u][cur];
    }
    path.push_back(u);
    std::sort(path.begin(), path.end());
    return path;
}

std::vector<NodeSet> all_shortest_paths(const Graph& g, const DistanceTable& t, NodeId u,
                                        NodeId v, BudgetCounter& budget) {
    if (u >= g.vertex_count || v >= g.vertex_count)
        throw BntError(ErrorKind::invalid_argument, "vertex id out of range",
                       {{"u", u}, {"v", v}});
    std::vector<NodeSet> out;
    const std::uint32_t total = t.dist[u][v];
    if (total == kUnreachable) return out;

    const auto& du = t.dist[u];
    const auto& dv = t.dist[v];
    NodeSet stack{u};
    // Forward walk: every prefix vertex at depth d of a shortest path has
    // du = d and dv = total - d, so extending by such neighbours (in
    // ascending id order) yields the paths in lexicographic sequence order.
    auto walk = [&](auto&& self, NodeId cur, std::uint32_t depth) -> void {
        if (cur == v) {
            budget.charge();
            NodeSet path = stack;
            std::sort(path.begin(), path.end());
            out.push_back(std::move(path));
            return;
        }
        for (NodeId w : g.adjacency[cur]) {
            if (du[w] == depth + 1 && dv[w] == total - depth - 1) {
                stack.push_back(w);
                self(self, w, depth + 1);
                stack.pop_back();
            }
        }
    };
    walk(walk, u, 0);
    return out;
}

Graph induced_subgraph(const Graph& g, const NodeSet& kept) {
    std::vector<std::uint32_t> position(g.vertex_count, kUnreachable);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        check_vertex(g, kept[i], "kept");
        if (i > 0 && kept[i] <= kept[i - 1])
            throw BntError(ErrorKind::invalid_argument, "kept set must be strictly increasing");
        position[kept[i]] = static_cast<std::uint32_t>(i);
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& [a, b] : g.edges)
        if (position[a] != kUnreachable && position[b] != kUnreachable)
            edges.emplace_back(position[a], position[b]);
    return make_graph(static_cast<std::uint32_t>(kept.size()), std::move(edges));
}

} // namespace bnt::graphio
