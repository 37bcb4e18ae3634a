#include "bnt/pathmatrix.hpp"

#include <algorithm>
#include <unordered_map>

namespace bnt {

namespace {

[[noreturn]] void throw_parse(std::size_t line, std::size_t column, const std::string& what) {
    throw BntError(ErrorKind::parse_error, "parse error at line " + std::to_string(line) +
                                               ", column " + std::to_string(column) + ": " + what,
                   {{"line", static_cast<std::int64_t>(line)},
                    {"column", static_cast<std::int64_t>(column)}});
}

} // namespace

Bits parse_bit_line(std::string_view line, std::size_t line_no) {
    std::vector<std::uint8_t> cells;
    std::size_t field_start = 0; // byte offset of the current field
    std::size_t pos = 0;
    auto flush_field = [&](std::size_t end) {
        // trim surrounding spaces/tabs
        std::size_t b = field_start, e = end;
        while (b < e && (line[b] == ' ' || line[b] == '\t')) ++b;
        while (e > b && (line[e - 1] == ' ' || line[e - 1] == '\t')) --e;
        if (e - b != 1 || (line[b] != '0' && line[b] != '1'))
            throw_parse(line_no, b + 1, "expected 0 or 1");
        cells.push_back(line[b] == '1' ? 1 : 0);
    };
    for (; pos < line.size(); ++pos) {
        if (line[pos] == ',') {
            flush_field(pos);
            field_start = pos + 1;
        }
    }
    flush_field(pos);
    Bits row(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i]) row.set(i);
    return row;
}

void PathMatrix::build_columns_from_rows(std::size_t n) {
    cols_.assign(n, Bits(rows_.size()));
    for (std::size_t p = 0; p < rows_.size(); ++p)
        rows_[p].for_each_set([&](std::uint32_t u) { cols_[u].set(p); });
}

void PathMatrix::run_validation(const ValidationOptions& opts) {
    opts_ = opts;
    if (rows_.empty() || cols_.empty())
        throw BntError(ErrorKind::empty_matrix, "matrix must have at least one path and one node");
    if (!opts.allow_empty_paths) {
        for (std::size_t p = 0; p < rows_.size(); ++p)
            if (rows_[p].none())
                throw BntError(ErrorKind::empty_path,
                               "path " + std::to_string(p) + " traverses no node",
                               {{"path", static_cast<std::int64_t>(p)}});
    }
    if (!opts.allow_zero_columns) {
        for (std::size_t u = 0; u < cols_.size(); ++u)
            if (cols_[u].none())
                throw BntError(ErrorKind::zero_column,
                               "node " + std::to_string(u) + " lies on no path",
                               {{"node", static_cast<std::int64_t>(u)}});
    }
    if (!opts.allow_duplicate_columns) {
        std::unordered_map<Bits, NodeId, BitsHash> seen;
        seen.reserve(cols_.size() * 2);
        for (std::size_t u = 0; u < cols_.size(); ++u) {
            auto [it, fresh] = seen.emplace(cols_[u], static_cast<NodeId>(u));
            if (!fresh)
                throw BntError(ErrorKind::duplicate_column,
                               "nodes " + std::to_string(it->second) + " and " + std::to_string(u) +
                                   " lie on identical path sets",
                               {{"node_a", static_cast<std::int64_t>(it->second)},
                                {"node_b", static_cast<std::int64_t>(u)}});
        }
    }
}

PathMatrix PathMatrix::from_rows(std::vector<Bits> rows, std::size_t n,
                                 const ValidationOptions& opts) {
    PathMatrix m;
    for (const auto& r : rows)
        if (r.size() != n) throw std::invalid_argument("PathMatrix: ragged rows");
    m.rows_ = std::move(rows);
    m.build_columns_from_rows(n);
    m.run_validation(opts);
    return m;
}

PathMatrix PathMatrix::from_columns(std::vector<Bits> columns, std::size_t mm,
                                    const ValidationOptions& opts) {
    PathMatrix m;
    for (const auto& c : columns)
        if (c.size() != mm) throw std::invalid_argument("PathMatrix: ragged columns");
    m.rows_.assign(mm, Bits(columns.size()));
    for (std::size_t u = 0; u < columns.size(); ++u)
        columns[u].for_each_set([&](std::uint32_t p) { m.rows_[p].set(u); });
    m.cols_ = std::move(columns);
    m.run_validation(opts);
    return m;
}

PathMatrix PathMatrix::validate(const std::vector<std::vector<std::uint8_t>>& grid,
                                const ValidationOptions& opts) {
    std::vector<Bits> rows;
    rows.reserve(grid.size());
    const std::size_t n = grid.empty() ? 0 : grid.front().size();
    for (const auto& r : grid) {
        if (r.size() != n) throw std::invalid_argument("PathMatrix: ragged grid");
        Bits row(n);
        for (std::size_t i = 0; i < n; ++i)
            if (r[i]) row.set(i);
        rows.push_back(std::move(row));
    }
    return from_rows(std::move(rows), n, opts);
}

Bits PathMatrix::paths_mask(const NodeSet& nodes) const {
    check_node_set(nodes);
    Bits acc(path_count());
    for (auto u : nodes) acc |= cols_[u];
    return acc;
}

void PathMatrix::check_node_set(const NodeSet& nodes) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] >= node_count())
            throw BntError(ErrorKind::invalid_argument, "node set: index out of range",
                           {{"node", nodes[i]}});
        if (i > 0 && nodes[i - 1] >= nodes[i])
            throw BntError(ErrorKind::invalid_argument,
                           "node set: must be sorted and duplicate-free");
    }
}

PathMatrix read_matrix(std::string_view text, const ValidationOptions& opts) {
    std::vector<Bits> rows;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool trailing_blank = false; // blank lines allowed only at end of input
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
        if (blank) {
            trailing_blank = true;
        } else {
            if (trailing_blank) throw_parse(line_no, 1, "blank line inside matrix");
            Bits row = parse_bit_line(line, line_no);
            if (!rows.empty() && row.size() != rows.front().size())
                throw_parse(line_no, 1, "row has " + std::to_string(row.size()) +
                                            " fields, expected " +
                                            std::to_string(rows.front().size()));
            rows.push_back(std::move(row));
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    if (rows.empty())
        throw BntError(ErrorKind::empty_matrix, "matrix text contains no rows");
    const std::size_t n = rows.front().size();
    return PathMatrix::from_rows(std::move(rows), n, opts);
}

std::string write_matrix(const PathMatrix& m) {
    std::string out;
    out.reserve(m.path_count() * (2 * m.node_count() + 1));
    for (std::size_t p = 0; p < m.path_count(); ++p) {
        for (std::size_t u = 0; u < m.node_count(); ++u) {
            if (u) out.push_back(',');
            out.push_back(m.bit(static_cast<PathId>(p), static_cast<NodeId>(u)) ? '1' : '0');
        }
        out.push_back('\n');
    }
    return out;
}

Measurement read_measurement(std::string_view text) {
    // accept one data line plus optional trailing blank lines
    std::size_t end = text.find('\n');
    std::string_view line = text.substr(0, end == std::string_view::npos ? text.size() : end);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos)
        throw_parse(1, 1, "measurement line is empty");
    if (end != std::string_view::npos) {
        std::string_view rest = text.substr(end + 1);
        if (rest.find_first_not_of(" \t\r\n") != std::string_view::npos)
            throw_parse(2, 1, "measurement must be a single line");
    }
    return Measurement{parse_bit_line(line, 1)};
}

std::string write_measurement(const Measurement& m) {
    std::string out;
    for (std::size_t p = 0; p < m.outcomes.size(); ++p) {
        if (p) out.push_back(',');
        out.push_back(m.outcomes.test(p) ? '1' : '0');
    }
    out.push_back('\n');
    return out;
}

} // namespace bnt
