#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bnt/bits.hpp"
#include "bnt/error.hpp"

namespace bnt {

// Node and path indices are 0-based everywhere in the library and in JSON
// output. 1-based numbering exists only as a CLI display convenience.
using NodeId = std::uint32_t;
using PathId = std::uint32_t;
using NodeSet = std::vector<NodeId>; // sorted, duplicate-free
using PathSet = std::vector<PathId>; // sorted, duplicate-free

// Relaxations of the standard matrix invariants. The strict default models a
// measurement system: every node lies on at least one path, no two nodes are
// measurement-equivalent, and every path probes at least one node. Synthetic
// matrices (random draws, reduction images) may relax individual rules.
struct ValidationOptions {
    bool allow_zero_columns = false;
    bool allow_duplicate_columns = false;
    bool allow_empty_paths = false;
};

// Boolean incidence matrix of m measurement paths (rows) over n nodes
// (columns). Bit (p, u) = 1 iff path p traverses node u. Immutable after
// construction; rows and columns are both materialized as bitsets since
// every algorithm is either row- or column-centric.
class PathMatrix {
public:
    // Validates and builds from row bitsets of width n.
    static PathMatrix from_rows(std::vector<Bits> rows, std::size_t n,
                                const ValidationOptions& opts = {});

    // Validates and builds from column bitsets of height m.
    static PathMatrix from_columns(std::vector<Bits> columns, std::size_t m,
                                   const ValidationOptions& opts = {});

    // Validates a raw 0/1 grid (row major).
    static PathMatrix validate(const std::vector<std::vector<std::uint8_t>>& grid,
                               const ValidationOptions& opts = {});

    std::size_t path_count() const { return rows_.size(); }  // m
    std::size_t node_count() const { return cols_.size(); }  // n

    const Bits& row(PathId p) const { return rows_.at(p); }
    const Bits& column(NodeId u) const { return cols_.at(u); }
    bool bit(PathId p, NodeId u) const { return rows_.at(p).test(u); }

    // P(U): the set of paths traversing at least one node of U, as an m-bit
    // mask. U must be a valid node set over this matrix; U = {} gives {}.
    Bits paths_mask(const NodeSet& nodes) const;
    Bits paths_mask_of(NodeId u) const { return cols_.at(u); }
    PathSet paths_of(const NodeSet& nodes) const { return paths_mask(nodes).to_indices(); }

    const ValidationOptions& options() const { return opts_; }

    friend bool operator==(const PathMatrix& a, const PathMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_.size() == b.cols_.size();
    }

    // Throws invalid_argument unless `nodes` is sorted, duplicate-free and
    // within range.
    void check_node_set(const NodeSet& nodes) const;

private:
    PathMatrix() = default;
    void build_columns_from_rows(std::size_t n);
    void run_validation(const ValidationOptions& opts);

    std::vector<Bits> rows_; // m entries of width n
    std::vector<Bits> cols_; // n entries of height m
    ValidationOptions opts_;
};

// Boolean outcome vector of one monitoring round: bit p = 1 iff path p
// failed. Width must equal the matrix's path count where the two meet.
struct Measurement {
    Bits outcomes;

    std::size_t size() const { return outcomes.size(); }
    Bits fail_mask() const { return outcomes; }
};

// Text formats.
//
// Matrix file: UTF-8 text, one row per line, n comma-separated 0/1 fields,
// trailing newline optional. Measurement file: a single such line.
// Parse errors carry 1-based line/column positions.
PathMatrix read_matrix(std::string_view text, const ValidationOptions& opts = {});
std::string write_matrix(const PathMatrix& m);

Measurement read_measurement(std::string_view text);
std::string write_measurement(const Measurement& m);

// Helper shared by parsers: splits one CSV line of 0/1 fields.
// `line_no` is 1-based and used for error positions.
Bits parse_bit_line(std::string_view line, std::size_t line_no);

} // namespace bnt
