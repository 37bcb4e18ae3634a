#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bnt {

enum class ErrorKind {
    empty_matrix,
    zero_column,
    duplicate_column,
    empty_path,
    parse_error,
    k_too_large,
    budget_exceeded,
    empty_edge,
    node_in_w,
    retry_cap_exceeded,
    m_below_threshold,
    selector_out_of_range,
    graph_matrix_mismatch,
    self_loop,
    duplicate_edge,
    path_budget_exceeded,
    no_paths,
    file_not_found,
    invalid_argument,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::empty_matrix: return "empty_matrix";
        case ErrorKind::zero_column: return "zero_column";
        case ErrorKind::duplicate_column: return "duplicate_column";
        case ErrorKind::empty_path: return "empty_path";
        case ErrorKind::parse_error: return "parse_error";
        case ErrorKind::k_too_large: return "k_too_large";
        case ErrorKind::budget_exceeded: return "budget_exceeded";
        case ErrorKind::empty_edge: return "empty_edge";
        case ErrorKind::node_in_w: return "node_in_w";
        case ErrorKind::retry_cap_exceeded: return "retry_cap_exceeded";
        case ErrorKind::m_below_threshold: return "m_below_threshold";
        case ErrorKind::selector_out_of_range: return "selector_out_of_range";
        case ErrorKind::graph_matrix_mismatch: return "graph_matrix_mismatch";
        case ErrorKind::self_loop: return "self_loop";
        case ErrorKind::duplicate_edge: return "duplicate_edge";
        case ErrorKind::path_budget_exceeded: return "path_budget_exceeded";
        case ErrorKind::no_paths: return "no_paths";
        case ErrorKind::file_not_found: return "file_not_found";
        case ErrorKind::invalid_argument: return "invalid_argument";
    }
    return "unknown";
}

// Domain error with a machine-readable kind and numeric detail fields
// (e.g. the offending column index, or the parse position). The CLI maps
// these onto a JSON error object and exit code 1.
class BntError : public std::runtime_error {
public:
    using Details = std::vector<std::pair<std::string, std::int64_t>>;

    BntError(ErrorKind kind, const std::string& message, Details details = {})
        : std::runtime_error(message), kind_(kind), details_(std::move(details)) {}

    ErrorKind kind() const { return kind_; }
    const Details& details() const { return details_; }

private:
    ErrorKind kind_;
    Details details_;
};

} // namespace bnt
