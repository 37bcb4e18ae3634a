#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "bnt/error.hpp"
#include "bnt/pathmatrix.hpp"

namespace bnt::jsonio {

// Insertion-ordered JSON keeps output key order deterministic.
using Json = nlohmann::ordered_json;

// Doubles pass through a 12-significant-digit text round-trip before
// serialization, so equal computations give byte-equal output across runs
// and thread counts.
double round12(double x);

// round12 as a JSON value; non-finite maps to null.
Json number(double x);

// Machine-readable error object: {"error": {"kind", "message", "details"}}.
Json error_json(const BntError& e);
Json error_json(const std::exception& e);

// Two-space-indented dump with a trailing newline.
std::string dump(const Json& j);

// Whole-file text helpers; reading a missing/unreadable file raises
// file_not_found.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

} // namespace bnt::jsonio
