#include "bnt/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bnt::jsonio {

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

Json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round12(x);
}

Json error_json(const BntError& e) {
    Json details = Json::object();
    for (const auto& [key, value] : e.details()) details[key] = value;
    return Json{{"error", Json{{"kind", to_string(e.kind())},
                               {"message", e.what()},
                               {"details", details}}}};
}

Json error_json(const std::exception& e) {
    return Json{{"error", Json{{"kind", "internal"},
                               {"message", e.what()},
                               {"details", Json::object()}}}};
}

std::string dump(const Json& j) {
    return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw BntError(ErrorKind::file_not_found, "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw BntError(ErrorKind::file_not_found, "cannot open file for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw BntError(ErrorKind::file_not_found, "write failed: " + path);
}

} // namespace bnt::jsonio
