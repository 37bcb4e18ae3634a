#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "bnt/json_io.hpp"
#include "support/schema_check.hpp"

using namespace bnt;
using jsonio::Json;

TEST_CASE("twelve-digit rounding is idempotent and kills float noise") {
    CHECK(jsonio::round12(0.1 + 0.2) == 0.3);
    double third = 1.0 / 3.0;
    CHECK(jsonio::round12(third) == doctest::Approx(third).epsilon(1e-11));
    CHECK(jsonio::round12(jsonio::round12(third)) == jsonio::round12(third));
    CHECK(jsonio::round12(0.0) == 0.0);
    CHECK(jsonio::round12(-1.25e300) == -1.25e300);
}

TEST_CASE("non-finite values serialize as null") {
    CHECK(jsonio::number(1.5) == Json(1.5));
    CHECK(jsonio::number(std::nan("")).is_null());
    CHECK(jsonio::number(INFINITY).is_null());
}

TEST_CASE("error objects carry kind, message and details") {
    BntError e(ErrorKind::k_too_large, "k exceeds the node count", {{"k", 9}, {"node_count", 7}});
    Json j = jsonio::error_json(e);
    CHECK(j["error"]["kind"] == "k_too_large");
    CHECK(j["error"]["message"] == "k exceeds the node count");
    CHECK(j["error"]["details"]["k"] == 9);
    CHECK(j["error"]["details"]["node_count"] == 7);

    std::runtime_error plain("boom");
    Json p = jsonio::error_json(plain);
    CHECK(p["error"]["kind"] == "internal");
    CHECK(p["error"]["details"].is_object());
}

TEST_CASE("dump emits two-space indent and a trailing newline") {
    Json j{{"a", 1}};
    std::string s = jsonio::dump(j);
    CHECK(s == "{\n  \"a\": 1\n}\n");
}

TEST_CASE("text file round trip and open failures") {
    std::string path = "/tmp/bnt_json_io_test.txt";
    jsonio::write_text_file(path, "payload\n");
    CHECK(jsonio::read_text_file(path) == "payload\n");
    std::remove(path.c_str());
    try {
        jsonio::read_text_file("/nonexistent/dir/f.txt");
        FAIL("expected a file error");
    } catch (const BntError& e) {
        CHECK(e.kind() == ErrorKind::file_not_found);
    }
}

TEST_CASE("schema checker accepts and rejects as advertised") {
    Json schema = Json::parse(R"({
        "type": "object",
        "required": ["k", "nodes"],
        "additionalProperties": false,
        "properties": {
            "k": {"type": "integer", "minimum": 0},
            "nodes": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            "mode": {"type": "string", "enum": ["exact", "chi2"]}
        }
    })");
    std::string err;
    CHECK(schema_check::validate(schema, Json{{"k", 1}, {"nodes", Json::array({0, 2})}}, err));
    CHECK(schema_check::validate(
        schema, Json{{"k", 1}, {"nodes", Json::array()}, {"mode", "chi2"}}, err));

    Json missing{{"k", 1}};
    CHECK_FALSE(schema_check::validate(schema, missing, err));
    CHECK(err.find("nodes") != std::string::npos);

    Json negative{{"k", -1}, {"nodes", Json::array()}};
    CHECK_FALSE(schema_check::validate(schema, negative, err));

    Json stray{{"k", 1}, {"nodes", Json::array()}, {"extra", true}};
    CHECK_FALSE(schema_check::validate(schema, stray, err));

    Json bad_item{{"k", 1}, {"nodes", Json::array({0, "x"})}};
    CHECK_FALSE(schema_check::validate(schema, bad_item, err));

    Json bad_enum{{"k", 1}, {"nodes", Json::array()}, {"mode", "other"}};
    CHECK_FALSE(schema_check::validate(schema, bad_enum, err));
}
