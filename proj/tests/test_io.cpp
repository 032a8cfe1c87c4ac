#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pinchuk/construction.hpp"
#include "pinchuk/errors.hpp"
#include "pinchuk/io.hpp"

#include "oracles.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <random>
#include <string>

using nlohmann::json;
using pinchuk::BigRat;
using pinchuk::BiPoly;
using pinchuk::ExportSelection;
using pinchuk::MapDocument;
using pinchuk::ParseError;

namespace {
const BiPoly t = BiPoly::var_x() * BiPoly::var_y() - BiPoly(1);
}

TEST_CASE("serialize_poly canonical form") {
    const json got = json::parse(pinchuk::serialize_poly(t));
    const json want = json::parse(
        R"({"vars":["x","y"],"terms":[{"e":[1,1],"c":"1/1"},{"e":[0,0],"c":"-1/1"}]})");
    CHECK(got == want);

    // term order: total degree descending, then x-degree descending
    const BiPoly p = BiPoly::monomial(0, 2) + BiPoly::monomial(2, 0, BigRat(3)) +
                     BiPoly::monomial(1, 0) + BiPoly(5);
    const json j = json::parse(pinchuk::serialize_poly(p));
    REQUIRE(j["terms"].size() == 4);
    CHECK(j["terms"][0]["e"] == json::array({2, 0}));
    CHECK(j["terms"][1]["e"] == json::array({0, 2}));
    CHECK(j["terms"][2]["e"] == json::array({1, 0}));
    CHECK(j["terms"][3]["e"] == json::array({0, 0}));

    const json zero = json::parse(pinchuk::serialize_poly(BiPoly()));
    CHECK(zero["terms"] == json::array());
    CHECK(zero["vars"] == json::array({"x", "y"}));
}

TEST_CASE("parse_poly accepts the schema") {
    CHECK(pinchuk::parse_poly(pinchuk::serialize_poly(t)) == t);
    CHECK(pinchuk::parse_poly(R"({"vars":["x","y"],"terms":[]})").is_zero());
    // order independence
    CHECK(pinchuk::parse_poly(
              R"({"vars":["x","y"],"terms":[{"e":[0,0],"c":"-1/1"},{"e":[1,1],"c":"1/1"}]})") ==
          t);
    // plain integer coefficient strings are exact rationals too
    CHECK(pinchuk::parse_poly(R"({"vars":["x","y"],"terms":[{"e":[0,0],"c":"7"}]})") ==
          BiPoly(7));
}

TEST_CASE("parse_poly rejects schema violations") {
    CHECK_THROWS_AS(pinchuk::parse_poly(R"({"vars":["x","z"],"terms":[]})"), ParseError);
    CHECK_THROWS_AS(pinchuk::parse_poly(R"({"vars":["x"],"terms":[]})"), ParseError);
    CHECK_THROWS_AS(pinchuk::parse_poly(R"({"terms":[]})"), ParseError);
    CHECK_THROWS_AS(pinchuk::parse_poly(R"({"vars":["x","y"]})"), ParseError);
    // negative exponent
    CHECK_THROWS_AS(
        pinchuk::parse_poly(R"({"vars":["x","y"],"terms":[{"e":[-1,0],"c":"1/1"}]})"),
        ParseError);
    // non-integer exponent
    CHECK_THROWS_AS(
        pinchuk::parse_poly(R"({"vars":["x","y"],"terms":[{"e":[0.5,0],"c":"1/1"}]})"),
        ParseError);
    // wrong arity
    CHECK_THROWS_AS(
        pinchuk::parse_poly(R"({"vars":["x","y"],"terms":[{"e":[1],"c":"1/1"}]})"),
        ParseError);
    // zero coefficient
    CHECK_THROWS_AS(
        pinchuk::parse_poly(R"({"vars":["x","y"],"terms":[{"e":[1,0],"c":"0/1"}]})"),
        ParseError);
    // malformed rational
    CHECK_THROWS_AS(
        pinchuk::parse_poly(R"({"vars":["x","y"],"terms":[{"e":[1,0],"c":"1.5"}]})"),
        ParseError);
    CHECK_THROWS_AS(
        pinchuk::parse_poly(R"({"vars":["x","y"],"terms":[{"e":[1,0],"c":3}]})"),
        ParseError);
    // duplicate exponent pair
    CHECK_THROWS_AS(
        pinchuk::parse_poly(
            R"({"vars":["x","y"],"terms":[{"e":[1,0],"c":"1/1"},{"e":[1,0],"c":"2/1"}]})"),
        ParseError);
    // malformed JSON reports where parsing stopped
    try {
        pinchuk::parse_poly("{\"vars\":");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("parse error") != std::string::npos);
    }
}

TEST_CASE("random polynomial round trips") {
    std::mt19937 gen(101);
    for (int k = 0; k < 100; ++k) {
        const BiPoly a = oracle::random_bipoly(gen, 10, 15);
        CHECK(pinchuk::parse_poly(pinchuk::serialize_poly(a)) == a);
    }
}

TEST_CASE("document assembly and round trip") {
    const auto r = pinchuk::construct_from_cK({BigRat(1), pinchuk::UniPoly(3)});
    const MapDocument doc = pinchuk::make_document(r);
    CHECK(doc.format_version == "1");
    CHECK(doc.c == BigRat(1));
    REQUIRE(doc.K.size() == 1);
    CHECK(doc.K[0] == BigRat(3));
    CHECK(doc.p == r.base.p);
    CHECK(doc.q == r.q);
    CHECK(doc.deg_p == 10);
    CHECK(doc.deg_q == 15);
    CHECK(doc.construction == "theorem-2.5");

    const std::string text = pinchuk::serialize_document(doc);
    CHECK(pinchuk::parse_document(text) == doc);
    CHECK(text.back() == '\n');
    CHECK(pinchuk::serialize_document(doc) == text); // byte-stable

    // K with interior zeros survives the dense encoding
    const auto r2 = pinchuk::construct_from_cK(
        {BigRat(-1, 2), pinchuk::UniPoly::from_coeffs({1, 0, 0, 2})});
    const MapDocument doc2 = pinchuk::make_document(r2);
    REQUIRE(doc2.K.size() == 4);
    CHECK(doc2.K[1] == BigRat(0));
    CHECK(pinchuk::parse_document(pinchuk::serialize_document(doc2)) == doc2);
}

TEST_CASE("parse_document rejects schema violations") {
    const auto r = pinchuk::construct_from_cK({BigRat(1), pinchuk::UniPoly(3)});
    const MapDocument doc = pinchuk::make_document(r);
    json j = json::parse(pinchuk::serialize_document(doc));

    json bad = j;
    bad["format_version"] = "2";
    CHECK_THROWS_AS(pinchuk::parse_document(bad.dump()), ParseError);
    bad = j;
    bad["metadata"]["construction"] = "other";
    CHECK_THROWS_AS(pinchuk::parse_document(bad.dump()), ParseError);
    bad = j;
    bad["params"].erase("c");
    CHECK_THROWS_AS(pinchuk::parse_document(bad.dump()), ParseError);
    bad = j;
    bad["params"]["K"] = json::array();
    CHECK_THROWS_AS(pinchuk::parse_document(bad.dump()), ParseError);
    bad = j;
    bad["metadata"]["deg_q"] = "15";
    CHECK_THROWS_AS(pinchuk::parse_document(bad.dump()), ParseError);
    CHECK_THROWS_AS(pinchuk::parse_document("not json"), ParseError);
    CHECK_THROWS_AS(pinchuk::parse_document("[1,2,3]"), ParseError);
}

TEST_CASE("file round trip") {
    const auto r = pinchuk::construct_from_cK({BigRat(0), pinchuk::UniPoly()});
    const MapDocument doc = pinchuk::make_document(r);
    const std::string path = "io_roundtrip_tmp.json";
    pinchuk::save_document(doc, path);
    const MapDocument back = pinchuk::load_document(path);
    CHECK(back == doc);
    std::remove(path.c_str());
    CHECK_THROWS_AS(pinchuk::load_document("definitely_missing_dir/nope.json"),
                    std::runtime_error);
}

TEST_CASE("export_text") {
    const auto r = pinchuk::construct_from_cK({BigRat(1), pinchuk::UniPoly(3)});
    const MapDocument doc = pinchuk::make_document(r);

    const std::string both = pinchuk::export_text(doc, ExportSelection::pq);
    CHECK(both.find("# p\n") != std::string::npos);
    CHECK(both.find("# q\n") != std::string::npos);

    const std::string only_p = pinchuk::export_text(doc, ExportSelection::p);
    CHECK(only_p.find("# p\n") != std::string::npos);
    CHECK(only_p.find("# q") == std::string::npos);
    // leading term of p is x^6 y^4
    CHECK(only_p.find("1/1 x^6 y^4") != std::string::npos);
    // one line per term plus the header
    std::size_t lines = 0;
    for (char ch : only_p)
        if (ch == '\n') ++lines;
    CHECK(lines == 1 + doc.p.term_count());

    const std::string only_q = pinchuk::export_text(doc, ExportSelection::q);
    CHECK(only_q.find("# q\n") != std::string::npos);
    CHECK(only_q.find("# p") == std::string::npos);
}
