#include "pinchuk/io.hpp"

#include "pinchuk/errors.hpp"

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pinchuk {

namespace {

using nlohmann::json;

json poly_to_json(const BiPoly& poly) {
    json terms = json::array();
    const auto& map = poly.terms();
    for (auto it = map.rbegin(); it != map.rend(); ++it) {
        terms.push_back(json{{"e", {it->first.x, it->first.y}},
                             {"c", it->second.to_string()}});
    }
    return json{{"vars", {"x", "y"}}, {"terms", std::move(terms)}};
}

BigRat rational_from_json(const json& value, const std::string& where) {
    if (!value.is_string())
        throw ParseError(where + ": rationals must be \"num/den\" strings, got " + value.dump());
    try {
        return BigRat::from_string(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

BiPoly poly_from_json(const json& value, const std::string& where) {
    if (!value.is_object()) throw ParseError(where + ": polynomial must be an object");
    if (!value.contains("vars") || value["vars"] != json{"x", "y"})
        throw ParseError(where + ": vars must be [\"x\",\"y\"]");
    if (!value.contains("terms") || !value["terms"].is_array())
        throw ParseError(where + ": terms must be an array");

    BiPoly out;
    std::size_t index = 0;
    for (const json& term : value["terms"]) {
        const std::string ctx = where + ".terms[" + std::to_string(index++) + "]";
        if (!term.is_object() || !term.contains("e") || !term.contains("c"))
            throw ParseError(ctx + ": term needs \"e\" and \"c\"");
        const json& e = term["e"];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw ParseError(ctx + ": \"e\" must be two integers");
        const auto i = e[0].get<std::int64_t>(), j = e[1].get<std::int64_t>();
        if (i < 0 || j < 0) throw ParseError(ctx + ": negative exponent");
        if (i > std::numeric_limits<std::uint32_t>::max() ||
            j > std::numeric_limits<std::uint32_t>::max())
            throw ParseError(ctx + ": exponent out of range");
        const Monomial m{std::uint32_t(i), std::uint32_t(j)};
        const BigRat c = rational_from_json(term["c"], ctx);
        if (c.is_zero()) throw ParseError(ctx + ": zero coefficient is not canonical");
        if (!out.coeff(m).is_zero())
            throw ParseError(ctx + ": duplicate exponent pair [" + std::to_string(i) + "," +
                             std::to_string(j) + "]");
        out.set_coeff(m, c);
    }
    return out;
}

json document_to_json(const MapDocument& doc) {
    json k_list = json::array();
    for (const BigRat& coeff : doc.K) k_list.push_back(coeff.to_string());
    return json{{"format_version", doc.format_version},
                {"params", {{"c", doc.c.to_string()}, {"K", std::move(k_list)}}},
                {"p", poly_to_json(doc.p)},
                {"q", poly_to_json(doc.q)},
                {"metadata",
                 {{"deg_p", doc.deg_p},
                  {"deg_q", doc.deg_q},
                  {"construction", doc.construction}}}};
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key))
        throw ParseError(where + ": missing \"" + key + "\"");
    return obj[key];
}

MapDocument document_from_json(const json& root) {
    MapDocument doc;
    const json& version = require(root, "format_version", "document");
    if (!version.is_string() || version.get<std::string>() != "1")
        throw ParseError("document: unsupported format_version " + version.dump());
    doc.format_version = version.get<std::string>();

    const json& params = require(root, "params", "document");
    doc.c = rational_from_json(require(params, "c", "params"), "params.c");
    const json& k_list = require(params, "K", "params");
    if (!k_list.is_array() || k_list.empty())
        throw ParseError("params.K: must be a nonempty array of rational strings");
    std::size_t k_index = 0;
    for (const json& coeff : k_list)
        doc.K.push_back(
            rational_from_json(coeff, "params.K[" + std::to_string(k_index++) + "]"));

    doc.p = poly_from_json(require(root, "p", "document"), "p");
    doc.q = poly_from_json(require(root, "q", "document"), "q");

    const json& meta = require(root, "metadata", "document");
    const json& deg_p = require(meta, "deg_p", "metadata");
    const json& deg_q = require(meta, "deg_q", "metadata");
    if (!deg_p.is_number_integer() || !deg_q.is_number_integer())
        throw ParseError("metadata: deg_p and deg_q must be integers");
    doc.deg_p = deg_p.get<int>();
    doc.deg_q = deg_q.get<int>();
    const json& construction = require(meta, "construction", "metadata");
    if (!construction.is_string() || construction.get<std::string>() != "theorem-2.5")
        throw ParseError("metadata: unsupported construction " + construction.dump());
    doc.construction = construction.get<std::string>();
    return doc;
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what()); // carries byte offset and reason
    }
}

} // namespace

std::string serialize_poly(const BiPoly& poly) { return poly_to_json(poly).dump(); }

BiPoly parse_poly(const std::string& text) {
    return poly_from_json(parse_json_text(text), "polynomial");
}

MapDocument make_document(const ConstructionResult& result) {
    MapDocument doc;
    doc.c = result.params.c;
    const int k_deg = result.params.K.degree().value_or(0);
    for (int k = 0; k <= k_deg; ++k) doc.K.push_back(result.params.K.coeff(unsigned(k)));
    doc.p = result.base.p;
    doc.q = result.q;
    doc.deg_p = result.base.p.total_degree().value_or(0);
    doc.deg_q = result.q.total_degree().value_or(0);
    return doc;
}

std::string serialize_document(const MapDocument& doc) {
    return document_to_json(doc).dump(2) + "\n";
}

MapDocument parse_document(const std::string& text) {
    return document_from_json(parse_json_text(text));
}

MapDocument load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw std::runtime_error("read failure on " + path);
    return parse_document(buffer.str());
}

void save_document(const MapDocument& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << serialize_document(doc);
    if (!out.flush()) throw std::runtime_error("write failure on " + path);
}

namespace {

void export_poly_text(std::ostream& os, const char* name, const BiPoly& poly) {
    os << "# " << name << "\n";
    const auto& map = poly.terms();
    for (auto it = map.rbegin(); it != map.rend(); ++it)
        os << it->second.to_string() << " x^" << it->first.x << " y^" << it->first.y << "\n";
}

} // namespace

std::string export_text(const MapDocument& doc, ExportSelection which) {
    std::ostringstream os;
    if (which != ExportSelection::q) export_poly_text(os, "p", doc.p);
    if (which != ExportSelection::p) export_poly_text(os, "q", doc.q);
    return os.str();
}

} // namespace pinchuk
