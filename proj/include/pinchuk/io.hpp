#ifndef PINCHUK_IO_HPP
#define PINCHUK_IO_HPP

#include "pinchuk/construction.hpp"

#include <string>
#include <vector>

namespace pinchuk {

/// On-disk form of one constructed map. Every rational travels as an exact
/// "num/den" string; nothing numeric is ever stored as a float. K is the
/// dense low-to-high coefficient list of the K(h) parameter.
struct MapDocument {
    std::string format_version = "1";
    BigRat c;
    std::vector<BigRat> K;
    BiPoly p;
    BiPoly q;
    int deg_p = 0;
    int deg_q = 0;
    std::string construction = "theorem-2.5";

    friend bool operator==(const MapDocument&, const MapDocument&) = default;
};

/// Canonical JSON text of one polynomial:
///   {"vars":["x","y"],"terms":[{"e":[i,j],"c":"num/den"}, ...]}
/// with terms ordered by total degree descending, then x-degree descending.
std::string serialize_poly(const BiPoly& poly);

/// Inverse of serialize_poly. Accepts any term order but rejects anything
/// outside the schema: wrong vars, non-integer or negative exponents, missing
/// or zero or malformed coefficients, duplicate exponent pairs. Throws
/// ParseError naming the offending term.
BiPoly parse_poly(const std::string& text);

MapDocument make_document(const ConstructionResult& result);

/// Deterministic pretty-printed JSON (alphabetical keys, 2-space indent).
std::string serialize_document(const MapDocument& doc);

/// Strict inverse of serialize_document; ParseError on schema violations,
/// unknown format_version, or a construction tag this tool does not produce.
MapDocument parse_document(const std::string& text);

MapDocument load_document(const std::string& path);
void save_document(const MapDocument& doc, const std::string& path);

enum class ExportSelection { p, q, pq };

/// Plain-text monomial listing for interop: one "num/den x^i y^j" line per
/// term in canonical order, under "# p" / "# q" section headers.
std::string export_text(const MapDocument& doc, ExportSelection which);

} // namespace pinchuk

#endif
