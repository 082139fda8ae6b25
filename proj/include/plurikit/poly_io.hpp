#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "plurikit/homo_poly.hpp"
#include "plurikit/proj_point.hpp"

namespace plurikit {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// JSON-lines polynomial format. A plain polynomial is
//   {"format_version":1,"n":n,"degree":k,"terms":T}
//   {"alpha":[...],"re":x,"im":y}            (T lines)
// A factored polynomial adds "log_scale", "phase" and "factors":F to the header and
// precedes each factor's term lines with {"factor":i,"degree":d,"power":e,"terms":T}.

std::vector<json> poly_to_records(const HomoPoly& p);
/// Reads one polynomial starting at records[pos]; advances pos past it.
HomoPoly poly_from_records(const std::vector<json>& records, std::size_t& pos);

void write_poly(std::ostream& os, const HomoPoly& p);
HomoPoly read_poly(std::istream& is);

json point_to_json(const ProjPoint& z);
ProjPoint point_from_json(const json& j);
/// Accepts "[1,0]" (real coordinates) or "[[1,0],[0,1]]" (re/im pairs).
ProjPoint parse_point(const std::string& text);

std::vector<json> read_json_lines(std::istream& is);

}  // namespace plurikit
