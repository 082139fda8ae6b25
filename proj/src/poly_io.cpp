#include "plurikit/poly_io.hpp"

#include <istream>
#include <ostream>

#include "plurikit/errors.hpp"

namespace plurikit {

namespace {

json term_record(const MultiIndex& alpha, cplx c) {
  return json{{"alpha", alpha}, {"re", c.real()}, {"im", c.imag()}};
}

const json& record_at(const std::vector<json>& records, std::size_t pos) {
  if (pos >= records.size()) throw DomainError("polynomial record stream ended early");
  return records[pos];
}

TermMap read_terms(const std::vector<json>& records, std::size_t& pos, std::size_t count) {
  TermMap terms;
  for (std::size_t t = 0; t < count; ++t) {
    const json& r = record_at(records, pos++);
    if (!r.contains("alpha")) throw DomainError("expected a term record");
    terms[r.at("alpha").get<MultiIndex>()] += cplx(r.at("re").get<double>(), r.at("im").get<double>());
  }
  return terms;
}

}  // namespace

std::vector<json> poly_to_records(const HomoPoly& p) {
  std::vector<json> out;
  json header{{"format_version", kFormatVersion}, {"n", p.nvars() - 1}, {"degree", p.degree()}};
  if (p.is_zero()) {
    header["terms"] = 0;
    out.push_back(header);
    return out;
  }
  if (p.is_plain() || p.factors().empty()) {
    const TermMap terms = p.factors().empty() ? p.expand(0) : p.factors()[0].terms;
    header["terms"] = terms.size();
    out.push_back(header);
    for (const auto& [alpha, c] : terms) out.push_back(term_record(alpha, c));
    return out;
  }
  header["log_scale"] = p.log_scale();
  header["phase"] = p.phase();
  header["factors"] = p.factors().size();
  out.push_back(header);
  for (std::size_t i = 0; i < p.factors().size(); ++i) {
    const Factor& f = p.factors()[i];
    out.push_back(json{{"factor", i}, {"degree", f.degree}, {"power", f.power}, {"terms", f.terms.size()}});
    for (const auto& [alpha, c] : f.terms) out.push_back(term_record(alpha, c));
  }
  return out;
}

HomoPoly poly_from_records(const std::vector<json>& records, std::size_t& pos) {
  const json& header = record_at(records, pos++);
  if (!header.contains("n") || !header.contains("degree")) throw DomainError("missing polynomial header");
  if (header.value("format_version", kFormatVersion) != kFormatVersion)
    throw DomainError("unsupported polynomial format version");
  const int nvars = header.at("n").get<int>() + 1;
  const long long degree = header.at("degree").get<long long>();
  if (degree < 0) return HomoPoly::zero(nvars);

  HomoPoly p(nvars);
  if (!header.contains("factors")) {
    const std::size_t count = header.contains("terms") ? header.at("terms").get<std::size_t>() : records.size() - pos;
    p = HomoPoly::from_terms(nvars, read_terms(records, pos, count));
  } else {
    p = HomoPoly::constant(nvars, 1.0);
    const auto nf = header.at("factors").get<std::size_t>();
    for (std::size_t i = 0; i < nf; ++i) {
      const json& fh = record_at(records, pos++);
      const auto power = fh.at("power").get<long long>();
      const auto count = fh.at("terms").get<std::size_t>();
      const HomoPoly f = HomoPoly::from_terms(nvars, read_terms(records, pos, count));
      if (f.degree() != fh.at("degree").get<long long>()) throw DomainError("factor degree mismatch");
      p = p * f.pow(power);
    }
    p = p.scaled_log(header.value("log_scale", 0.0)).scaled(std::polar(1.0, header.value("phase", 0.0)));
  }
  if (p.degree() != degree) throw DomainError("polynomial header degree does not match its terms");
  return p;
}

void write_poly(std::ostream& os, const HomoPoly& p) {
  for (const auto& r : poly_to_records(p)) os << r.dump() << '\n';
}

HomoPoly read_poly(std::istream& is) {
  const auto records = read_json_lines(is);
  std::size_t pos = 0;
  return poly_from_records(records, pos);
}

json point_to_json(const ProjPoint& z) {
  json arr = json::array();
  for (const auto& c : z.coords()) arr.push_back(json::array({c.real(), c.imag()}));
  return arr;
}

ProjPoint point_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("point must be a nonempty array");
  CVec v;
  for (const auto& e : j) {
    if (e.is_array()) {
      if (e.size() != 2) throw DomainError("complex coordinate must be a [re, im] pair");
      v.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      v.emplace_back(e.get<double>(), 0.0);
    }
  }
  return ProjPoint(std::move(v));
}

ProjPoint parse_point(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("cannot parse point: ") + e.what());
  }
  return point_from_json(j);
}

std::vector<json> read_json_lines(std::istream& is) {
  std::vector<json> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw DomainError(std::string("malformed JSON line: ") + e.what());
    }
  }
  return out;
}

}  // namespace plurikit
