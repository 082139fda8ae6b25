#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "plurikit/brackets.hpp"
#include "plurikit/certificates.hpp"
#include "plurikit/errors.hpp"
#include "plurikit/poly_io.hpp"

namespace plurikit {

namespace {

using Key = std::vector<long long>;

Key rounded_key(const ProjPoint& z) {
  Key k;
  for (const auto& c : z.coords()) {
    k.push_back(std::llround(c.real() * 1e9));
    k.push_back(std::llround(c.imag() * 1e9));
  }
  return k;
}

double nan_or(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.at(key).get<double>();
}

nlohmann::json num_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

// Direct complex evaluation of one factor, kept separate from the log-domain evaluator.
// With slack > 0 the rounding allowance of log_bracket_upper is added.
double direct_log_abs(const Factor& f, std::span<const cplx> z, double slack) {
  cplx acc = 0.0;
  double mag = 0.0;
  for (const auto& [alpha, c] : f.terms) {
    cplx m = c;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      for (int e = 0; e < alpha[i]; ++e) m *= z[i];
    }
    acc += m;
    mag += std::abs(m);
  }
  return std::log(std::abs(acc) + slack * static_cast<double>(f.terms.size() + f.degree) * mag);
}

double direct_log_bracket(const HomoPoly& p, std::span<const cplx> z, double slack = 0.0) {
  if (p.degree() == 0) return p.log_scale();
  double nz = 0.0;
  for (const auto& c : z) nz += std::norm(c);
  double acc = p.log_scale();
  for (const auto& f : p.factors()) acc += static_cast<double>(f.power) * direct_log_abs(f, z, slack);
  return acc / static_cast<double>(p.degree()) - 0.5 * std::log(nz);
}

bool close(double stored, double fresh, double tol) {
  if (stored == fresh) return true;
  return std::abs(stored - fresh) <= tol * std::max(1.0, std::abs(fresh));
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::planar_grid:
      return "planar-grid";
    case Provenance::gamma_graph:
      return "gamma-graph";
    case Provenance::explicit_points:
      return "explicit";
  }
  return "explicit";
}

std::string to_string(CertKind k) {
  switch (k) {
    case CertKind::q_bound:
      return "q_bound";
    case CertKind::property_j:
      return "property_j";
    case CertKind::refutation:
      return "refutation";
    case CertKind::hkj:
      return "hkj";
  }
  return "q_bound";
}

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::ok:
      return "ok";
    case CertStatus::fallback:
      return "fallback";
    case CertStatus::failed:
      return "failed";
  }
  return "failed";
}

SampledSet::SampledSet(std::vector<ProjPoint> points, Provenance provenance) : provenance_(provenance) {
  std::map<Key, std::vector<std::size_t>> seen;
  for (auto& z : points) {
    if (!points_.empty() && z.nvars() != points_.front().nvars())
      throw DomainError("sample points have different dimensions");
    auto& bucket = seen[rounded_key(z)];
    bool dup = false;
    for (std::size_t idx : bucket) dup = dup || points_[idx] == z;
    if (dup) continue;
    bucket.push_back(points_.size());
    points_.push_back(std::move(z));
  }
}

SampledSet SampledSet::from_planar(const std::vector<cplx>& zs) {
  std::vector<ProjPoint> pts;
  pts.reserve(zs.size());
  for (const auto& z : zs) pts.emplace_back(CVec{1.0, z});
  return SampledSet(std::move(pts), Provenance::planar_grid);
}

SampledSet SampledSet::from_region(const GridRegion& r, int stride) {
  if (stride < 1) throw DomainError("stride must be positive");
  std::vector<cplx> zs;
  const CellBox b = r.bbox();
  for (int j = b.j0; j <= b.j1 && !b.empty(); j += stride) {
    for (int i = b.i0; i <= b.i1; i += stride) {
      if (r.test(i, j)) zs.push_back(r.center(i, j));
    }
  }
  return from_planar(zs);
}

double SampledSet::min_distance(const ProjPoint& z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points_) {
    if (p.nvars() != z.nvars()) throw DomainError("point dimension does not match the sample set");
    best = std::min(best, p.fs_distance(z));
  }
  return best;
}

SampledSet SampledSet::merged(const SampledSet& other) const {
  std::vector<ProjPoint> pts = points_;
  pts.insert(pts.end(), other.points_.begin(), other.points_.end());
  return SampledSet(std::move(pts), provenance_ == other.provenance_ ? provenance_ : Provenance::explicit_points);
}

Verification reverify(const Certificate& c, const SampledSet* K, double tol) {
  auto fail = [](std::string why) { return Verification{false, std::move(why)}; };
  if (c.poly.is_zero()) return fail("zero polynomial");
  const GlobalBound gb = certified_global_sup(c.poly);
  if (!close(c.global_sup, gb.value(), tol)) return fail("global bound mismatch");
  const double pv = std::exp(direct_log_bracket(c.poly, c.point.coords()));
  if (!close(c.point_val, pv, tol)) return fail("point value mismatch");
  if (pv > gb.value() * (1.0 + tol) + tol) return fail("point value exceeds the global bound");
  if (K) {
    double ls = -std::numeric_limits<double>::infinity();
    // The stored set norm carries a larger rounding allowance, so it must dominate.
    for (const auto& s : K->points())
      ls = std::max(ls, direct_log_bracket(c.poly, s.coords(), 0.25 * kRoundingSlack));
    const double fresh = K->empty() ? 0.0 : std::exp(ls);
    if (fresh > c.set_sup * (1.0 + tol)) return fail("set sup below re-evaluated value");
  }
  if (c.status == CertStatus::failed) return {};
  const CertParams& p = c.params;
  const double g = c.global_sup;
  const double s = c.set_sup;
  const double v = c.point_val;
  switch (c.kind) {
    case CertKind::q_bound:
      if (g > 1.0 + tol) return fail("<p> exceeds 1");
      if (s > p.t * (1.0 + tol)) return fail("<p>_K exceeds t");
      break;
    case CertKind::property_j:
      if (g > 1.0 + tol) return fail("<p> exceeds 1");
      if (s > p.eps * (1.0 + tol) + (p.eps == 0.0 ? tol : 0.0)) return fail("<p>_K exceeds eps");
      if (!(v > p.eta)) return fail("<p(X)> does not exceed eta");
      break;
    case CertKind::refutation: {
      const double level = std::isnan(p.level) ? p.m : p.level;
      const double rhs = std::exp(level) * std::pow(g, 1.0 - 1.0 / p.m) * std::pow(s, 1.0 / p.m);
      if (!(v > rhs * (1.0 + 1e-9))) return fail("refutation inequality fails");
      break;
    }
    case CertKind::hkj: {
      const double beta = static_cast<double>(p.beta_num) / p.beta_den;
      if (g > p.k * (1.0 + tol)) return fail("(ii) <h> exceeds k");
      if (s > std::pow(p.k, -beta) * (1.0 + tol) || !(s < 1.0)) return fail("(i) <h>_E exceeds k^-beta");
      if (!(v > 0.5 * p.k)) return fail("(iii) <h(X)> does not exceed k/2");
      break;
    }
  }
  return {};
}

void write_sampled_set(std::ostream& os, const SampledSet& K, const nlohmann::json& extra) {
  nlohmann::json head = {{"format_version", kFormatVersion}, {"kind", "sampled_set"}, {"n", K.nvars() - 1},
                         {"provenance", to_string(K.provenance())}, {"count", K.size()}};
  for (const auto& [key, val] : extra.items()) head[key] = val;
  os << head.dump() << '\n';
  for (const auto& z : K.points()) os << nlohmann::json{{"point", point_to_json(z)}}.dump() << '\n';
}

SampledSet read_sampled_set(std::istream& is) {
  const auto recs = read_json_lines(is);
  if (recs.empty() || recs[0].value("kind", "") != "sampled_set") throw DomainError("not a sampled-set file");
  if (recs[0].value("format_version", 0) != kFormatVersion) throw DomainError("unsupported sampled-set format version");
  const std::size_t count = recs[0].at("count").get<std::size_t>();
  if (recs.size() != count + 1) throw DomainError("sampled-set point count does not match the header");
  const std::string prov = recs[0].value("provenance", "explicit");
  Provenance p = Provenance::explicit_points;
  for (Provenance q : {Provenance::planar_grid, Provenance::gamma_graph, Provenance::explicit_points}) {
    if (to_string(q) == prov) p = q;
  }
  std::vector<ProjPoint> pts;
  for (std::size_t i = 1; i < recs.size(); ++i) pts.push_back(point_from_json(recs[i].at("point")));
  return SampledSet(std::move(pts), p);
}

nlohmann::json certificate_to_json(const Certificate& c) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = to_string(c.kind);
  j["status"] = to_string(c.status);
  j["poly"] = poly_to_records(c.poly);
  j["point"] = point_to_json(c.point);
  j["global_sup"] = c.global_sup;
  j["global_exact"] = c.global_exact;
  j["set_sup"] = c.set_sup;
  j["set_sup_semantics"] = "sampled lower bound";
  j["point_val"] = c.point_val;
  j["params"] = {{"eta", num_or_null(c.params.eta)}, {"eps", num_or_null(c.params.eps)},
                 {"t", num_or_null(c.params.t)},     {"k", c.params.k},
                 {"m", c.params.m},                  {"level", num_or_null(c.params.level)}, {"beta", {c.params.beta_num, c.params.beta_den}}};
  j["seed"] = c.seed;
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate c;
  const std::string kind = j.at("kind").get<std::string>();
  const std::string status = j.at("status").get<std::string>();
  for (CertKind k : {CertKind::q_bound, CertKind::property_j, CertKind::refutation, CertKind::hkj}) {
    if (to_string(k) == kind) c.kind = k;
  }
  for (CertStatus s : {CertStatus::ok, CertStatus::fallback, CertStatus::failed}) {
    if (to_string(s) == status) c.status = s;
  }
  const auto records = j.at("poly").get<std::vector<nlohmann::json>>();
  std::size_t pos = 0;
  c.poly = poly_from_records(records, pos);
  c.point = point_from_json(j.at("point"));
  c.global_sup = j.at("global_sup").get<double>();
  c.global_exact = j.value("global_exact", false);
  c.set_sup = j.at("set_sup").get<double>();
  c.point_val = j.at("point_val").get<double>();
  const auto& p = j.at("params");
  c.params.eta = nan_or(p, "eta");
  c.params.eps = nan_or(p, "eps");
  c.params.t = nan_or(p, "t");
  c.params.k = p.value("k", 0);
  c.params.m = p.value("m", 0);
  c.params.level = nan_or(p, "level");
  if (p.contains("beta")) {
    c.params.beta_num = p.at("beta")[0].get<int>();
    c.params.beta_den = p.at("beta")[1].get<int>();
  }
  c.seed = j.value("seed", std::uint64_t{0});
  const Verification v = reverify(c);
  if (!v.ok) throw DomainError("certificate fails re-verification on load: " + v.reason);
  return c;
}

}  // namespace plurikit
