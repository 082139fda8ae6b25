#include "plurikit/series.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>

#include "plurikit/brackets.hpp"
#include "plurikit/errors.hpp"
#include "plurikit/parallel.hpp"
#include "plurikit/poly_io.hpp"

namespace plurikit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Least-squares slope of ys against xs; 0 with fewer than two points.
double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

std::vector<cplx> cell_centers(const GridRegion& r, int stride) {
  std::vector<cplx> out;
  const CellBox b = r.bbox();
  if (b.empty()) return out;
  for (int j = b.j0; j <= b.j1; j += stride) {
    for (int i = b.i0; i <= b.i1; i += stride) {
      if (r.test(i, j)) out.push_back(r.center(i, j));
    }
  }
  return out;
}

}  // namespace

// ---- FormalSeries -----------------------------------------------------------

void FormalSeries::push_back(long long degree, HomoPoly p) {
  if (p.nvars() != nvars_) throw DomainError("component has the wrong number of variables");
  if (!p.is_zero() && p.degree() != degree) throw DomainError("component degree does not match its polynomial");
  if (degree < 0) throw DomainError("component degree must be nonnegative");
  if (!components_.empty() && degree <= components_.back().first)
    throw DomainError("component degrees must strictly increase");
  components_.emplace_back(degree, std::move(p));
}

bool FormalSeries::all_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.second.is_zero(); });
}

// ---- Hartogs test -----------------------------------------------------------

HartogsResult hartogs_global_test(const FormalSeries& f, int cap) {
  if (f.empty() || f.all_zero()) throw DomainError("series has no nonzero components");
  if (f.size() < 8) throw DomainError("need at least 8 components");
  HartogsResult res;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> xs, ys;
  for (const auto& [deg, p] : f.components()) {
    if (p.is_zero()) {
      res.c.push_back(nan);
      continue;
    }
    if (deg > cap) {
      res.c.push_back(nan);
      ++res.skipped;
      continue;
    }
    double best = kNegInf;
    for (const auto& [alpha, a] : p.expand(cap)) {
      if (std::abs(a) == 0.0) continue;
      best = std::max(best, std::log(std::abs(a)) / (multi_index_degree(alpha) + 1.0));
    }
    const double cj = std::exp(best);
    res.c.push_back(cj);
    res.witness_c = std::max(res.witness_c, cj);
    if (best != kNegInf) {
      xs.push_back(std::log(deg + 1.0));
      ys.push_back(best);
    }
  }
  const std::size_t tail = xs.size() / 2;
  res.tail_slope = ls_slope(std::vector<double>(xs.begin() + tail, xs.end()),
                            std::vector<double>(ys.begin() + tail, ys.end()));
  res.converges_estimate = res.tail_slope <= 0.5;
  return res;
}

std::vector<std::pair<long long, double>> restrict_direction(const FormalSeries& f, const ProjPoint& Z) {
  std::vector<std::pair<long long, double>> out;
  out.reserve(f.size());
  for (const auto& [deg, p] : f.components()) {
    out.emplace_back(deg, p.is_zero() ? kNegInf : p.eval_log(Z.coords()).logmag);
  }
  return out;
}

// ---- membership ---------------------------------------------------------------

std::string to_string(Membership m) {
  switch (m) {
    case Membership::in:
      return "in";
    case Membership::out:
      return "out";
    case Membership::undecided:
      return "undecided";
  }
  return "undecided";
}

DirectionVerdict conv_membership(const FormalSeries& f, const ProjPoint& Z, const VerdictConfig& cfg) {
  if (f.empty()) throw DomainError("series is empty");
  if (static_cast<int>(Z.nvars()) != f.nvars()) throw DomainError("point dimension does not match the series");
  DirectionVerdict v;
  double log_sup = kNegInf;
  std::vector<double> logs;
  for (const auto& comp : f.components()) {
    const double l = comp.second.is_zero() ? kNegInf : log_bracket(comp.second, Z);
    logs.push_back(l);
    log_sup = std::max(log_sup, l);
  }
  v.sup_seen = std::exp(log_sup);
  std::vector<double> xs, ys;
  for (std::size_t l = logs.size() / 2; l < logs.size(); ++l) {
    if (logs[l] == kNegInf) continue;
    xs.push_back(static_cast<double>(l));
    ys.push_back(logs[l]);
  }
  v.growth_slope = ls_slope(xs, ys);
  if (v.sup_seen > cfg.threshold * (1.0 + 1e-9) || v.growth_slope > cfg.slope_out)
    v.status = Membership::out;
  else if (v.growth_slope <= cfg.slope_in)
    v.status = Membership::in;
  else
    v.status = Membership::undecided;
  return v;
}

std::vector<DirectionVerdict> conv_membership_batch(const FormalSeries& f, const std::vector<ProjPoint>& Zs,
                                                    const VerdictConfig& cfg, int jobs) {
  std::vector<DirectionVerdict> out(Zs.size());
  parallel_for(Zs.size(), jobs, [&](std::size_t i) { out[i] = conv_membership(f, Zs[i], cfg); });
  return out;
}

// ---- main construction ----------------------------------------------------------

std::vector<ProjPoint> sphere_cover(int nvars, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<ProjPoint> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    CVec v(nvars);
    for (auto& x : v) x = cplx(g(rng), g(rng));
    out.emplace_back(std::move(v));
  }
  return out;
}

CoverSchedule default_cover_schedule(int nvars, std::size_t per_level, std::uint64_t seed) {
  return [=](int k, const SampledSet&) { return sphere_cover(nvars, per_level * k, task_seed(seed, k)); };
}

SeriesBuild build_series_main(const std::vector<SampledSet>& K_list, const CoverSchedule& cover, int k_max,
                              const SearchBudget& budget, const SeriesBuildOptions& opts) {
  if (k_max < 2) throw DomainError("k_max must be at least 2");
  int nvars = 0;
  for (const auto& K : K_list) {
    if (K.empty()) continue;
    if (nvars != 0 && K.nvars() != nvars) throw DomainError("sample sets have different dimensions");
    nvars = K.nvars();
  }
  for (const auto& p : opts.probes) {
    if (nvars != 0 && static_cast<int>(p.nvars()) != nvars) throw DomainError("probe dimension mismatch");
    nvars = static_cast<int>(p.nvars());
  }

  SeriesBuild out;
  SeriesReport& rep = out.report;
  for (int k = 2; k <= k_max; ++k) {
    std::vector<ProjPoint> pts;
    const std::size_t jmax = std::min<std::size_t>(k, K_list.size());
    for (std::size_t j = 0; j < jmax; ++j) {
      pts.insert(pts.end(), K_list[j].points().begin(), K_list[j].points().end());
      for (const auto& probe : opts.probes) {
        if (K_list[j].empty() || K_list[j].contains(probe)) continue;
        SearchBudget local = budget;
        local.seed = task_seed(budget.seed, 1000003ULL * k + j);
        if (!refute_hull_level(K_list[j], probe, k, local)) pts.push_back(probe);
      }
    }
    const SampledSet E(std::move(pts));

    std::vector<ProjPoint> X;
    for (auto& x : cover(k, E)) {
      if (nvars == 0) nvars = static_cast<int>(x.nvars());
      if (E.empty() || E.min_distance(x) > opts.cover_clearance) X.push_back(std::move(x));
    }
    SearchBudget local = budget;
    local.seed = task_seed(budget.seed, static_cast<std::uint64_t>(k));
    LevelReport lr;
    lr.k = k;
    lr.e_size = E.size();
    lr.cover_size = X.size();
    std::vector<Certificate> certs(X.size());
    if (opts.certificates == SeriesCertificates::property_j) {
      HkjSystem sys = build_hkj_system(E, X, k, opts.eta, local);
      lr.beta = sys.beta.value();
      lr.eps = sys.eps;
      certs = std::move(sys.certs);
    } else {
      lr.beta = std::log(0.5 * k);
      lr.eps = std::numeric_limits<double>::quiet_NaN();
      parallel_for(X.size(), budget.jobs, [&](std::size_t i) {
        SearchBudget task = local;
        task.seed = task_seed(local.seed, i);
        task.jobs = 1;
        auto c = refute_level(E, X[i], 1, lr.beta, task);
        if (c) {
          certs[i] = std::move(*c);
        } else {
          certs[i].status = CertStatus::failed;
        }
      });
    }
    for (std::size_t i = 0; i < certs.size(); ++i) {
      const Certificate& c = certs[i];
      if (c.status == CertStatus::ok) {
        ++lr.certified;
        if (!(c.point_val > 0.5 * k)) rep.every_cover_witnessed = false;
        rep.certificates.push_back(c);
      } else {
        lr.failed_points.push_back(X[i]);
      }
    }
    if (!lr.failed_points.empty())
      rep.warnings.push_back("level " + std::to_string(k) + ": " + std::to_string(lr.failed_points.size()) +
                             " of " + std::to_string(X.size()) + " cover points uncertified");
    rep.levels.push_back(std::move(lr));
  }

  if (nvars == 0) nvars = 2;
  out.series = FormalSeries(nvars);
  long long prev = -1;
  for (const auto& c : rep.certificates) {
    const long long d = c.poly.degree();
    const long long m = d > prev ? 1 : prev / d + 1;
    rep.exponents.push_back(m);
    out.series.push_back(c.poly.pow(m));
    prev = d * m;
  }

  // In-set pattern: a sample of K_j is bounded by k before it enters E_k and by k^-beta after.
  for (std::size_t j = 0; j < K_list.size(); ++j) {
    for (const auto& z : K_list[j].points()) {
      double sup = 0.0;
      double bound = 0.0;
      std::size_t idx = 0;
      for (const auto& lr : rep.levels) {
        const bool inside = j + 1 <= static_cast<std::size_t>(lr.k);
        const bool pj = opts.certificates == SeriesCertificates::property_j;
        const double lb = inside ? (pj ? std::pow(lr.k, -lr.beta) : 1.0)
                                 : (pj ? lr.k : std::numeric_limits<double>::infinity());
        for (std::size_t c = 0; c < lr.certified; ++c, ++idx) {
          sup = std::max(sup, std::exp(log_bracket_upper(rep.certificates[idx].poly, z.coords())));
          bound = std::max(bound, lb);
        }
      }
      rep.in_sample_sup = std::max(rep.in_sample_sup, sup);
      rep.in_bound = std::max(rep.in_bound, bound);
      if (sup > bound * (1.0 + 1e-9)) rep.in_bound_holds = false;
    }
  }
  return out;
}

// ---- Gamma pipeline -------------------------------------------------------------

ProjPoint gamma_point(cplx z, const GammaSpec& spec) {
  const cplx lp = spec.log_psi(z);
  const double l1 = std::abs(z) > 0.0 ? std::log(std::abs(z)) : kNegInf;
  const double top = std::max({0.0, l1, lp.real()});
  CVec v{std::exp(-top), l1 == kNegInf ? cplx(0.0) : std::polar(std::exp(l1 - top), std::arg(z)),
         std::polar(std::exp(lp.real() - top), lp.imag())};
  return ProjPoint(std::move(v));
}

GammaReport gamma_pipeline(const GammaSpec& spec, int k_max, const SearchBudget& budget, const GammaOptions& opts) {
  GammaReport rep;
  if (spec.W.empty()) return rep;
  rep.empty = false;
  rep.construction = prop1016_construct(spec.W, k_max);
  const auto& traces = rep.construction.traces;
  for (const auto& row : rep.construction.excess) {
    if (row.excess_area > rep.construction.shell_area) rep.cover_hypothesis_holds = false;
  }

  auto gamma_set = [&](const std::vector<cplx>& zs, Provenance prov) {
    std::vector<ProjPoint> pts;
    pts.reserve(zs.size());
    for (const auto& z : zs) pts.push_back(gamma_point(z, spec));
    return SampledSet(std::move(pts), prov);
  };

  std::vector<SampledSet> K_list;
  for (const auto& tr : traces) {
    K_list.push_back(gamma_set(cell_centers(tr.F, opts.sample_stride), Provenance::gamma_graph));
    rep.e_sizes.push_back(K_list.back().size());
  }
  std::vector<std::vector<ProjPoint>> covers(k_max + 1);
  for (int k = 1; k <= k_max; ++k) {
    const GridRegion outside = traces[k - 1].V.complement();
    std::vector<ProjPoint> pts = gamma_set(cell_centers(outside, opts.cover_stride), Provenance::gamma_graph).points();
    const auto extra = sphere_cover(3, opts.sphere_points, task_seed(budget.seed, 7919ULL + k));
    pts.insert(pts.end(), extra.begin(), extra.end());
    rep.cover_sizes.push_back(pts.size());
    covers[k] = std::move(pts);
  }
  const CoverSchedule schedule = [&](int k, const SampledSet&) { return covers[k]; };
  rep.build = build_series_main(K_list, schedule, k_max, budget, opts.series);
  rep.samples = std::move(K_list);
  return rep;
}

// ---- IO -----------------------------------------------------------------------------

void write_series(std::ostream& os, const FormalSeries& f, const nlohmann::json& extra) {
  nlohmann::json head = {{"format_version", kFormatVersion}, {"kind", "series"}, {"n", f.nvars() - 1},
                         {"truncation", f.size()}};
  for (const auto& [key, val] : extra.items()) head[key] = val;
  os << head.dump() << '\n';
  std::size_t l = 0;
  for (const auto& [deg, p] : f.components()) {
    os << nlohmann::json{{"component", l++}, {"degree", deg}}.dump() << '\n';
    write_poly(os, p);
  }
}

FormalSeries read_series(std::istream& is) {
  const std::vector<nlohmann::json> recs = read_json_lines(is);
  if (recs.empty() || recs[0].value("kind", "") != "series") throw DomainError("not a series file");
  if (recs[0].value("format_version", 0) != kFormatVersion) throw DomainError("unsupported series format version");
  const int n = recs[0].at("n").get<int>();
  const std::size_t T = recs[0].at("truncation").get<std::size_t>();
  FormalSeries f(n + 1);
  std::size_t pos = 1;
  for (std::size_t l = 0; l < T; ++l) {
    if (pos >= recs.size() || !recs[pos].contains("component")) throw DomainError("truncated series file");
    const long long deg = recs[pos].at("degree").get<long long>();
    ++pos;
    f.push_back(deg, poly_from_records(recs, pos));
  }
  return f;
}

nlohmann::json verdict_to_json(const ProjPoint& Z, const DirectionVerdict& v) {
  return {{"Z", point_to_json(Z)},
          {"status", to_string(v.status)},
          {"sup_seen", v.sup_seen},
          {"growth_slope", v.growth_slope}};
}

}  // namespace plurikit
