#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "plurikit/brackets.hpp"
#include "plurikit/certificates.hpp"
#include "plurikit/errors.hpp"
#include "plurikit/parallel.hpp"
#include "plurikit/planar.hpp"
#include "plurikit/poly_io.hpp"
#include "plurikit/radial.hpp"
#include "plurikit/series.hpp"

using namespace plurikit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitBudget = 3;
constexpr int kExitUsage = 64;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Run {
  std::string command;
  std::uint64_t seed = 0x5eedULL;
  std::string hash;

  nlohmann::json meta() const {
    return {{"format_version", kFormatVersion}, {"command", command}, {"seed", seed}, {"config_hash", hash}};
  }
  std::string csv_banner() const {
    return "# format_version=" + std::to_string(kFormatVersion) + " command=" + command +
           " seed=" + std::to_string(seed) + " config_hash=" + hash + "\n";
  }
};

// Output target: a file when a path is given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open input file " + path);
  return in;
}

GridRegion load_region(const std::string& path) {
  auto in = open_in(path);
  return read_region(in);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// A sample set from a sampled-set file, or iota of a region's cells for .rgn inputs.
SampledSet load_set(const std::string& path, int stride) {
  if (ends_with(path, ".rgn")) return SampledSet::from_region(load_region(path), stride);
  auto in = open_in(path);
  return read_sampled_set(in);
}

struct Common {
  std::uint64_t seed = 0x5eedULL;
  int jobs = 1;
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "master seed (overridden by PLURIKIT_SEED)")->capture_default_str();
  sub->add_option("--jobs", c.jobs, "worker threads; outputs do not depend on it")->capture_default_str();
  sub->add_option("--out", c.out, "output path (stdout when omitted)");
}

struct BudgetFlags {
  int degree_cap = 64;
  int ascent_steps = 2000;
  int stride = 1;
};

void add_budget(CLI::App* sub, BudgetFlags& b) {
  sub->add_option("--degree-cap", b.degree_cap, "maximum certificate degree")->capture_default_str();
  sub->add_option("--ascent-steps", b.ascent_steps, "coefficient ascent steps")->capture_default_str();
  sub->add_option("--stride", b.stride, "cell stride when a sample set is read from a region")->capture_default_str();
}

SearchBudget make_budget(const BudgetFlags& b, const Common& c) {
  SearchBudget s;
  s.degree_cap = b.degree_cap;
  s.ascent_steps = b.ascent_steps;
  s.seed = c.seed;
  s.jobs = c.jobs;
  return s;
}

// Canonical description of the parsed subcommand; output paths and job counts excluded.
std::string config_string(const CLI::App* sub, std::uint64_t seed) {
  std::string s = sub->get_name();
  for (const CLI::Option* o : sub->get_options()) {
    const std::string name = o->get_name();
    if (name == "--out" || name == "--jobs" || name == "--seed" || name == "--help" || name == "--report") continue;
    s += ";" + name + "=";
    for (const auto& r : o->results()) s += r + ",";
  }
  return s + ";seed=" + std::to_string(seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plurikit: extremal functions, polynomial hulls, certificates and convergence sets"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 success, 2 domain error, 3 budget exhausted (partial output written), 64 usage.\n"
      "PLURIKIT_SEED overrides --seed. Every output embeds format_version, seed and config_hash.");

  Common common;
  BudgetFlags bflags;
  double rho = 1.0, s = 0.0, eta = 0.9, eps = 1e-3, t = 0.5, radius = 0.0, threshold = 1.0;
  double slope_in = 0.25, slope_out = 1.0;
  std::vector<double> rs;
  int nproj = 2, grid = 4096, kmax = 6, m = 1, count = 20, sample_stride = 8, cover_stride = 16;
  double end = std::nan("");
  double rho_min = 0.5, rho_max = 2.0;
  std::size_t cover_per_level = 8, sphere_points = 0;
  std::string in, series_path, report_path, table_path, point_text, points_file;
  std::vector<std::string> ins, sets, points;

  auto* eb = app.add_subcommand("extremal-ball", "sigma* for the ball of radius rho in P^1 (CSV)");
  eb->add_option("--rho", rho, "ball radius")->capture_default_str();
  eb->add_option("--s", s, "depth s >= 0")->required();
  eb->add_option("--r", rs, "moduli |z| (repeatable)")->required();
  add_common(eb, common);

  auto* lt = app.add_subcommand("lambda-table", "lambda(rho, s) on a grid of the small-s regime (CSV)");
  lt->add_option("--rho-min", rho_min, "smallest rho")->capture_default_str();
  lt->add_option("--rho-max", rho_max, "largest rho")->capture_default_str();
  lt->add_option("--count", count, "grid points per axis")->capture_default_str();
  add_common(lt, common);

  auto* ec = app.add_subcommand("envelope-check", "convex-envelope oracle against the closed form (CSV)");
  ec->add_option("--rho", rho, "ball radius")->capture_default_str();
  ec->add_option("--s", s, "depth s")->required();
  ec->add_option("--grid", grid, "grid size (>= 64)")->capture_default_str();
  ec->add_option("--end", end, "grid end T (default max(lambda + 3, log rho + 6))");
  ec->add_option("--table", table_path, "also write t,w,v to this CSV");
  add_common(ec, common);

  auto* hu = app.add_subcommand("hull", "polynomial hull of a region");
  hu->add_option("--in", in, "input region")->required();
  add_common(hu, common);

  auto* di = app.add_subcommand("dilate", "closed r-neighborhood of a region");
  di->add_option("--in", in, "input region")->required();
  di->add_option("--radius", radius, "radius r")->required();
  add_common(di, common);

  auto* pc = app.add_subcommand("prop1016", "ascending construction F_k, V_k (JSON lines)");
  pc->add_option("--in", ins, "regions W_1, W_2, ... in order (repeatable)")->required();
  pc->add_option("--kmax", kmax, "largest k")->capture_default_str();
  pc->add_option("--seed", common.seed, "master seed (overridden by PLURIKIT_SEED)")->capture_default_str();
  pc->add_option("--jobs", common.jobs, "worker threads; outputs do not depend on it")->capture_default_str();
  pc->add_option("--out", common.out, "trace directory: trace.jsonl, F<k>.rgn, V<k>.rgn (stdout trace when omitted)");

  auto* cj = app.add_subcommand("certify-j", "Property J certificate at X (JSON)");
  cj->add_option("--set", in, "sample set (.jsonl) or region (.rgn)")->required();
  cj->add_option("--point", point_text, "X as [re,...] or [[re,im],...]")->required();
  cj->add_option("--eta", eta, "eta in (0,1)")->capture_default_str();
  cj->add_option("--eps", eps, "eps >= 0")->capture_default_str();
  add_budget(cj, bflags);
  add_common(cj, common);

  auto* qb = app.add_subcommand("q-bound", "lower bound certificate for Q_{K,Z}(t) (JSON)");
  qb->add_option("--set", in, "sample set (.jsonl) or region (.rgn)")->required();
  qb->add_option("--point", point_text, "Z")->required();
  qb->add_option("--t", t, "t in (0,1]")->capture_default_str();
  add_budget(qb, bflags);
  add_common(qb, common);

  auto* rl = app.add_subcommand("refute-level", "certificate that Z lies outside K^(m) (JSON)");
  rl->add_option("--set", in, "sample set (.jsonl) or region (.rgn)")->required();
  rl->add_option("--point", point_text, "Z")->required();
  rl->add_option("--m", m, "level m >= 1")->capture_default_str();
  add_budget(rl, bflags);
  add_common(rl, common);

  auto* bs = app.add_subcommand("build-series", "main construction from sample sets K_1, K_2, ...");
  bs->add_option("--set", sets, "sample sets in order (repeatable, may be empty)");
  bs->add_option("--n", nproj, "projective dimension when no set is given")->capture_default_str();
  bs->add_option("--kmax", kmax, "largest k")->capture_default_str();
  bs->add_option("--cover-per-level", cover_per_level, "cover points per unit of k")->capture_default_str();
  bs->add_option("--eta", eta, "eta in (0,1)")->capture_default_str();
  bs->add_option("--report", report_path, "JSON report path");
  add_budget(bs, bflags);
  add_common(bs, common);

  auto* tc = app.add_subcommand("test-convergence", "membership verdicts of directions (JSON lines)");
  tc->add_option("--series", series_path, "series file")->required();
  tc->add_option("--point", points, "direction (repeatable)")->allow_extra_args(false);
  tc->add_option("--points", points_file, "file with one point per line");
  tc->add_option("--threshold", threshold, "bracket threshold")->capture_default_str();
  tc->add_option("--slope-in", slope_in, "largest tail slope for in")->capture_default_str();
  tc->add_option("--slope-out", slope_out, "tail slope above which the verdict is out")->capture_default_str();
  add_common(tc, common);

  auto* gp = app.add_subcommand("gamma-pipeline", "Gamma pipeline for W_1, W_2, ... with psi = exp");
  gp->add_option("--in", ins, "regions W_j in order (repeatable)");
  gp->add_option("--kmax", kmax, "largest k")->capture_default_str();
  gp->add_option("--sample-stride", sample_stride, "cell stride of E_k samples")->capture_default_str();
  gp->add_option("--cover-stride", cover_stride, "cell stride of cover points")->capture_default_str();
  gp->add_option("--sphere-points", sphere_points, "extra P^2 cover points per level")->capture_default_str();
  gp->add_option("--report", report_path, "JSON report path");
  add_budget(gp, bflags);
  add_common(gp, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (const char* env = std::getenv("PLURIKIT_SEED")) {
    try {
      common.seed = std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      std::cerr << "PLURIKIT_SEED is not an integer\n";
      return kExitUsage;
    }
  }
  const CLI::App* sub = app.get_subcommands().front();
  Run run{sub->get_name(), common.seed, hex64(fnv1a(config_string(sub, common.seed)))};

  try {
    if (sub == eb) {
      Output out(common.out);
      out.os() << run.csv_banner() << "rho,s,r,sigma_star,branch,lambda\n";
      for (double r : rs) {
        const SigmaValue v = sigma_star_ball_detail({rho, s, r});
        out.os() << num(rho) << ',' << num(s) << ',' << num(r) << ',' << num(v.value) << ',' << v.branch << ','
                 << (v.lambda && (v.branch == 2) ? num(*v.lambda) : "") << '\n';
      }
      return kExitOk;
    }
    if (sub == lt) {
      if (count < 1) throw DomainError("count must be positive");
      Output out(common.out);
      out.os() << run.csv_banner() << "rho,s,lambda,residual,dlambda_drho\n";
      for (int i = 0; i < count; ++i) {
        const double r = count == 1 ? rho_min : rho_min + (rho_max - rho_min) * i / (count - 1);
        const double B = branch_threshold(r);
        for (int j = 0; j < count; ++j) {
          const double sj = B * (j + 0.5) / count;
          const double l = solve_lambda(r, sj);
          out.os() << num(r) << ',' << num(sj) << ',' << num(l) << ',' << num(lambda_residual(r, sj, l)) << ','
                   << num(dlambda_drho(r, sj, l)) << '\n';
        }
      }
      return kExitOk;
    }
    if (sub == ec) {
      const double T = std::isnan(end) ? default_envelope_end(rho, s) : end;
      const EnvelopeTable tab = convex_envelope_oracle(rho, s, grid, T);
      const double gap = envelope_gap(tab, rho, s);
      Output out(common.out);
      out.os() << run.csv_banner() << "rho,s,grid,end,gap\n"
               << num(rho) << ',' << num(s) << ',' << grid << ',' << num(T) << ',' << num(gap) << '\n';
      if (!table_path.empty()) {
        Output tf(table_path);
        tf.os() << run.csv_banner() << "t,w,v\n";
        for (std::size_t i = 0; i < tab.grid.size(); ++i)
          tf.os() << num(tab.grid[i]) << ',' << num(tab.w_values[i]) << ',' << num(tab.v_values[i]) << '\n';
      }
      return kExitOk;
    }
    if (sub == hu || sub == di) {
      const GridRegion r = load_region(in);
      const GridRegion res = sub == hu ? polynomial_hull(r) : neighborhood(r, radius);
      Output out(common.out);
      write_region(out.os(), res, run.seed, run.hash);
      return kExitOk;
    }
    if (sub == pc) {
      std::vector<GridRegion> W;
      for (const auto& p : ins) W.push_back(load_region(p));
      const Prop1016Report rep = prop1016_construct(W, kmax);
      std::string trace_path;
      if (!common.out.empty()) {
        std::filesystem::create_directories(common.out);
        trace_path = (std::filesystem::path(common.out) / "trace.jsonl").string();
      }
      Output out(trace_path);
      nlohmann::json head = run.meta();
      head["kind"] = "prop1016";
      out.os() << head.dump() << '\n';
      for (const auto& tr : rep.traces) {
        out.os() << nlohmann::json{{"k", tr.k}, {"F_area", tr.F.area()}, {"V_area", tr.V.area()},
                                   {"F_cells", tr.F.count()}}
                        .dump()
                 << '\n';
        if (!common.out.empty()) {
          const std::filesystem::path dir(common.out);
          Output f((dir / ("F" + std::to_string(tr.k) + ".rgn")).string());
          write_region(f.os(), tr.F, run.seed, run.hash);
          Output v((dir / ("V" + std::to_string(tr.k) + ".rgn")).string());
          write_region(v.os(), tr.V, run.seed, run.hash);
        }
      }
      nlohmann::json excess = nlohmann::json::array();
      for (const auto& row : rep.excess) excess.push_back({{"m", row.m}, {"area", row.excess_area}});
      out.os() << nlohmann::json{{"summary", true},
                                 {"ascending", rep.ascending},
                                 {"within_union", rep.within_union},
                                 {"hulls_idempotent", rep.hulls_idempotent},
                                 {"hull_equals_union_of_parts", rep.hull_equals_union_of_parts},
                                 {"parts_disjoint", rep.parts_disjoint},
                                 {"limit_k", rep.limit_k},
                                 {"limit_missing_cells", rep.limit_missing_cells},
                                 {"missing_at_kmax", rep.missing_at_kmax},
                                 {"shell_area", rep.shell_area},
                                 {"excess", excess}}
                      .dump()
               << '\n';
      return kExitOk;
    }
    if (sub == cj || sub == qb || sub == rl) {
      const SampledSet K = load_set(in, bflags.stride);
      const ProjPoint Z = parse_point(point_text);
      const SearchBudget budget = make_budget(bflags, common);
      nlohmann::json rec = run.meta();
      int code = kExitOk;
      if (sub == cj) {
        const Certificate c = property_j_certificate(K, Z, eta, eps, budget);
        rec["status"] = to_string(c.status);
        rec["certificate"] = certificate_to_json(c);
        if (c.status == CertStatus::failed) code = kExitBudget;
      } else if (sub == qb) {
        const Certificate c = q_lower_bound(K, Z, t, budget);
        rec["status"] = to_string(c.status);
        rec["certificate"] = certificate_to_json(c);
      } else {
        const auto c = refute_hull_level(K, Z, m, budget);
        rec["status"] = c ? "refuted" : "undecided";
        if (c) rec["certificate"] = certificate_to_json(*c);
        if (!c) code = kExitBudget;
      }
      Output out(common.out);
      out.os() << rec.dump() << '\n';
      return code;
    }
    if (sub == bs) {
      std::vector<SampledSet> K;
      for (const auto& p : sets) K.push_back(load_set(p, bflags.stride));
      int nvars = nproj + 1;
      for (const auto& k : K) {
        if (!k.empty()) {
          nvars = k.nvars();
          break;
        }
      }
      SeriesBuildOptions opts;
      opts.eta = eta;
      const SeriesBuild b =
          build_series_main(K, default_cover_schedule(nvars, cover_per_level, task_seed(run.seed, 1)), kmax,
                            make_budget(bflags, common), opts);
      const bool partial = !b.report.warnings.empty();
      nlohmann::json extra = run.meta();
      extra["status"] = partial ? "partial" : "ok";
      {
        Output out(common.out);
        write_series(out.os(), b.series, extra);
      }
      if (!report_path.empty()) {
        Output rep(report_path);
        nlohmann::json j = run.meta();
        j["status"] = extra["status"];
        j["in_sample_sup"] = b.report.in_sample_sup;
        j["in_bound"] = b.report.in_bound;
        j["in_bound_holds"] = b.report.in_bound_holds;
        j["every_cover_witnessed"] = b.report.every_cover_witnessed;
        j["warnings"] = b.report.warnings;
        j["exponents"] = b.report.exponents;
        nlohmann::json levels = nlohmann::json::array();
        for (const auto& l : b.report.levels)
          levels.push_back({{"k", l.k},
                            {"E_size", l.e_size},
                            {"cover", l.cover_size},
                            {"certified", l.certified},
                            {"beta", l.beta},
                            {"eps", l.eps}});
        j["levels"] = levels;
        rep.os() << j.dump() << '\n';
      }
      return partial ? kExitBudget : kExitOk;
    }
    if (sub == tc) {
      auto sin = open_in(series_path);
      const FormalSeries f = read_series(sin);
      std::vector<ProjPoint> Zs;
      for (const auto& p : points) Zs.push_back(parse_point(p));
      if (!points_file.empty()) {
        auto pin = open_in(points_file);
        std::string line;
        while (std::getline(pin, line)) {
          if (!line.empty() && line[0] != '#') Zs.push_back(parse_point(line));
        }
      }
      if (Zs.empty()) throw DomainError("no points given");
      const auto verdicts = conv_membership_batch(f, Zs, {threshold, slope_in, slope_out}, common.jobs);
      Output out(common.out);
      out.os() << run.meta().dump() << '\n';
      for (std::size_t i = 0; i < Zs.size(); ++i) out.os() << verdict_to_json(Zs[i], verdicts[i]).dump() << '\n';
      return kExitOk;
    }
    if (sub == gp) {
      GammaSpec spec;
      for (const auto& p : ins) spec.W.push_back(load_region(p));
      GammaOptions opts;
      opts.sample_stride = sample_stride;
      opts.cover_stride = cover_stride;
      opts.sphere_points = sphere_points;
      const GammaReport rep = gamma_pipeline(spec, kmax, make_budget(bflags, common), opts);
      nlohmann::json j = run.meta();
      j["empty"] = rep.empty;
      bool partial = false;
      if (rep.build) {
        partial = !rep.build->report.warnings.empty();
        j["e_sizes"] = rep.e_sizes;
        j["cover_sizes"] = rep.cover_sizes;
        j["cover_hypothesis_holds"] = rep.cover_hypothesis_holds;
        j["in_bound_holds"] = rep.build->report.in_bound_holds;
        j["warnings"] = rep.build->report.warnings;
        j["components"] = rep.build->series.size();
        nlohmann::json extra = run.meta();
        extra["status"] = partial ? "partial" : "ok";
        extra["psi"] = spec.psi_name;
        Output out(common.out);
        write_series(out.os(), rep.build->series, extra);
      }
      j["status"] = rep.empty ? "empty" : (partial ? "partial" : "ok");
      if (!report_path.empty()) {
        Output r(report_path);
        r.os() << j.dump() << '\n';
      } else if (!common.out.empty()) {
        std::cerr << j.dump() << '\n';
      }
      return partial ? kExitBudget : kExitOk;
    }
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "domain error: malformed input: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
