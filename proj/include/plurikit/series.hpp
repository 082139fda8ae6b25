#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "plurikit/certificates.hpp"
#include "plurikit/homo_poly.hpp"
#include "plurikit/planar.hpp"
#include "plurikit/proj_point.hpp"

namespace plurikit {

/// Truncated formal power series f = sum_l q_l held as homogeneous components of strictly
/// increasing degree. Zero components keep their declared degree.
class FormalSeries {
 public:
  explicit FormalSeries(int nvars = 2) : nvars_(nvars) {}
  /// Appends a component; throws DomainError unless degree exceeds the last one and matches p.
  void push_back(long long degree, HomoPoly p);
  void push_back(HomoPoly p) {
    const long long d = p.degree();
    push_back(d, std::move(p));
  }

  int nvars() const { return nvars_; }
  std::size_t size() const { return components_.size(); }
  bool empty() const { return components_.empty(); }
  const std::vector<std::pair<long long, HomoPoly>>& components() const { return components_; }
  bool all_zero() const;

 private:
  int nvars_;
  std::vector<std::pair<long long, HomoPoly>> components_;
};

struct HartogsResult {
  bool converges_estimate = false;
  double witness_c = 0.0;            // sup of c_j over expanded components
  std::vector<double> c;             // c_j, NaN for components above the cap or zero
  double tail_slope = 0.0;           // slope of log c_j against log degree over the tail half
  std::size_t skipped = 0;           // components above the expansion cap
};
/// c_j = max_alpha |a_alpha|^{1/(|alpha|+1)} per component. An estimate from a truncation:
/// divergence is reported when c_j grows like a positive power of the degree.
HartogsResult hartogs_global_test(const FormalSeries& f, int cap = 256);

/// (degree, log|p_j(z)|) per component at the canonical representative of Z.
std::vector<std::pair<long long, double>> restrict_direction(const FormalSeries& f, const ProjPoint& Z);

enum class Membership { in, out, undecided };
std::string to_string(Membership m);

struct VerdictConfig {
  double threshold = 1.0;
  double slope_in = 0.25;   // "in" needs tail slope at most this
  double slope_out = 1.0;   // tail slope above this is "out" even below the threshold
};

struct DirectionVerdict {
  Membership status = Membership::undecided;
  double sup_seen = 0.0;
  double growth_slope = 0.0;  // least-squares slope of log <q_l(Z)> against l over the tail half
};

DirectionVerdict conv_membership(const FormalSeries& f, const ProjPoint& Z, const VerdictConfig& cfg = {});
std::vector<DirectionVerdict> conv_membership_batch(const FormalSeries& f, const std::vector<ProjPoint>& Zs,
                                                    const VerdictConfig& cfg = {}, int jobs = 1);

/// Deterministic pseudo-random cover of P^n: Gaussian directions from a seeded stream.
std::vector<ProjPoint> sphere_cover(int nvars, std::size_t count, std::uint64_t seed);

/// Cover points for level k given the sampled E_k.
using CoverSchedule = std::function<std::vector<ProjPoint>(int k, const SampledSet& E_k)>;

/// property_j: h_kj systems (i)(ii)(iii). projective: p with <p>_{E_k} <= 1 and
/// <p(X)> > k/2, refuting the projective-hull level K_{1, log(k/2)} at each cover point.
enum class SeriesCertificates { property_j, projective };

struct SeriesBuildOptions {
  SeriesCertificates certificates = SeriesCertificates::property_j;
  double eta = 0.9;
  /// Candidate points for the level sets K_j^(k); a probe joins E_k when no refutation at
  /// level k is found.
  std::vector<ProjPoint> probes;
  /// Cover points closer than this to E_k are dropped.
  double cover_clearance = 1e-6;
};

struct LevelReport {
  int k = 0;
  std::size_t e_size = 0;
  std::size_t cover_size = 0;
  std::size_t certified = 0;
  std::vector<ProjPoint> failed_points;
  double beta = 0.0;  // interpolation exponent (property_j) or level log(k/2) (projective)
  double eps = 0.0;   // property_j only
};

struct SeriesReport {
  std::vector<LevelReport> levels;
  std::vector<Certificate> certificates;  // emitted h_kj in enumeration order
  std::vector<long long> exponents;       // m_l
  double in_sample_sup = 0.0;             // max <h_kj(Z)> over the K samples
  double in_bound = 0.0;                  // max over levels of the bound for samples in E_k (k^-beta or 1)
  bool in_bound_holds = true;
  bool every_cover_witnessed = true;      // each certified cover point has some <h(X)> > k/2
  std::vector<std::string> warnings;
};

struct SeriesBuild {
  FormalSeries series;
  SeriesReport report;
};

/// E_k = union over j <= k of the sampled K_j^(k) surrogate; h_kj from build_hkj_system for
/// k = 2..k_max; q_l = h_l^{m_l} with the smallest m_l making degrees strictly increase.
/// With an empty K_list the series is built from cover gadgets alone.
SeriesBuild build_series_main(const std::vector<SampledSet>& K_list, const CoverSchedule& cover, int k_max,
                              const SearchBudget& budget = {}, const SeriesBuildOptions& opts = {});
/// Schedule drawing `per_level * k` sphere points at level k.
CoverSchedule default_cover_schedule(int nvars, std::size_t per_level, std::uint64_t seed);

/// psi as log psi (complex logarithm), so that large arguments never overflow.
struct GammaSpec {
  std::function<cplx(cplx)> log_psi = [](cplx z) { return z; };
  std::string psi_name = "exp";
  std::vector<GridRegion> W;
};

/// Canonical representative of [1 : z : psi(z)] computed in log-magnitude form.
ProjPoint gamma_point(cplx z, const GammaSpec& spec = {});

struct GammaOptions {
  int sample_stride = 8;       // cell stride for E_k samples
  int cover_stride = 16;       // cell stride for cover points outside V_k
  std::size_t sphere_points = 0;  // extra P^2 cover points per level
  SeriesBuildOptions series{SeriesCertificates::projective, 0.9, {}, 1e-6};
};

struct GammaReport {
  bool empty = true;
  Prop1016Report construction;
  std::vector<SampledSet> samples;       // Gamma images of sampled F_k cells, k = 1..k_max
  std::vector<std::size_t> e_sizes;      // |E_k| samples per level
  std::vector<std::size_t> cover_sizes;
  bool cover_hypothesis_holds = true;    // finite-k surrogate of the intersection of V_k inside F
  std::optional<SeriesBuild> build;
};

/// prop1016_construct on W, Gamma images of F_k as E_k samples and of grid cells outside V_k
/// as cover points, then build_series_main on the ascending samples.
GammaReport gamma_pipeline(const GammaSpec& spec, int k_max, const SearchBudget& budget = {},
                           const GammaOptions& opts = {});

// Series file: {"format_version":1,"kind":"series","n":n,"truncation":T,...extra} followed by
// T components in the polynomial JSON-lines format, each preceded by {"component":l,"degree":d}.
void write_series(std::ostream& os, const FormalSeries& f, const nlohmann::json& extra = {});
FormalSeries read_series(std::istream& is);
nlohmann::json verdict_to_json(const ProjPoint& Z, const DirectionVerdict& v);

}  // namespace plurikit
