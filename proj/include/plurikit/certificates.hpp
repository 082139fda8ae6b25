#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "plurikit/homo_poly.hpp"
#include "plurikit/planar.hpp"
#include "plurikit/proj_point.hpp"

namespace plurikit {

enum class Provenance { planar_grid, gamma_graph, explicit_points };
std::string to_string(Provenance p);

/// Finite sample of a compact set in P^n, deduplicated under canonical representatives.
class SampledSet {
 public:
  SampledSet() = default;
  explicit SampledSet(std::vector<ProjPoint> points, Provenance provenance = Provenance::explicit_points);
  /// iota(z) = [1 : z] for planar points.
  static SampledSet from_planar(const std::vector<cplx>& zs);
  /// iota of the occupied cell centers, taking every `stride`-th cell in each direction.
  static SampledSet from_region(const GridRegion& r, int stride = 1);

  const std::vector<ProjPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  Provenance provenance() const { return provenance_; }
  int nvars() const { return points_.empty() ? 0 : points_.front().nvars(); }

  /// Smallest Fubini-Study distance (sine of the angle) to a sample; +inf when empty.
  double min_distance(const ProjPoint& z) const;
  bool contains(const ProjPoint& z, double tol = 1e-9) const { return min_distance(z) <= tol; }
  SampledSet merged(const SampledSet& other) const;

 private:
  std::vector<ProjPoint> points_;
  Provenance provenance_ = Provenance::explicit_points;
};

struct SearchBudget {
  int degree_cap = 64;
  int ascent_steps = 2000;
  std::uint64_t seed = 0x5eedULL;
  int jobs = 1;
  /// Ridge least-squares factors are added when the sample holds more than this many points.
  std::size_t atom_limit = 16;
  std::vector<int> ridge_degrees{2, 4, 6};
};

enum class CertKind { q_bound, property_j, refutation, hkj };
enum class CertStatus { ok, fallback, failed };
std::string to_string(CertKind k);
std::string to_string(CertStatus s);

struct CertParams {
  double eta = std::numeric_limits<double>::quiet_NaN();
  double eps = std::numeric_limits<double>::quiet_NaN();
  double t = std::numeric_limits<double>::quiet_NaN();
  int k = 0;
  int m = 0;                                            // mu of the level E_{mu,beta}
  double level = std::numeric_limits<double>::quiet_NaN();  // beta of the level E_{mu,beta}
  int beta_num = 0;
  int beta_den = 0;
};

/// Polynomial witness with its measured norms. global_sup is a certified upper bound of <p>
/// (exact when global_exact); set_sup is the max over the finite sample of K, a lower bound
/// of the true <p>_K; point_val is <p(point)>.
struct Certificate {
  CertKind kind = CertKind::q_bound;
  CertStatus status = CertStatus::failed;
  HomoPoly poly;
  ProjPoint point{1.0, 0.0};
  double global_sup = 0.0;
  bool global_exact = false;
  double set_sup = 0.0;
  double point_val = 0.0;
  CertParams params;
  std::uint64_t seed = 0;
};

struct Verification {
  bool ok = true;
  std::string reason;
};

/// Re-evaluates every stored quantity through a separate arithmetic path (direct complex
/// evaluation of each factor) and re-checks the inequalities for the certificate kind.
/// With K omitted only the global bound and point value are checked.
Verification reverify(const Certificate& c, const SampledSet* K = nullptr, double tol = 1e-9);

/// Lower bound for Q_{K,Z}(t): the best p found with certified <p> <= 1 and sampled <p>_K <= t.
/// Falls back to the constant t (status fallback) when the search does not beat it.
Certificate q_lower_bound(const SampledSet& K, const ProjPoint& Z, double t, const SearchBudget& budget = {});

/// Searches q with <q(X)> > eta, <q> <= 1 and sampled <q>_K <= eps. Status failed when none found.
Certificate property_j_certificate(const SampledSet& K, const ProjPoint& X, double eta, double eps,
                                   const SearchBudget& budget = {});

/// p with <p(Z)> > e^m <p>^{1-1/m} <p>_K^{1/m} (1 + 1e-9), showing Z outside K^(m) relative
/// to the sample; nullopt when undecided.
std::optional<Certificate> refute_hull_level(const SampledSet& K, const ProjPoint& Z, int m,
                                             const SearchBudget& budget = {});

/// General level E_{mu,beta} = {Z : <p(Z)> <= e^beta <p>^{1-1/mu} <p>_K^{1/mu} for all p}.
/// A returned certificate shows Z outside it relative to the sample. mu = 1 tests the
/// projective-hull level K_{1,beta}; the certificate is then normalized to <p>_K = 1.
std::optional<Certificate> refute_level(const SampledSet& K, const ProjPoint& Z, int mu, double beta,
                                        const SearchBudget& budget = {});

struct BetaChoice {
  int a = 0;
  int b = 1;
  double value() const { return static_cast<double>(a) / b; }
};
/// Largest coprime a/b with b <= max_den and (eta/k)^{a/b} > 1/2.
BetaChoice choose_beta(double k, double eta, int max_den = 64);

struct HkjSystem {
  BetaChoice beta;
  double eps = 0.0;
  int k = 0;
  double eta = 0.0;
  std::vector<Certificate> certs;      // one per cover point, in cover order
  std::vector<std::size_t> failures;   // cover indices whose Property J search failed
};

/// h_kj = p^a q^{b-a} for each cover point X, with p from property_j_certificate at
/// eps = k^{-1/beta} and q = q_gadget(X, k, deg p). Each certificate is checked for
/// <h>_{E_k} <= k^{-beta} < 1, <h> <= k and <h(X)> > k/2.
HkjSystem build_hkj_system(const SampledSet& E, const std::vector<ProjPoint>& cover, int k, double eta,
                           const SearchBudget& budget = {});

// Sampled-set file: {"format_version":1,"kind":"sampled_set","n":n,"provenance":...,"count":N}
// followed by N lines {"point":[[re,im],...]}.
void write_sampled_set(std::ostream& os, const SampledSet& K, const nlohmann::json& extra = {});
SampledSet read_sampled_set(std::istream& is);

nlohmann::json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

}  // namespace plurikit
