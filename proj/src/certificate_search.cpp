#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "plurikit/brackets.hpp"
#include "plurikit/certificates.hpp"
#include "plurikit/errors.hpp"
#include "plurikit/parallel.hpp"

namespace plurikit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kHuge = 1e300;
constexpr double kOrthTol = 1e-12;

// Candidate factor with its log-bracket column over the samples.
struct Cand {
  HomoPoly poly;
  int degree = 1;
  bool linear = true;
  CVec unit;           // coefficient vector of a linear factor, unit norm
  double log_bound = 0.0;
  std::vector<double> col;
  double at_z = kNegInf;
};

double log_abs_linear(const CVec& a, const ProjPoint& y) { return std::log(std::abs(bdot(a, y.coords()))); }

struct Goal {
  enum Mode { q, refute } mode = q;
  double log_t = 0.0;
  int mu = 1;
  double level = 1.0;

  double value(double logP, double logS, double logB) const {
    if (logP == kNegInf) return kNegInf;
    if (mode == refute) {
      if (logS == kNegInf) return kHuge;
      return logP - (1.0 - 1.0 / mu) * logB - logS / mu - level;
    }
    double cap = -logB;
    if (logS != kNegInf) cap = std::min(cap, log_t - logS);
    return logP + cap;
  }
};

class Search {
 public:
  Search(const SampledSet& K, const ProjPoint& Z, const SearchBudget& budget, const Goal& goal)
      : K_(K), Z_(Z), budget_(budget), goal_(goal), rng_(budget.seed) {
    build_candidates();
  }

  // Best product of candidate powers; empty optional when nothing beats -inf.
  std::optional<HomoPoly> run() {
    const std::size_t F = cands_.size();
    units_.assign(F, 0);
    double best = kNegInf;
    std::size_t start = F;
    for (std::size_t i = 0; i < F; ++i) {
      std::vector<int> u(F, 0);
      u[i] = 4;
      const double v = evaluate(u, 4);
      if (v > best) {
        best = v;
        start = i;
      }
    }
    if (start == F) return std::nullopt;
    D_ = 4;
    units_[start] = 4;
    load_rows();
    current_ = best;
    for (int level = 0; level < 5; ++level) {
      if (level > 0) {
        for (auto& u : units_) u *= 2;
        D_ *= 2;
        load_rows();
      }
      transfer_ascent();
    }
    coefficient_ascent();
    return realize();
  }

 private:
  // ---- candidates ----------------------------------------------------------
  void add_linear(CVec a) {
    const double n = norm2(a);
    if (!(n > 1e-14)) return;
    for (auto& c : a) c /= n;
    for (const auto& c : cands_) {
      if (c.linear && std::abs(std::abs(hdot(c.unit, a)) - 1.0) <= kOrthTol) return;
    }
    Cand c;
    c.poly = HomoPoly::linear_power(a);
    c.unit = a;
    fill_column(c);
    cands_.push_back(std::move(c));
  }

  void add_factor(const HomoPoly& f) {
    if (f.is_zero() || f.degree() < 1) return;
    Cand c;
    c.poly = f;
    c.degree = static_cast<int>(f.degree());
    c.linear = false;
    c.log_bound = certified_global_sup(f).log_value;
    fill_column(c);
    cands_.push_back(std::move(c));
  }

  void fill_column(Cand& c) const {
    c.col.resize(K_.size());
    for (std::size_t s = 0; s < K_.size(); ++s)
      c.col[s] = log_bracket_upper(c.poly, K_.points()[s].coords());
    c.at_z = c.linear ? log_abs_linear(c.unit, Z_) : log_bracket(c.poly, Z_);
  }

  static CVec conj_of(const ProjPoint& p) {
    CVec v(p.coords().begin(), p.coords().end());
    for (auto& c : v) c = std::conj(c);
    return v;
  }

  // Orthonormal basis (Gram-Schmidt) of the span of `vs`.
  static std::vector<CVec> orthonormalize(const std::vector<CVec>& vs) {
    std::vector<CVec> basis;
    for (CVec v : vs) {
      for (const auto& b : basis) {
        const cplx proj = hdot(v, b);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * b[i];
      }
      const double n = norm2(v);
      if (n < 1e-10) continue;
      for (auto& c : v) c /= n;
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // conj(z) with its components along `basis` removed.
  static CVec project_out(CVec v, const std::vector<CVec>& basis) {
    for (const auto& b : basis) {
      const cplx proj = hdot(v, b);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * b[i];
    }
    return v;
  }

  void build_candidates() {
    const int nv = static_cast<int>(Z_.nvars());
    const CVec zc = conj_of(Z_);
    add_linear(zc);
    for (int i = 0; i < nv; ++i) {
      CVec e(nv, 0.0);
      e[i] = 1.0;
      add_linear(e);
    }
    if (K_.empty()) return;

    // Forms vanishing at the normalized mean of K (after phase alignment).
    CVec mean(nv, 0.0);
    const ProjPoint& ref = K_.points().front();
    for (const auto& p : K_.points()) {
      const cplx ph = hdot(p.coords(), ref.coords());
      const cplx rot = std::abs(ph) > 0 ? std::conj(ph) / std::abs(ph) : cplx(1.0);
      for (int i = 0; i < nv; ++i) mean[i] += p[i] * rot;
    }
    if (norm2(mean) > 1e-12) {
      CVec mc = mean;
      for (auto& c : mc) c = std::conj(c);
      const auto basis = orthonormalize({mc});
      add_linear(project_out(zc, basis));
      std::vector<CVec> seeds{mc};
      for (int i = 0; i < nv; ++i) {
        CVec e(nv, 0.0);
        e[i] = 1.0;
        seeds.push_back(e);
      }
      const auto frame = orthonormalize(seeds);
      for (std::size_t b = 1; b < frame.size(); ++b) add_linear(frame[b]);
    }

    if (K_.size() <= budget_.atom_limit) {
      std::vector<CVec> atoms;
      for (const auto& p : K_.points()) {
        atoms.push_back(conj_of(p));
        add_linear(project_out(zc, orthonormalize({conj_of(p)})));
      }
      add_linear(project_out(zc, orthonormalize(atoms)));
      return;
    }
    for (int d : budget_.ridge_degrees) {
      if (d < 1 || d > budget_.degree_cap) continue;
      for (double mu : {1e-2, 1e-4, 1e-6}) add_factor(ridge_factor(d, mu));
    }
  }

  static std::vector<MultiIndex> monomials(int nv, int d) {
    std::vector<MultiIndex> out;
    MultiIndex a(nv, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == nv - 1) {
        a[pos] = left;
        out.push_back(a);
        return;
      }
      for (int e = left; e >= 0; --e) {
        a[pos] = e;
        rec(pos + 1, left - e);
      }
    };
    rec(0, d);
    return out;
  }

  // Minimizer of mean_K |p|^2 + mu ||p||_Bombieri^2 subject to p(Z) = 1.
  HomoPoly ridge_factor(int d, double mu) const {
    const int nv = static_cast<int>(Z_.nvars());
    const auto mons = monomials(nv, d);
    const int M = static_cast<int>(mons.size());
    auto row = [&](const ProjPoint& y) {
      Eigen::VectorXcd v(M);
      for (int c = 0; c < M; ++c) {
        cplx m = 1.0;
        for (int i = 0; i < nv; ++i) {
          for (int e = 0; e < mons[c][i]; ++e) m *= y[i];
        }
        v[c] = m;
      }
      return v;
    };
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(M, M);
    for (const auto& y : K_.points()) {
      const Eigen::VectorXcd v = row(y);
      G.noalias() += v.conjugate() * v.transpose();
    }
    G /= static_cast<double>(K_.size());
    const double lg_d = std::lgamma(d + 1.0);
    for (int c = 0; c < M; ++c) {
      double lg = 0.0;
      for (int e : mons[c]) lg += std::lgamma(e + 1.0);
      G(c, c) += mu * std::exp(lg - lg_d);
    }
    const Eigen::VectorXcd u = row(Z_).conjugate();
    const Eigen::VectorXcd x = G.ldlt().solve(u);
    const cplx denom = u.dot(x);
    if (!(std::abs(denom) > 0.0) || !x.allFinite()) return HomoPoly(nv);
    TermMap terms;
    for (int c = 0; c < M; ++c) {
      const cplx coef = x[c] / denom;
      if (std::abs(coef) > 0.0) terms[mons[c]] = coef;
    }
    return HomoPoly::from_terms(nv, terms);
  }

  // ---- objective -------------------------------------------------------------
  // Weights are units_i / D as fractions of the total degree.
  double log_bound(const std::vector<int>& units, int D) const {
    double acc = 0.0;
    std::vector<std::size_t> lin;
    for (std::size_t i = 0; i < cands_.size(); ++i) {
      if (units[i] == 0) continue;
      if (cands_[i].linear)
        lin.push_back(i);
      else
        acc += static_cast<double>(units[i]) / D * cands_[i].log_bound;
    }
    if (lin.empty()) return acc;
    std::sort(lin.begin(), lin.end(), [&](std::size_t a, std::size_t b) { return units[a] > units[b]; });
    double best = 0.0;
    for (std::size_t seed : lin) {
      std::vector<std::size_t> frame{seed};
      for (std::size_t idx : lin) {
        if (idx == seed) continue;
        bool ok = true;
        for (std::size_t f : frame) ok = ok && std::abs(hdot(cands_[idx].unit, cands_[f].unit)) <= kOrthTol;
        if (ok) frame.push_back(idx);
      }
      double wm = 0.0;
      for (std::size_t f : frame) wm += units[f];
      double gain = 0.0;
      for (std::size_t f : frame) gain += 0.5 * units[f] / D * std::log(units[f] / wm);
      best = std::min(best, gain);
    }
    return acc + best;
  }

  double log_point(const std::vector<int>& units, int D) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < cands_.size(); ++i) {
      if (units[i] == 0) continue;
      if (cands_[i].at_z == kNegInf) return kNegInf;
      acc += units[i] * cands_[i].at_z;
    }
    return acc / D;
  }

  double evaluate(const std::vector<int>& units, int D) const {
    const double lp = log_point(units, D);
    if (lp == kNegInf) return kNegInf;
    double ls = kNegInf;
    for (std::size_t s = 0; s < K_.size(); ++s) {
      double acc = 0.0;
      bool zero = false;
      for (std::size_t i = 0; i < cands_.size() && !zero; ++i) {
        if (units[i] == 0) continue;
        if (cands_[i].col[s] == kNegInf)
          zero = true;
        else
          acc += units[i] * cands_[i].col[s];
      }
      if (!zero) ls = std::max(ls, acc / D);
    }
    return goal_.value(lp, ls, log_bound(units, D));
  }

  void load_rows() {
    fsum_.assign(K_.size(), 0.0);
    ninf_.assign(K_.size(), 0);
    for (std::size_t i = 0; i < cands_.size(); ++i) {
      if (units_[i] == 0) continue;
      for (std::size_t s = 0; s < K_.size(); ++s) {
        if (cands_[i].col[s] == kNegInf)
          ++ninf_[s];
        else
          fsum_[s] += units_[i] * cands_[i].col[s];
      }
    }
  }

  // Objective after moving `delta` units from factor i to factor j (rows not modified).
  double eval_move(std::size_t i, std::size_t j, int delta) const {
    std::vector<int> u = units_;
    u[i] -= delta;
    u[j] += delta;
    const double lp = log_point(u, D_);
    if (lp == kNegInf) return kNegInf;
    const auto& ci = cands_[i].col;
    const auto& cj = cands_[j].col;
    const int di = (u[i] > 0) - (units_[i] > 0);
    const int dj = (u[j] > 0) - (units_[j] > 0);
    double ls = kNegInf;
    for (std::size_t s = 0; s < K_.size(); ++s) {
      int ninf = ninf_[s];
      double f = fsum_[s];
      if (ci[s] == kNegInf)
        ninf += di;
      else
        f -= delta * ci[s];
      if (cj[s] == kNegInf)
        ninf += dj;
      else
        f += delta * cj[s];
      if (ninf == 0) ls = std::max(ls, f / D_);
    }
    return goal_.value(lp, ls, log_bound(u, D_));
  }

  void transfer_ascent() {
    const std::size_t F = cands_.size();
    for (int sweep = 0; sweep < 200; ++sweep) {
      bool improved = false;
      for (std::size_t i = 0; i < F && !improved; ++i) {
        if (units_[i] == 0) continue;
        for (std::size_t j = 0; j < F && !improved; ++j) {
          if (j == i) continue;
          for (int delta = units_[i]; delta >= 1 && !improved; delta /= 2) {
            const double v = eval_move(i, j, delta);
            if (v > current_ + 1e-13 * std::max(1.0, std::abs(current_))) {
              units_[i] -= delta;
              units_[j] += delta;
              current_ = v;
              load_rows();
              improved = true;
            }
          }
        }
      }
      if (!improved || current_ >= kHuge) break;
    }
  }

  // Random perturbations of active linear factors, accepted when the objective improves.
  void coefficient_ascent() {
    if (current_ >= kHuge) return;
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < cands_.size(); ++i) {
      if (units_[i] > 0 && cands_[i].linear) active.push_back(i);
    }
    if (active.empty()) return;
    std::normal_distribution<double> g;
    double step = 0.05;
    for (int it = 0; it < budget_.ascent_steps && step > 1e-6; ++it) {
      const std::size_t i = active[static_cast<std::size_t>(it) % active.size()];
      Cand saved = cands_[i];
      CVec a = saved.unit;
      for (auto& c : a) c += step * cplx(g(rng_), g(rng_));
      const double n = norm2(a);
      for (auto& c : a) c /= n;
      cands_[i].unit = a;
      cands_[i].poly = HomoPoly::linear_power(a);
      fill_column(cands_[i]);
      const double v = evaluate(units_, D_);
      if (v > current_ + 1e-13 * std::max(1.0, std::abs(current_))) {
        current_ = v;
        load_rows();
      } else {
        cands_[i] = std::move(saved);
        step *= 0.97;
      }
    }
  }

  // Integer exponents e_i with e_i d_i / deg close to the weights and deg <= degree_cap.
  std::optional<HomoPoly> realize() {
    const std::size_t F = cands_.size();
    std::vector<int> best_e;
    double best_v = kNegInf;
    for (int target = 1; target <= budget_.degree_cap; ++target) {
      std::vector<int> e(F, 0);
      int deg = 0;
      for (std::size_t i = 0; i < F; ++i) {
        if (units_[i] == 0) continue;
        e[i] = static_cast<int>(std::lround(static_cast<double>(units_[i]) / D_ * target / cands_[i].degree));
        deg += e[i] * cands_[i].degree;
      }
      if (deg == 0 || deg > budget_.degree_cap) continue;
      std::vector<int> u(F, 0);
      for (std::size_t i = 0; i < F; ++i) u[i] = e[i] * cands_[i].degree;
      const double v = evaluate(u, deg);
      if (best_e.empty() ? v > kNegInf : v > best_v + 1e-13 * std::max(1.0, std::abs(best_v))) {
        best_v = v;
        best_e = e;
      }
    }
    if (best_e.empty()) return std::nullopt;
    int g = 0;
    for (int e : best_e) g = std::gcd(g, e);
    HomoPoly p = HomoPoly::constant(static_cast<int>(Z_.nvars()), 1.0);
    for (std::size_t i = 0; i < F; ++i) {
      if (best_e[i] > 0) p = p * cands_[i].poly.pow(best_e[i] / g);
    }
    return p;
  }

  const SampledSet& K_;
  const ProjPoint& Z_;
  SearchBudget budget_;
  Goal goal_;
  std::mt19937_64 rng_;
  std::vector<Cand> cands_;
  std::vector<int> units_;
  int D_ = 4;
  double current_ = kNegInf;
  std::vector<double> fsum_;
  std::vector<int> ninf_;
};

struct Measured {
  double log_global;
  bool exact;
  double log_set;
  double log_point;
};

Measured measure(const HomoPoly& p, const SampledSet& K, const ProjPoint& Z) {
  const GlobalBound gb = certified_global_sup(p);
  return {gb.log_value, gb.exact, log_set_sup_upper(p, K.points()), log_bracket(p, Z)};
}

Certificate make_cert(CertKind kind, const HomoPoly& p, const SampledSet& K, const ProjPoint& Z,
                      const SearchBudget& budget) {
  Certificate c;
  c.kind = kind;
  c.poly = p;
  c.point = Z;
  c.seed = budget.seed;
  const Measured m = measure(p, K, Z);
  c.global_sup = std::exp(m.log_global);
  c.global_exact = m.exact;
  c.set_sup = K.empty() ? 0.0 : std::exp(m.log_set);
  c.point_val = std::exp(m.log_point);
  return c;
}

// Scales p so that <p> <= 1 and <p>_K <= t with one of them active.
std::optional<HomoPoly> scale_for_q(const HomoPoly& p, const SampledSet& K, const ProjPoint& Z, double log_t) {
  const Measured m = measure(p, K, Z);
  double cap = -m.log_global;
  if (m.log_set != kNegInf) {
    if (log_t == kNegInf) return std::nullopt;
    cap = std::min(cap, log_t - m.log_set);
  }
  cap -= 1e-12;
  return p.scaled_log(static_cast<double>(p.degree()) * cap);
}

void check_point(const SampledSet& K, const ProjPoint& Z) {
  if (!K.empty() && K.nvars() != static_cast<int>(Z.nvars())) throw DomainError("point dimension does not match the sample set");
  if (K.contains(Z)) throw DomainError("point lies in the sample set");
}

Certificate q_search(const SampledSet& K, const ProjPoint& Z, double t, const SearchBudget& budget, CertKind kind) {
  Goal goal;
  goal.log_t = t > 0.0 ? std::log(t) : kNegInf;
  Search search(K, Z, budget, goal);
  std::optional<HomoPoly> best;
  if (auto p = search.run()) best = scale_for_q(*p, K, Z, goal.log_t);
  Certificate c;
  if (best) c = make_cert(kind, *best, K, Z, budget);
  if (!best || !(c.point_val > t)) {
    if (t > 0.0) {
      c = make_cert(kind, HomoPoly::constant(static_cast<int>(Z.nvars()), t), K, Z, budget);
      c.status = CertStatus::fallback;
    } else if (!best) {
      c = make_cert(kind, HomoPoly::constant(static_cast<int>(Z.nvars()), 1.0), K, Z, budget);
      c.status = CertStatus::failed;
    } else {
      c.status = CertStatus::ok;
    }
  } else {
    c.status = CertStatus::ok;
  }
  c.params.t = t;
  return c;
}

}  // namespace

Certificate q_lower_bound(const SampledSet& K, const ProjPoint& Z, double t, const SearchBudget& budget) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("t must lie in (0, 1]");
  check_point(K, Z);
  return q_search(K, Z, t, budget, CertKind::q_bound);
}

Certificate property_j_certificate(const SampledSet& K, const ProjPoint& X, double eta, double eps,
                                   const SearchBudget& budget) {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("eta must lie in (0, 1)");
  if (!(eps >= 0.0)) throw DomainError("eps must be nonnegative");
  check_point(K, X);
  Certificate c = q_search(K, X, std::min(eps, 1.0), budget, CertKind::property_j);
  c.params = CertParams{};
  c.params.eta = eta;
  c.params.eps = eps;
  const bool holds = c.global_sup <= 1.0 + 1e-12 && c.set_sup <= eps && c.point_val > eta;
  c.status = holds ? CertStatus::ok : CertStatus::failed;
  return c;
}

std::optional<Certificate> refute_level(const SampledSet& K, const ProjPoint& Z, int mu, double beta,
                                        const SearchBudget& budget) {
  if (mu < 1) throw DomainError("level mu must be at least 1");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("level beta must be finite and nonnegative");
  if (!K.empty() && K.nvars() != static_cast<int>(Z.nvars()))
    throw DomainError("point dimension does not match the sample set");
  if (K.contains(Z)) return std::nullopt;
  Goal goal;
  goal.mode = Goal::refute;
  goal.mu = mu;
  goal.level = beta;
  Search search(K, Z, budget, goal);
  const auto p = search.run();
  if (!p) return std::nullopt;
  const Measured meas = measure(*p, K, Z);
  // Scale-free inequality; normalize <p> = 1, or <p>_K = 1 when mu = 1.
  const double shift = (mu == 1 && meas.log_set != kNegInf) ? -meas.log_set : -meas.log_global;
  const HomoPoly scaled = p->scaled_log(static_cast<double>(p->degree()) * (shift - 1e-12));
  Certificate c = make_cert(CertKind::refutation, scaled, K, Z, budget);
  c.params.m = mu;
  c.params.level = beta;
  const double rhs = std::exp(beta) * std::pow(c.global_sup, 1.0 - 1.0 / mu) * std::pow(c.set_sup, 1.0 / mu);
  if (!(c.point_val > rhs * (1.0 + 1e-9))) return std::nullopt;
  c.status = CertStatus::ok;
  return c;
}

std::optional<Certificate> refute_hull_level(const SampledSet& K, const ProjPoint& Z, int m,
                                             const SearchBudget& budget) {
  if (m < 1) throw DomainError("level m must be at least 1");
  return refute_level(K, Z, m, static_cast<double>(m), budget);
}

BetaChoice choose_beta(double k, double eta, int max_den) {
  if (!(k > eta) || !(eta > 0.0)) throw DomainError("beta needs 0 < eta < k");
  const double limit = std::log(2.0) / std::log(k / eta);  // beta < limit
  BetaChoice best{0, 1};
  for (int b = 2; b <= max_den; ++b) {
    for (int a = 1; a < b; ++a) {
      if (std::gcd(a, b) != 1) continue;
      const double v = static_cast<double>(a) / b;
      if (v < limit && std::pow(eta / k, v) > 0.5 && v > best.value()) best = {a, b};
    }
  }
  if (best.a == 0) throw DomainError("no admissible beta with the given denominator bound");
  return best;
}

HkjSystem build_hkj_system(const SampledSet& E, const std::vector<ProjPoint>& cover, int k, double eta,
                           const SearchBudget& budget) {
  if (k < 2) throw DomainError("k must be at least 2");
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("eta must lie in (0, 1)");
  for (const auto& x : cover) {
    if (E.contains(x)) throw DomainError("cover point lies in E_k");
  }
  HkjSystem sys;
  sys.k = k;
  sys.eta = eta;
  sys.beta = choose_beta(k, eta);
  const double beta = sys.beta.value();
  sys.eps = std::pow(static_cast<double>(k), -1.0 / beta);
  sys.certs.resize(cover.size());
  parallel_for(cover.size(), budget.jobs, [&](std::size_t idx) {
    SearchBudget local = budget;
    local.seed = task_seed(budget.seed, idx);
    local.jobs = 1;
    const ProjPoint& X = cover[idx];
    const Certificate pj = property_j_certificate(E, X, eta, sys.eps, local);
    Certificate c;
    if (pj.status == CertStatus::ok) {
      const HomoPoly q = q_gadget(X, k, pj.poly.degree());
      c = make_cert(CertKind::hkj, interpolate_h(pj.poly, q, sys.beta.a, sys.beta.b), E, X, local);
      const bool i_ok = c.set_sup <= std::pow(k, -beta) * (1.0 + 1e-12) && c.set_sup < 1.0;
      const bool ii_ok = c.global_sup <= k * (1.0 + 1e-12);
      const bool iii_ok = c.point_val > 0.5 * k;
      c.status = (i_ok && ii_ok && iii_ok) ? CertStatus::ok : CertStatus::failed;
    } else {
      c = pj;
      c.kind = CertKind::hkj;
      c.status = CertStatus::failed;
    }
    c.params.eta = eta;
    c.params.eps = sys.eps;
    c.params.k = k;
    c.params.beta_num = sys.beta.a;
    c.params.beta_den = sys.beta.b;
    sys.certs[idx] = std::move(c);
  });
  for (std::size_t i = 0; i < sys.certs.size(); ++i) {
    if (sys.certs[i].status != CertStatus::ok) sys.failures.push_back(i);
  }
  return sys;
}

}  // namespace plurikit
