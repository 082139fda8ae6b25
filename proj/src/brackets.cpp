#include "plurikit/brackets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "plurikit/errors.hpp"

namespace plurikit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_norm(std::span<const cplx> z) { return std::log(norm2(z)); }

// Bound on sup_{|z|=1} |f(z)| for an expanded factor.
double log_factor_sup_bound(const Factor& f) {
  const double lg_m = std::lgamma(f.degree + 1.0);
  double bombieri_sq = 0.0;
  double l1 = 0.0;
  for (const auto& [alpha, c] : f.terms) {
    double lg_alpha = 0.0;
    double log_mono_sup = 0.0;
    for (int a : alpha) {
      lg_alpha += std::lgamma(a + 1.0);
      if (a > 0) log_mono_sup += 0.5 * a * std::log(static_cast<double>(a) / f.degree);
    }
    bombieri_sq += std::norm(c) * std::exp(lg_alpha - lg_m);
    l1 += std::abs(c) * std::exp(log_mono_sup);
  }
  return std::min(0.5 * std::log(bombieri_sq), std::log(l1));
}

struct Direction {
  CVec unit;
  long long power = 0;
};

}  // namespace

double GlobalBound::value() const { return std::exp(log_value); }

double log_bracket(const HomoPoly& p, std::span<const cplx> z) {
  if (p.is_zero()) throw DomainError("bracket undefined for zero polynomial");
  const long long k = p.degree();
  const LogValue v = p.eval_log(z);
  if (k == 0) return v.logmag;
  if (v.is_zero()) return kNegInf;
  return v.logmag / static_cast<double>(k) - log_norm(z);
}

double bracket(const HomoPoly& p, const ProjPoint& z) { return std::exp(log_bracket(p, z)); }

GlobalBound certified_global_sup(const HomoPoly& p) {
  if (p.is_zero()) throw DomainError("bracket undefined for zero polynomial");
  const long long d = p.degree();
  if (d == 0) return {p.log_scale(), true};
  const double dd = static_cast<double>(d);
  const auto nv = static_cast<std::size_t>(p.nvars());

  // Linear factors merged into directions; every other factor enters through its own bound.
  double acc = p.log_scale();
  bool has_nonlinear = false;
  std::vector<Direction> dirs;
  for (const auto& f : p.factors()) {
    if (!f.is_linear()) {
      has_nonlinear = true;
      acc += static_cast<double>(f.power) * log_factor_sup_bound(f);
      continue;
    }
    CVec a = f.linear_coeffs(nv);
    const double n = norm2(a);
    for (auto& c : a) c /= n;
    acc += static_cast<double>(f.power) * std::log(n);
    bool merged = false;
    for (auto& dir : dirs) {
      if (std::abs(std::abs(hdot(dir.unit, a)) - 1.0) <= 1e-12) {
        dir.power += f.power;
        merged = true;
        break;
      }
    }
    if (!merged) dirs.push_back({a, f.power});
  }
  if (dirs.empty()) return {acc / dd, false};

  // p = M R with M a monomial in an orthonormal frame of degree E_M:
  //   <p> <= <M>^{E_M/d} <R>^{1-E_M/d},  log<M> = sum (e_i/E_M) log(e_i/E_M) / 2.
  // Frames are grown greedily by power from every seed direction; the best one wins.
  std::vector<std::size_t> order(dirs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return dirs[x].power > dirs[y].power; });
  double best_gain = 0.0;
  std::size_t best_size = 0;
  for (std::size_t seed = 0; seed < dirs.size(); ++seed) {
    std::vector<std::size_t> frame{seed};
    for (std::size_t idx : order) {
      if (idx == seed) continue;
      bool ok = true;
      for (std::size_t f : frame) ok = ok && std::abs(hdot(dirs[idx].unit, dirs[f].unit)) <= 1e-12;
      if (ok) frame.push_back(idx);
    }
    double em = 0.0;
    for (std::size_t f : frame) em += static_cast<double>(dirs[f].power);
    double gain = 0.0;
    for (std::size_t f : frame) {
      const double e = static_cast<double>(dirs[f].power);
      gain += 0.5 * (e / dd) * std::log(e / em);
    }
    if (gain < best_gain || best_size == 0) {
      best_gain = gain;
      best_size = frame.size();
    }
  }
  const bool exact = !has_nonlinear && best_size == dirs.size();
  return {acc / dd + best_gain, exact};
}

double sampled_global_sup(const HomoPoly& p, int starts, int ascent_steps, std::uint64_t seed) {
  if (p.is_zero()) throw DomainError("bracket undefined for zero polynomial");
  if (p.degree() == 0) return std::exp(p.log_scale());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const int nv = p.nvars();
  auto random_point = [&] {
    CVec z(nv);
    for (auto& c : z) c = cplx(gauss(rng), gauss(rng));
    return z;
  };
  double best = kNegInf;
  for (int s = 0; s < starts; ++s) {
    CVec z = random_point();
    double cur = log_bracket(p, z);
    double step = 0.3;
    for (int it = 0; it < ascent_steps && step > 1e-7; ++it) {
      CVec trial = z;
      const double nz = norm2(z);
      for (auto& c : trial) c += step * nz * cplx(gauss(rng), gauss(rng));
      const double val = log_bracket(p, trial);
      if (val > cur) {
        cur = val;
        z = trial;
      } else {
        step *= 0.93;
      }
    }
    best = std::max(best, cur);
  }
  return std::exp(best);
}

double log_set_sup(const HomoPoly& p, std::span<const ProjPoint> samples) {
  double best = kNegInf;
  for (const auto& s : samples) best = std::max(best, log_bracket(p, s));
  return best;
}

double log_bracket_upper(const HomoPoly& p, std::span<const cplx> z, double slack) {
  if (p.is_zero()) throw DomainError("bracket undefined for zero polynomial");
  const long long k = p.degree();
  if (k == 0) return p.log_scale();
  double acc = p.log_scale();
  for (const auto& f : p.factors()) {
    const LogValue v = f.eval_log(z);
    // log of the term-magnitude sum, max-shifted.
    std::vector<double> logs;
    for (const auto& [alpha, c] : f.terms) {
      double lm = std::log(std::abs(c));
      for (std::size_t i = 0; i < alpha.size() && lm != kNegInf; ++i) {
        if (alpha[i] > 0) lm += alpha[i] * std::log(std::abs(z[i]));
      }
      if (lm != kNegInf) logs.push_back(lm);
    }
    if (logs.empty()) return kNegInf;
    const double top = *std::max_element(logs.begin(), logs.end());
    double sum = 0.0;
    for (double l : logs) sum += std::exp(l - top);
    const double log_abs_sum = top + std::log(sum);
    const double rel = slack * static_cast<double>(f.terms.size() + f.degree);
    const double lf = log_abs_sum + std::log(std::exp(v.logmag - log_abs_sum) + rel);
    acc += static_cast<double>(f.power) * lf;
  }
  return acc / static_cast<double>(k) - log_norm(z);
}

double log_set_sup_upper(const HomoPoly& p, std::span<const ProjPoint> samples, double slack) {
  double best = kNegInf;
  for (const auto& s : samples) best = std::max(best, log_bracket_upper(p, s.coords(), slack));
  return best;
}

NormReport sup_bracket_over_set(const HomoPoly& p, std::span<const ProjPoint> samples) {
  if (samples.empty()) throw DomainError("sample set is empty");
  NormReport r;
  r.set_sup = std::exp(log_set_sup(p, samples));
  const GlobalBound gb = certified_global_sup(p);
  r.global_upper = gb.value();
  if (gb.exact) {
    r.global_sup = gb.value();
    r.method = NormMethod::analytic;
  } else {
    r.global_sup = std::max(sampled_global_sup(p), r.set_sup);
    r.method = NormMethod::sampled;
  }
  return r;
}

double analytic_sup_linear_power(std::span<const cplx> a, int d) {
  if (d < 1) throw DomainError("exponent must be positive");
  const double n = norm2(a);
  if (n == 0.0) throw DomainError("linear form has zero coefficient vector");
  return n;
}

HomoPoly q_gadget(const ProjPoint& x, double k, long long d) {
  if (k <= 0.0) throw DomainError("gadget scale k must be positive");
  if (d < 1) throw DomainError("gadget degree must be positive");
  CVec a(x.nvars());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = k * std::conj(x[i]);  // |x| = 1
  return HomoPoly::linear_power(a, d);
}

HomoPoly interpolate_h(const HomoPoly& p, const HomoPoly& q, int a, int b) {
  if (a < 1 || b < 1) throw DomainError("interpolation exponents must be positive");
  if (a >= b) throw DomainError("interpolation needs a < b");
  if (std::gcd(a, b) != 1) throw DomainError("interpolation exponents must be coprime");
  if (p.is_zero() || q.is_zero()) throw DomainError("cannot interpolate the zero polynomial");
  if (p.degree() != q.degree()) throw DomainError("interpolation needs deg p == deg q");
  return p.pow(a) * q.pow(b - a);
}

}  // namespace plurikit
