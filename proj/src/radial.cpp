#include "plurikit/radial.hpp"

#include <algorithm>
#include <cmath>

#include "plurikit/errors.hpp"

namespace plurikit {

namespace {

// mu1(t) = (1/2) log(1 + e^{2t}), evaluated without overflow.
double mu1(double t) { return t > 0.0 ? t + 0.5 * std::log1p(std::exp(-2.0 * t)) : 0.5 * std::log1p(std::exp(2.0 * t)); }

double mu1_prime(double t) { return 1.0 / (1.0 + std::exp(-2.0 * t)); }

struct ChordSlope {
  double log_rho;
  double anchor;  // mu2(log rho) = mu1(log rho) - s

  double operator()(double t) const { return (mu1(t) - anchor) / (t - log_rho); }
  // Sign of tau'(t): tau' = (mu1' - tau) / (t - log rho).
  double derivative_sign_term(double t) const { return mu1_prime(t) - (*this)(t); }
};

void check_radial(double rho, double s) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("rho must be positive and finite");
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("s must be nonnegative and finite");
}

}  // namespace

double branch_threshold(double rho) {
  check_radial(rho, 0.0);
  return 0.5 * std::log1p(1.0 / (rho * rho));
}

double crossing_point(double rho, double s) {
  const double b = branch_threshold(rho);
  if (!(s > 0.0) || s >= b) throw DomainError("branch 1 applies; λ undefined");
  // mu2 - mu1 = -s + b - (1/2) log1p(e^{-2t}) vanishes at t0.
  return -0.5 * std::log(std::expm1(2.0 * (b - s)));
}

double solve_lambda(double rho, double s) {
  check_radial(rho, s);
  if (s >= branch_threshold(rho)) throw DomainError("branch 1 applies; λ undefined");
  if (s <= 0.0) throw DomainError("λ undefined for s = 0");
  const double log_rho = std::log(rho);
  const ChordSlope tau{log_rho, mu1(log_rho) - s};
  const double t0 = crossing_point(rho, s);

  double hi = t0 + 1.0;
  for (int it = 0; it < 80 && tau.derivative_sign_term(hi) <= 0.0; ++it) hi = t0 + 2.0 * (hi - t0);

  // Golden-section search for the minimizer of tau on [t0, hi].
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = t0;
  double b = hi;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = tau(c);
  double fd = tau(d);
  while (b - a > 1e-9 * std::max(1.0, std::abs(a))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = tau(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = tau(d);
    }
  }

  // Polish: tau' changes sign from - to + at the minimizer.
  double lo = a;
  double up = b;
  double width = std::max(b - a, 1e-12);
  while (lo > t0 && tau.derivative_sign_term(lo) > 0.0) lo = std::max(t0, lo - (width *= 2.0));
  width = std::max(b - a, 1e-12);
  while (tau.derivative_sign_term(up) < 0.0) up += (width *= 2.0);
  for (int it = 0; it < 200 && up - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + up);
    if (mid <= lo || mid >= up) break;
    (tau.derivative_sign_term(mid) < 0.0 ? lo : up) = mid;
  }
  return std::abs(tau.derivative_sign_term(lo)) < std::abs(tau.derivative_sign_term(up)) ? lo : up;
}

double lambda_residual(double rho, double s, double lambda) {
  const double lhs = mu1_prime(lambda);
  const double rhs = (mu1(lambda) - mu1(std::log(rho)) + s) / (lambda - std::log(rho));
  return std::abs(lhs - rhs);
}

double dlambda_drho(double rho, double s, double lambda) {
  (void)s;
  const double e2l = std::exp(2.0 * lambda);
  return (1.0 + e2l) / (2.0 * rho * e2l * (1.0 + rho * rho)) * (e2l - rho * rho) / (lambda - std::log(rho));
}

SigmaValue sigma_star_ball_detail(const RadialParams& params) {
  const double rho = params.rho;
  const double s = params.s;
  const double r = params.r;
  check_radial(rho, s);
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("r must be nonnegative and finite");
  if (r <= rho) return {s == 0.0 ? 0.0 : -s, 0, std::nullopt};
  if (s == 0.0) return {0.0, 3, std::nullopt};
  const double log_rho = std::log(rho);
  const double log_r = std::log(r);
  if (s >= branch_threshold(rho)) return {mu1(log_rho) - s + (log_r - log_rho) - mu1(log_r), 1, std::nullopt};
  const double lambda = solve_lambda(rho, s);
  if (log_r <= lambda)
    return {mu1(log_rho) - s + (log_r - log_rho) * mu1_prime(lambda) - mu1(log_r), 2, lambda};
  return {0.0, 3, lambda};
}

double sigma_star_ball(const RadialParams& params) { return sigma_star_ball_detail(params).value; }

double default_envelope_end(double rho, double s) {
  check_radial(rho, s);
  const double log_rho = std::log(rho);
  const double lambda = (s > 0.0 && s < branch_threshold(rho)) ? solve_lambda(rho, s) : log_rho;
  return std::max(lambda + 3.0, log_rho + 6.0);
}

EnvelopeTable convex_envelope_oracle(double rho, double s, int grid_size, double T) {
  check_radial(rho, s);
  const double log_rho = std::log(rho);
  if (grid_size < 64) throw DomainError("envelope grid needs at least 64 points");
  if (!(T > log_rho + 2.0) || !std::isfinite(T)) throw DomainError("envelope end point must exceed log rho + 2");
  const double b = branch_threshold(rho);

  EnvelopeTable tab;
  tab.grid.resize(grid_size);
  tab.w_values.resize(grid_size);
  const double step = (T - log_rho) / (grid_size - 1);
  for (int i = 0; i < grid_size; ++i) {
    const double t = (i == grid_size - 1) ? T : log_rho + i * step;
    tab.grid[i] = t;
    tab.w_values[i] = std::min(mu1(t), -s + b + t);
  }

  // Andrew monotone chain, lower hull only; grid is already sorted.
  std::vector<int> hull;
  for (int i = 0; i < grid_size; ++i) {
    while (hull.size() >= 2) {
      const int o = hull[hull.size() - 2];
      const int a = hull.back();
      const double cross = (tab.grid[a] - tab.grid[o]) * (tab.w_values[i] - tab.w_values[o]) -
                           (tab.w_values[a] - tab.w_values[o]) * (tab.grid[i] - tab.grid[o]);
      if (cross > 0.0) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }
  tab.v_values.resize(grid_size);
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int a = hull[h];
    const int c = hull[h + 1];
    for (int i = a; i <= c; ++i) {
      const double f = (tab.grid[i] - tab.grid[a]) / (tab.grid[c] - tab.grid[a]);
      tab.v_values[i] = (i == c) ? tab.w_values[c] : tab.w_values[a] + f * (tab.w_values[c] - tab.w_values[a]);
    }
  }
  return tab;
}

double envelope_gap(const EnvelopeTable& table, double rho, double s) {
  double gap = 0.0;
  for (std::size_t i = 1; i + 1 < table.grid.size(); ++i) {
    const double t = table.grid[i];
    const double u = sigma_star_ball({rho, s, std::exp(t)}) + mu1(t);
    gap = std::max(gap, std::abs(table.v_values[i] - u));
  }
  return gap;
}

double sigma_singleton(double r, double s) { return r == 0.0 ? -s : 0.0; }

double sigma_star_singleton(double r, double s) {
  (void)r;
  (void)s;
  return 0.0;
}

std::vector<double> shrinking_ball_limit(double r, double s, int k_max) {
  if (!(r > 0.0)) throw DomainError("r must be positive");
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  std::vector<double> out;
  out.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) out.push_back(sigma_star_ball({1.0 / k, s, r}));
  return out;
}

}  // namespace plurikit
