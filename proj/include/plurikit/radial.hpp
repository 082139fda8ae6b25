#pragma once

#include <optional>
#include <vector>

namespace plurikit {

/// Ball radius rho, depth s and modulus r = |z| of the evaluation point.
struct RadialParams {
  double rho = 1.0;
  double s = 0.0;
  double r = 0.0;
};

/// 0: r <= rho, 1: large s, 2: small s with r <= e^lambda, 3: small s with r > e^lambda.
struct SigmaValue {
  double value = 0.0;
  int branch = 0;
  std::optional<double> lambda;
};

/// (1/2) log(1 + rho^-2), the boundary between the large-s and small-s regimes.
double branch_threshold(double rho);

/// Unique lambda in (log rho, inf) with e^{2l}/(1+e^{2l}) = (1/2 log((1+e^{2l})/(1+rho^2)) + s)/(l - log rho).
/// Found as the minimizer of the chord slope tau by golden-section search, then polished
/// by bisection on the sign change of tau'. Requires 0 < s < branch_threshold(rho).
double solve_lambda(double rho, double s);
/// |LHS - RHS| of the lambda equation.
double lambda_residual(double rho, double s, double lambda);
/// Closed-form d lambda / d rho.
double dlambda_drho(double rho, double s, double lambda);
/// t0 > log rho where the two affine/log pieces of w cross (small-s regime only).
double crossing_point(double rho, double s);

/// sigma*(z, s, rho B) for |z| = r from the three-branch closed form.
SigmaValue sigma_star_ball_detail(const RadialParams& params);
double sigma_star_ball(const RadialParams& params);

struct EnvelopeTable {
  std::vector<double> grid;
  std::vector<double> w_values;
  std::vector<double> v_values;
};

/// Lower convex hull of w = min(mu1, mu2) sampled on a uniform grid over [log rho, T].
EnvelopeTable convex_envelope_oracle(double rho, double s, int grid_size, double T);
/// T = max(lambda + 3, log rho + 6); lambda is replaced by log rho outside the small-s regime.
double default_envelope_end(double rho, double s);
/// Sup over interior grid points of |v(t) - u(e^t)| with u the closed form.
double envelope_gap(const EnvelopeTable& table, double rho, double s);

/// sigma(z, s, {0}): -s at the origin and 0 elsewhere.
double sigma_singleton(double r, double s);
/// Upper regularization of sigma(., s, {0}), identically 0.
double sigma_star_singleton(double r, double s);

/// sigma*(r, s, (1/k) B) for k = 1..k_max.
std::vector<double> shrinking_ball_limit(double r, double s, int k_max);

}  // namespace plurikit
