#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "plurikit/homo_poly.hpp"
#include "plurikit/proj_point.hpp"

namespace plurikit {

/// log <p(Z)> = log|p(z)|/deg p - log|z|, or log|p| for constants.
/// Throws DomainError for the zero polynomial.
double log_bracket(const HomoPoly& p, std::span<const cplx> z);
inline double log_bracket(const HomoPoly& p, const ProjPoint& z) { return log_bracket(p, z.coords()); }
double bracket(const HomoPoly& p, const ProjPoint& z);

enum class NormMethod { analytic, analytic_bound, sampled };

/// Certified upper bound for the global norm <p> = sup over P^n of <p(Z)>.
/// `exact` is set when the bound is attained: constants, powers of one linear
/// form, and monomials in an orthonormal frame of linear forms. Other products
/// of linear forms use the weighted geometric-mean bound; expanded factors use
/// the smaller of the Bombieri-norm and l1 monomial bounds.
struct GlobalBound {
  double log_value = 0.0;
  bool exact = false;
  double value() const;
};
GlobalBound certified_global_sup(const HomoPoly& p);

/// Sampled estimate (lower bound) of <p> by random starts and local ascent.
double sampled_global_sup(const HomoPoly& p, int starts = 256, int ascent_steps = 200,
                          std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

struct NormReport {
  double global_sup = 0.0;    // exact value or sampled lower bound
  double global_upper = 0.0;  // certified upper bound
  double set_sup = 0.0;       // max over the sample set (a lower bound of the true sup)
  double point_value = 0.0;
  NormMethod method = NormMethod::sampled;
};

NormReport sup_bracket_over_set(const HomoPoly& p, std::span<const ProjPoint> samples);
/// Max of log <p(Z)> over the samples; -inf for an empty set.
double log_set_sup(const HomoPoly& p, std::span<const ProjPoint> samples);

/// Relative slack per term used by the rounding-aware set norm.
inline constexpr double kRoundingSlack = 16.0 * std::numeric_limits<double>::epsilon();
/// Upper bound of log <p(Z)> robust to cancellation: each factor value |f(z)| is replaced by
/// |f(z)| + slack (terms + degree) sum_alpha |c_alpha z^alpha|. Exact zeros of monomial
/// structure stay zero.
double log_bracket_upper(const HomoPoly& p, std::span<const cplx> z, double slack = kRoundingSlack);
/// Max of log_bracket_upper over the samples; the stored set norm of certificates.
double log_set_sup_upper(const HomoPoly& p, std::span<const ProjPoint> samples, double slack = kRoundingSlack);

/// <l^d> = ||a||_2 for the linear form l(z) = a . z and any d >= 1.
double analytic_sup_linear_power(std::span<const cplx> a, int d);

/// q(y) = (k y . conj(x)/|x|)^d, which satisfies <q> = k = <q(X)>.
HomoPoly q_gadget(const ProjPoint& x, double k, long long d);

/// h = p^a q^(b-a); <h(Z)> = <p(Z)>^beta <q(Z)>^(1-beta) with beta = a/b.
HomoPoly interpolate_h(const HomoPoly& p, const HomoPoly& q, int a, int b);

}  // namespace plurikit
