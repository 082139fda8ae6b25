#pragma once

#include <complex>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "plurikit/proj_point.hpp"

namespace plurikit {

using MultiIndex = std::vector<int>;
using TermMap = std::map<MultiIndex, cplx>;

inline constexpr int kDefaultDegreeCap = 256;

/// log|v| together with arg v; logmag is -inf for v == 0.
struct LogValue {
  double logmag = -std::numeric_limits<double>::infinity();
  double phase = 0.0;
  bool is_zero() const { return logmag == -std::numeric_limits<double>::infinity(); }
};

/// One expanded homogeneous factor raised to a positive power.
struct Factor {
  TermMap terms;  // every multi-index has |alpha| == degree
  int degree = 0;
  long long power = 1;

  bool is_linear() const { return degree == 1; }
  /// Coefficient vector of a linear factor.
  CVec linear_coeffs(std::size_t nvars) const;
  LogValue eval_log(std::span<const cplx> z) const;
};

/// Homogeneous polynomial in n+1 variables held in product form
///   p = exp(log_scale + i phase) * prod_f f^{power_f}.
/// A polynomial built from a term map is a single factor of power one; products and
/// powers stay factored so that high-degree gadgets are evaluated without expansion.
/// The zero polynomial has degree -1.
class HomoPoly {
 public:
  /// Zero polynomial.
  explicit HomoPoly(int nvars = 2);

  static HomoPoly zero(int nvars) { return HomoPoly(nvars); }
  static HomoPoly constant(int nvars, cplx c);
  /// Throws DomainError if the term map is not homogeneous or has mismatched arity.
  static HomoPoly from_terms(int nvars, const TermMap& terms);
  /// l(z) = sum a_i z_i raised to `power`.
  static HomoPoly linear_power(std::span<const cplx> a, long long power = 1);
  static HomoPoly monomial(const MultiIndex& alpha, cplx coeff = 1.0);

  int nvars() const { return nvars_; }
  bool is_zero() const { return zero_; }
  /// Total degree; -1 for the zero polynomial.
  long long degree() const;
  double log_scale() const { return log_scale_; }
  double phase() const { return phase_; }
  const std::vector<Factor>& factors() const { return factors_; }

  HomoPoly operator*(const HomoPoly& other) const;
  HomoPoly pow(long long m) const;
  HomoPoly scaled(cplx c) const;
  /// Multiply by exp(logmag); used to rescale without under/overflow.
  HomoPoly scaled_log(double logmag) const;

  LogValue eval_log(std::span<const cplx> z) const;
  cplx operator()(std::span<const cplx> z) const;
  cplx operator()(const ProjPoint& z) const { return (*this)(z.coords()); }

  /// Multiply everything out. Throws DomainError when the degree exceeds `degree_cap`.
  TermMap expand(int degree_cap = kDefaultDegreeCap) const;
  /// Single factor of power one with unit scale.
  bool is_plain() const;

 private:
  int nvars_;
  bool zero_ = true;
  double log_scale_ = 0.0;
  double phase_ = 0.0;
  std::vector<Factor> factors_;
};

TermMap multiply_terms(const TermMap& a, const TermMap& b);
int multi_index_degree(const MultiIndex& alpha);

}  // namespace plurikit
