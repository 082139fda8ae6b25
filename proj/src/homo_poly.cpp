#include "plurikit/homo_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "plurikit/errors.hpp"

namespace plurikit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double wrap_phase(double x) { return std::remainder(x, 2.0 * std::numbers::pi); }

TermMap term_power(TermMap base, long long m, int nvars) {
  TermMap result{{MultiIndex(nvars, 0), cplx(1.0)}};
  while (m > 0) {
    if (m & 1) result = multiply_terms(result, base);
    m >>= 1;
    if (m > 0) base = multiply_terms(base, base);
  }
  return result;
}

}  // namespace

int multi_index_degree(const MultiIndex& alpha) {
  int d = 0;
  for (int a : alpha) d += a;
  return d;
}

TermMap multiply_terms(const TermMap& a, const TermMap& b) {
  TermMap out;
  for (const auto& [ia, ca] : a) {
    for (const auto& [ib, cb] : b) {
      MultiIndex idx(ia.size());
      for (std::size_t i = 0; i < ia.size(); ++i) idx[i] = ia[i] + ib[i];
      out[idx] += ca * cb;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it = (it->second == cplx(0.0)) ? out.erase(it) : std::next(it);
  }
  return out;
}

CVec Factor::linear_coeffs(std::size_t nvars) const {
  CVec a(nvars, 0.0);
  for (const auto& [alpha, c] : terms) {
    for (std::size_t i = 0; i < nvars; ++i) {
      if (alpha[i] == 1) a[i] = c;
    }
  }
  return a;
}

LogValue Factor::eval_log(std::span<const cplx> z) const {
  // Each term is formed in log-magnitude space and the sum is taken after a
  // max-shift, so k-th roots of huge or tiny values never overflow.
  std::vector<double> logs;
  std::vector<double> phases;
  logs.reserve(terms.size());
  phases.reserve(terms.size());
  for (const auto& [alpha, c] : terms) {
    double lm = std::log(std::abs(c));
    double ph = std::arg(c);
    bool vanishes = false;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      const double az = std::abs(z[i]);
      if (az == 0.0) {
        vanishes = true;
        break;
      }
      lm += alpha[i] * std::log(az);
      ph += alpha[i] * std::arg(z[i]);
    }
    if (vanishes) continue;
    logs.push_back(lm);
    phases.push_back(ph);
  }
  if (logs.empty()) return {};
  const double shift = *std::max_element(logs.begin(), logs.end());
  cplx acc = 0.0;
  for (std::size_t t = 0; t < logs.size(); ++t) acc += std::polar(std::exp(logs[t] - shift), phases[t]);
  if (acc == cplx(0.0)) return {};
  return {std::log(std::abs(acc)) + shift, std::arg(acc)};
}

HomoPoly::HomoPoly(int nvars) : nvars_(nvars) {
  if (nvars < 1) throw DomainError("polynomial needs at least one variable");
}

HomoPoly HomoPoly::constant(int nvars, cplx c) {
  HomoPoly p(nvars);
  if (c == cplx(0.0)) return p;
  p.zero_ = false;
  p.log_scale_ = std::log(std::abs(c));
  p.phase_ = std::arg(c);
  return p;
}

HomoPoly HomoPoly::from_terms(int nvars, const TermMap& terms) {
  TermMap cleaned;
  int degree = -1;
  for (const auto& [alpha, c] : terms) {
    if (static_cast<int>(alpha.size()) != nvars)
      throw DomainError("multi-index length does not match the number of variables");
    for (int a : alpha) {
      if (a < 0) throw DomainError("negative exponent in multi-index");
    }
    if (c == cplx(0.0)) continue;
    const int d = multi_index_degree(alpha);
    if (degree >= 0 && d != degree) throw DomainError("term map is not homogeneous");
    degree = d;
    cleaned.emplace(alpha, c);
  }
  if (cleaned.empty()) return HomoPoly(nvars);
  if (degree == 0) return constant(nvars, cleaned.begin()->second);
  HomoPoly p(nvars);
  p.zero_ = false;
  p.factors_.push_back(Factor{std::move(cleaned), degree, 1});
  return p;
}

HomoPoly HomoPoly::linear_power(std::span<const cplx> a, long long power) {
  const int nvars = static_cast<int>(a.size());
  if (power < 0) throw DomainError("negative power");
  TermMap terms;
  for (int i = 0; i < nvars; ++i) {
    if (a[i] == cplx(0.0)) continue;
    MultiIndex e(nvars, 0);
    e[i] = 1;
    terms.emplace(e, a[i]);
  }
  if (terms.empty()) return HomoPoly(nvars);
  if (power == 0) return constant(nvars, 1.0);
  HomoPoly p(nvars);
  p.zero_ = false;
  p.factors_.push_back(Factor{std::move(terms), 1, power});
  return p;
}

HomoPoly HomoPoly::monomial(const MultiIndex& alpha, cplx coeff) {
  return from_terms(static_cast<int>(alpha.size()), TermMap{{alpha, coeff}});
}

long long HomoPoly::degree() const {
  if (zero_) return -1;
  long long d = 0;
  for (const auto& f : factors_) d += static_cast<long long>(f.degree) * f.power;
  return d;
}

HomoPoly HomoPoly::operator*(const HomoPoly& other) const {
  if (other.nvars_ != nvars_) throw DomainError("cannot multiply polynomials in different variables");
  if (zero_ || other.zero_) return HomoPoly(nvars_);
  HomoPoly p = *this;
  p.log_scale_ += other.log_scale_;
  p.phase_ = wrap_phase(p.phase_ + other.phase_);
  p.factors_.insert(p.factors_.end(), other.factors_.begin(), other.factors_.end());
  return p;
}

HomoPoly HomoPoly::pow(long long m) const {
  if (m < 0) throw DomainError("negative power");
  if (zero_) return m == 0 ? constant(nvars_, 1.0) : *this;
  if (m == 0) return constant(nvars_, 1.0);
  HomoPoly p = *this;
  p.log_scale_ *= static_cast<double>(m);
  p.phase_ = wrap_phase(p.phase_ * static_cast<double>(m));
  for (auto& f : p.factors_) f.power *= m;
  return p;
}

HomoPoly HomoPoly::scaled(cplx c) const {
  if (c == cplx(0.0)) return HomoPoly(nvars_);
  if (zero_) return *this;
  HomoPoly p = *this;
  p.log_scale_ += std::log(std::abs(c));
  p.phase_ = wrap_phase(p.phase_ + std::arg(c));
  return p;
}

HomoPoly HomoPoly::scaled_log(double logmag) const {
  if (zero_) return *this;
  HomoPoly p = *this;
  p.log_scale_ += logmag;
  return p;
}

LogValue HomoPoly::eval_log(std::span<const cplx> z) const {
  if (static_cast<int>(z.size()) != nvars_) throw DomainError("point has wrong number of coordinates");
  if (zero_) return {};
  double lm = log_scale_;
  double ph = phase_;
  for (const auto& f : factors_) {
    const LogValue v = f.eval_log(z);
    if (v.is_zero()) return {};
    lm += static_cast<double>(f.power) * v.logmag;
    ph += std::remainder(static_cast<double>(f.power) * v.phase, 2.0 * std::numbers::pi);
  }
  return {lm, wrap_phase(ph)};
}

cplx HomoPoly::operator()(std::span<const cplx> z) const {
  const LogValue v = eval_log(z);
  if (v.is_zero()) return 0.0;
  return std::polar(std::exp(v.logmag), v.phase);
}

TermMap HomoPoly::expand(int degree_cap) const {
  if (zero_) return {};
  if (degree() > degree_cap)
    throw DomainError("degree " + std::to_string(degree()) + " exceeds expansion cap " +
                      std::to_string(degree_cap));
  TermMap acc{{MultiIndex(nvars_, 0), std::polar(std::exp(log_scale_), phase_)}};
  for (const auto& f : factors_) acc = multiply_terms(acc, term_power(f.terms, f.power, nvars_));
  return acc;
}

bool HomoPoly::is_plain() const {
  return !zero_ && factors_.size() == 1 && factors_[0].power == 1 && log_scale_ == 0.0 && phase_ == 0.0;
}

}  // namespace plurikit
