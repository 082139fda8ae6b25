#include "plurikit/proj_point.hpp"

#include <algorithm>
#include <cmath>

#include "plurikit/errors.hpp"

namespace plurikit {

double norm2(std::span<const cplx> v) {
  double scale = 0.0;
  for (const auto& c : v) scale = std::max(scale, std::abs(c));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double acc = 0.0;
  for (const auto& c : v) acc += std::norm(c / scale);
  return scale * std::sqrt(acc);
}

cplx hdot(std::span<const cplx> u, std::span<const cplx> v) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * std::conj(v[i]);
  return acc;
}

cplx bdot(std::span<const cplx> a, std::span<const cplx> z) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * z[i];
  return acc;
}

ProjPoint::ProjPoint(CVec coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw DomainError("projective point needs at least two coordinates");
  for (const auto& c : coords_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw DomainError("projective point has non-finite coordinates");
  }
  const double nrm = norm2(coords_);
  if (nrm == 0.0) throw DomainError("projective point cannot be the zero vector");
  for (auto& c : coords_) c /= nrm;
  for (const auto& c : coords_) {
    if (std::abs(c) > kPhaseThreshold) {
      const cplx unit = std::conj(c) / std::abs(c);
      for (auto& d : coords_) d *= unit;
      break;
    }
  }
  for (auto& c : coords_) {
    // Coordinates that are exactly aligned keep an exact zero imaginary part.
    if (c.imag() == -0.0) c = cplx(c.real(), 0.0);
  }
}

ProjPoint ProjPoint::from_affine(std::span<const cplx> z) {
  CVec v;
  v.reserve(z.size() + 1);
  v.push_back(1.0);
  v.insert(v.end(), z.begin(), z.end());
  return ProjPoint(std::move(v));
}

double ProjPoint::fs_distance(const ProjPoint& other) const {
  if (other.nvars() != nvars()) throw DomainError("projective points of different dimension");
  const double c = std::min(1.0, std::abs(hdot(coords_, other.coords_)));
  // sqrt(1 - c^2) loses precision near c = 1; use the chordal form instead.
  double acc = 0.0;
  const cplx phase = hdot(coords_, other.coords_);
  const cplx unit = std::abs(phase) > 0 ? phase / std::abs(phase) : cplx(1.0);
  for (std::size_t i = 0; i < coords_.size(); ++i) acc += std::norm(coords_[i] - unit * other.coords_[i]);
  const double chord = std::sqrt(acc);  // = 2 sin(theta/2)
  if (chord < 1e-4) return chord * std::sqrt(std::max(0.0, 1.0 - chord * chord / 4.0));
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

bool ProjPoint::same_as(const ProjPoint& other, double tol) const {
  if (other.nvars() != nvars()) return false;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (std::abs(coords_[i] - other.coords_[i]) > tol) return fs_distance(other) <= tol;
  }
  return true;
}

}  // namespace plurikit
