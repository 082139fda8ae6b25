#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace plurikit {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// A point of complex projective space P^n stored by its canonical
/// representative: unit Euclidean norm, first non-negligible coordinate real
/// and positive.
class ProjPoint {
 public:
  /// Coordinates below this magnitude (relative to the unit representative)
  /// are skipped when fixing the phase.
  static constexpr double kPhaseThreshold = 1e-9;
  static constexpr double kEqualityTol = 1e-12;

  explicit ProjPoint(CVec coords);
  ProjPoint(std::initializer_list<cplx> coords) : ProjPoint(CVec(coords)) {}

  /// iota(z_1,...,z_n) = [1:z_1:...:z_n]
  static ProjPoint from_affine(std::span<const cplx> z);

  const CVec& coords() const { return coords_; }
  std::size_t nvars() const { return coords_.size(); }
  std::size_t dim() const { return coords_.size() - 1; }
  const cplx& operator[](std::size_t i) const { return coords_[i]; }

  /// sin of the angle between the complex lines; 0 iff the points coincide.
  double fs_distance(const ProjPoint& other) const;

  bool same_as(const ProjPoint& other, double tol = kEqualityTol) const;
  bool operator==(const ProjPoint& other) const { return same_as(other); }

 private:
  CVec coords_;
};

double norm2(std::span<const cplx> v);
/// Hermitian inner product sum u_i conj(v_i).
cplx hdot(std::span<const cplx> u, std::span<const cplx> v);
/// Bilinear pairing sum a_i z_i (evaluation of the linear form a at z).
cplx bdot(std::span<const cplx> a, std::span<const cplx> z);

}  // namespace plurikit
