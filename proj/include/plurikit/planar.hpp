#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace plurikit {

using cplx = std::complex<double>;

/// Uniform cell grid; `origin` is the lower-left corner and cell (i, j) has center
/// origin + h (i + 1/2) + i h (j + 1/2).
struct GridSpec {
  cplx origin{-4.0, -4.0};
  double h = 1.0 / 256.0;
  int width = 2048;
  int height = 2048;

  static GridSpec box(double xmin, double xmax, double ymin, double ymax, double h);
  cplx center(int i, int j) const;
  bool operator==(const GridSpec& o) const;
};

/// Inclusive cell index rectangle; empty when i0 > i1.
struct CellBox {
  int i0 = 0, i1 = -1, j0 = 0, j1 = -1;
  bool empty() const { return i0 > i1 || j0 > j1; }
};

/// Compact subset of C as an occupancy bitmap over a GridSpec.
class GridRegion {
 public:
  explicit GridRegion(const GridSpec& spec = GridSpec{});

  const GridSpec& spec() const { return spec_; }
  int width() const { return spec_.width; }
  int height() const { return spec_.height; }
  double h() const { return spec_.h; }
  cplx center(int i, int j) const { return spec_.center(i, j); }

  bool test(int i, int j) const {
    const std::size_t b = index(i, j);
    return (words_[b >> 6] >> (b & 63)) & 1U;
  }
  void set(int i, int j, bool value = true) {
    const std::size_t b = index(i, j);
    if (value)
      words_[b >> 6] |= (std::uint64_t{1} << (b & 63));
    else
      words_[b >> 6] &= ~(std::uint64_t{1} << (b & 63));
  }

  std::size_t count() const;
  bool empty() const;
  double area() const { return static_cast<double>(count()) * spec_.h * spec_.h; }
  CellBox bbox() const;
  /// Cell containing z, if z lies in the grid.
  std::optional<std::pair<int, int>> cell_of(cplx z) const;

  GridRegion operator|(const GridRegion& o) const;
  GridRegion operator&(const GridRegion& o) const;
  GridRegion minus(const GridRegion& o) const;
  GridRegion complement() const;
  bool subset_of(const GridRegion& o) const;
  bool intersects(const GridRegion& o) const;
  bool operator==(const GridRegion& o) const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(spec_.width) + static_cast<std::size_t>(i);
  }
  void require_same_grid(const GridRegion& o) const;

  GridSpec spec_;
  std::vector<std::uint64_t> words_;
};

// Rasterizers: a cell is occupied when its center lies within h/2 of the ideal set.
GridRegion rasterize_disk(const GridSpec& spec, cplx c, double radius);
GridRegion rasterize_circle(const GridSpec& spec, cplx c, double radius);
GridRegion rasterize_annulus(const GridSpec& spec, cplx c, double r_in, double r_out);
/// Single nearest cell; DomainError when z is outside the grid.
GridRegion rasterize_point(const GridSpec& spec, cplx z);
GridRegion rasterize_predicate(const GridSpec& spec, const std::function<bool(cplx)>& inside);

/// Exact squared Euclidean distance (in cell units, center to center) from each cell of
/// `window` to the nearest occupied cell of `s` inside the window. Row-major over the window.
std::vector<double> squared_distance_field(const GridRegion& s, const CellBox& window);

/// Closed Euclidean dilation: cells whose center is within r of an occupied center.
/// Throws DomainError "radius below resolution" for r < h. Cells past the grid edge are dropped.
GridRegion neighborhood(const GridRegion& s, double r);
/// Min distance from z to occupied cell centers. DomainError for empty s.
double distance(cplx z, const GridRegion& s);

/// s together with every bounded 4-connected component of the complement.
GridRegion polynomial_hull(const GridRegion& s);
bool is_polynomially_convex(const GridRegion& s);

struct UnionHull {
  GridRegion region;
  bool overlap = false;         // parts were not pairwise disjoint; region is hull(union)
  bool identity_holds = false;  // union of hulls equals hull of union
};
UnionHull hull_of_union(const std::vector<GridRegion>& parts);

struct ConstructionTrace {
  int k = 0;
  std::vector<GridRegion> L;
  std::vector<GridRegion> K;
  GridRegion G;
  GridRegion F;
  GridRegion V;
};

struct ExcessRow {
  int m = 0;
  double excess_area = 0.0;  // area of (cap_{k=m}^{k_max} V_k) minus the union of W
};

struct Prop1016Report {
  std::vector<ConstructionTrace> traces;
  bool ascending = true;
  bool hulls_idempotent = true;
  bool hull_equals_union_of_parts = true;  // F_k == union of K_kj
  bool within_union = true;                // F_k subset of the union of W
  bool parts_disjoint = true;              // L_kl and L_kj disjoint
  GridRegion union_w;
  // Union of F_k over all k: F_k stops changing once 1/k <= h.
  GridRegion limit_union;
  int limit_k = 0;
  std::size_t limit_missing_cells = 0;           // union W minus limit union
  std::size_t limit_missing_beyond_shell = 0;    // of those, cells not 8-adjacent to the limit union
  std::size_t missing_at_kmax = 0;               // union W minus F_{k_max}
  double max_missing_distance_at_kmax = 0.0;     // distance of those cells to F_{k_max}
  double shell_area = 0.0;                       // area of V_{k_max} minus F_{k_max}
  std::vector<ExcessRow> excess;                 // one row per m = 1..k_max
};

struct Prop1016Options {
  bool keep_parts = true;  // keep L_kj and K_kj in every trace
};

/// Ascending construction L_kj, K_kj, G_k, F_k, V_k for k = 1..k_max. Requires every W_j
/// polynomially convex (DomainError naming j otherwise), a common grid and 1/k_max >= 3h.
Prop1016Report prop1016_construct(const std::vector<GridRegion>& W, int k_max, const Prop1016Options& opts = {});

/// Region file: "PKRGN format_version=1", a "# seed=... config_hash=..." comment,
/// "origin_re origin_im h width height", then one line of alternating run lengths per row
/// (bottom row first, first run counts empty cells).
void write_region(std::ostream& os, const GridRegion& r, std::uint64_t seed = 0, const std::string& config_hash = "");
GridRegion read_region(std::istream& is);

}  // namespace plurikit
