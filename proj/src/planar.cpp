#include "plurikit/planar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "plurikit/errors.hpp"

namespace plurikit {

namespace {

constexpr double kFar = 1e20;

CellBox expand(const CellBox& b, int margin, const GridSpec& spec) {
  if (b.empty()) return b;
  return {std::max(0, b.i0 - margin), std::min(spec.width - 1, b.i1 + margin), std::max(0, b.j0 - margin),
          std::min(spec.height - 1, b.j1 + margin)};
}

CellBox unite(const CellBox& a, const CellBox& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return {std::min(a.i0, b.i0), std::max(a.i1, b.i1), std::min(a.j0, b.j0), std::max(a.j1, b.j1)};
}

// One-dimensional lower envelope of parabolas (Felzenszwalb and Huttenlocher).
void distance_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v, std::vector<double>& z,
                 int n) {
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) / (2.0 * q - 2.0 * v[k]);
    while (s <= z[k]) {
      --k;
      s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) / (2.0 * q - 2.0 * v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

void check_spec(const GridSpec& spec) {
  if (!(spec.h > 0.0) || spec.width <= 0 || spec.height <= 0) throw DomainError("grid needs positive h and size");
}

}  // namespace

GridSpec GridSpec::box(double xmin, double xmax, double ymin, double ymax, double h) {
  if (!(h > 0.0) || !(xmax > xmin) || !(ymax > ymin)) throw DomainError("degenerate grid box");
  GridSpec s;
  s.origin = cplx(xmin, ymin);
  s.h = h;
  s.width = static_cast<int>(std::ceil((xmax - xmin) / h - 1e-9));
  s.height = static_cast<int>(std::ceil((ymax - ymin) / h - 1e-9));
  return s;
}

cplx GridSpec::center(int i, int j) const { return origin + cplx(h * (i + 0.5), h * (j + 0.5)); }

bool GridSpec::operator==(const GridSpec& o) const {
  return origin == o.origin && h == o.h && width == o.width && height == o.height;
}

GridRegion::GridRegion(const GridSpec& spec) : spec_(spec) {
  check_spec(spec);
  const std::size_t bits = static_cast<std::size_t>(spec.width) * static_cast<std::size_t>(spec.height);
  words_.assign((bits + 63) / 64, 0);
}

std::size_t GridRegion::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool GridRegion::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

CellBox GridRegion::bbox() const {
  CellBox b{spec_.width, -1, spec_.height, -1};
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    std::uint64_t w = words_[wi];
    while (w) {
      const int bit = std::countr_zero(w);
      w &= w - 1;
      const std::size_t idx = wi * 64 + static_cast<std::size_t>(bit);
      const int j = static_cast<int>(idx / static_cast<std::size_t>(spec_.width));
      const int i = static_cast<int>(idx % static_cast<std::size_t>(spec_.width));
      b.i0 = std::min(b.i0, i);
      b.i1 = std::max(b.i1, i);
      b.j0 = std::min(b.j0, j);
      b.j1 = std::max(b.j1, j);
    }
  }
  return b;
}

std::optional<std::pair<int, int>> GridRegion::cell_of(cplx z) const {
  const double x = (z.real() - spec_.origin.real()) / spec_.h;
  const double y = (z.imag() - spec_.origin.imag()) / spec_.h;
  if (!(x >= 0.0 && y >= 0.0 && x < spec_.width && y < spec_.height)) return std::nullopt;
  return std::make_pair(static_cast<int>(x), static_cast<int>(y));
}

void GridRegion::require_same_grid(const GridRegion& o) const {
  if (!(spec_ == o.spec_)) throw DomainError("regions live on different grids");
}

GridRegion GridRegion::operator|(const GridRegion& o) const {
  require_same_grid(o);
  GridRegion r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= o.words_[i];
  return r;
}

GridRegion GridRegion::operator&(const GridRegion& o) const {
  require_same_grid(o);
  GridRegion r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
  return r;
}

GridRegion GridRegion::minus(const GridRegion& o) const {
  require_same_grid(o);
  GridRegion r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
  return r;
}

GridRegion GridRegion::complement() const {
  GridRegion r = *this;
  for (auto& w : r.words_) w = ~w;
  const std::size_t bits = static_cast<std::size_t>(spec_.width) * static_cast<std::size_t>(spec_.height);
  if (bits % 64) r.words_.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
  return r;
}

bool GridRegion::subset_of(const GridRegion& o) const {
  require_same_grid(o);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~o.words_[i]) return false;
  }
  return true;
}

bool GridRegion::intersects(const GridRegion& o) const {
  require_same_grid(o);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & o.words_[i]) return true;
  }
  return false;
}

bool GridRegion::operator==(const GridRegion& o) const { return spec_ == o.spec_ && words_ == o.words_; }

GridRegion rasterize_predicate(const GridSpec& spec, const std::function<bool(cplx)>& inside) {
  GridRegion r(spec);
  for (int j = 0; j < spec.height; ++j) {
    for (int i = 0; i < spec.width; ++i) {
      if (inside(spec.center(i, j))) r.set(i, j);
    }
  }
  return r;
}

GridRegion rasterize_disk(const GridSpec& spec, cplx c, double radius) {
  if (!(radius >= 0.0)) throw DomainError("disk radius must be nonnegative");
  const double lim = radius + 0.5 * spec.h;
  return rasterize_predicate(spec, [&](cplx z) { return std::abs(z - c) <= lim; });
}

GridRegion rasterize_circle(const GridSpec& spec, cplx c, double radius) {
  if (!(radius > 0.0)) throw DomainError("circle radius must be positive");
  return rasterize_predicate(spec, [&](cplx z) { return std::abs(std::abs(z - c) - radius) <= 0.5 * spec.h; });
}

GridRegion rasterize_annulus(const GridSpec& spec, cplx c, double r_in, double r_out) {
  if (!(r_in >= 0.0) || !(r_out >= r_in)) throw DomainError("annulus needs 0 <= r_in <= r_out");
  return rasterize_predicate(spec, [&](cplx z) {
    const double d = std::abs(z - c);
    return d >= r_in - 0.5 * spec.h && d <= r_out + 0.5 * spec.h;
  });
}

GridRegion rasterize_point(const GridSpec& spec, cplx z) {
  GridRegion r(spec);
  const auto cell = r.cell_of(z);
  if (!cell) throw DomainError("point lies outside the grid");
  r.set(cell->first, cell->second);
  return r;
}

std::vector<double> squared_distance_field(const GridRegion& s, const CellBox& window) {
  if (window.empty()) return {};
  const int w = window.i1 - window.i0 + 1;
  const int ht = window.j1 - window.j0 + 1;
  std::vector<double> grid(static_cast<std::size_t>(w) * ht);
  for (int j = 0; j < ht; ++j) {
    for (int i = 0; i < w; ++i) grid[static_cast<std::size_t>(j) * w + i] = s.test(window.i0 + i, window.j0 + j) ? 0.0 : kFar;
  }
  const int n = std::max(w, ht);
  std::vector<double> f(n), d(n), z(n + 1);
  std::vector<int> v(n);
  for (int i = 0; i < w; ++i) {
    for (int j = 0; j < ht; ++j) f[j] = grid[static_cast<std::size_t>(j) * w + i];
    distance_1d(f, d, v, z, ht);
    for (int j = 0; j < ht; ++j) grid[static_cast<std::size_t>(j) * w + i] = d[j];
  }
  for (int j = 0; j < ht; ++j) {
    for (int i = 0; i < w; ++i) f[i] = grid[static_cast<std::size_t>(j) * w + i];
    distance_1d(f, d, v, z, w);
    for (int i = 0; i < w; ++i) grid[static_cast<std::size_t>(j) * w + i] = d[i];
  }
  return grid;
}

GridRegion neighborhood(const GridRegion& s, double r) {
  if (!(r >= s.h() * (1.0 - 1e-12))) throw DomainError("radius below resolution");
  GridRegion out(s.spec());
  if (s.empty()) return out;
  const double rc = r / s.h();
  const CellBox win = expand(s.bbox(), static_cast<int>(std::ceil(rc)) + 1, s.spec());
  const auto sq = squared_distance_field(s, win);
  const double lim = rc * rc * (1.0 + 1e-12);
  const int w = win.i1 - win.i0 + 1;
  for (int j = win.j0; j <= win.j1; ++j) {
    for (int i = win.i0; i <= win.i1; ++i) {
      if (sq[static_cast<std::size_t>(j - win.j0) * w + (i - win.i0)] <= lim) out.set(i, j);
    }
  }
  return out;
}

double distance(cplx z, const GridRegion& s) {
  const CellBox b = s.bbox();
  if (b.empty()) throw DomainError("distance to an empty region");
  double best = std::numeric_limits<double>::infinity();
  for (int j = b.j0; j <= b.j1; ++j) {
    for (int i = b.i0; i <= b.i1; ++i) {
      if (s.test(i, j)) best = std::min(best, std::abs(z - s.center(i, j)));
    }
  }
  return best;
}

GridRegion polynomial_hull(const GridRegion& s) {
  GridRegion out = s;
  const CellBox win = expand(s.bbox(), 1, s.spec());
  if (win.empty()) return out;
  const int w = win.i1 - win.i0 + 1;
  const int ht = win.j1 - win.j0 + 1;
  std::vector<std::uint8_t> reached(static_cast<std::size_t>(w) * ht, 0);
  std::vector<int> stack;
  auto push = [&](int i, int j) {
    const std::size_t idx = static_cast<std::size_t>(j) * w + i;
    if (reached[idx] || s.test(win.i0 + i, win.j0 + j)) return;
    reached[idx] = 1;
    stack.push_back(static_cast<int>(idx));
  };
  for (int i = 0; i < w; ++i) {
    push(i, 0);
    push(i, ht - 1);
  }
  for (int j = 0; j < ht; ++j) {
    push(0, j);
    push(w - 1, j);
  }
  while (!stack.empty()) {
    const int idx = stack.back();
    stack.pop_back();
    const int i = idx % w;
    const int j = idx / w;
    if (i > 0) push(i - 1, j);
    if (i + 1 < w) push(i + 1, j);
    if (j > 0) push(i, j - 1);
    if (j + 1 < ht) push(i, j + 1);
  }
  for (int j = 0; j < ht; ++j) {
    for (int i = 0; i < w; ++i) {
      if (!reached[static_cast<std::size_t>(j) * w + i]) out.set(win.i0 + i, win.j0 + j);
    }
  }
  return out;
}

bool is_polynomially_convex(const GridRegion& s) { return polynomial_hull(s) == s; }

UnionHull hull_of_union(const std::vector<GridRegion>& parts) {
  if (parts.empty()) throw DomainError("hull of an empty family");
  GridRegion uni(parts[0].spec());
  UnionHull out{GridRegion(parts[0].spec())};
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.size(); ++b) out.overlap = out.overlap || parts[a].intersects(parts[b]);
    uni = uni | parts[a];
  }
  const GridRegion whole = polynomial_hull(uni);
  GridRegion each(parts[0].spec());
  for (const auto& p : parts) each = each | polynomial_hull(p);
  out.identity_holds = (each == whole);
  out.region = out.overlap ? whole : each;
  return out;
}

Prop1016Report prop1016_construct(const std::vector<GridRegion>& W, int k_max, const Prop1016Options& opts) {
  Prop1016Report rep;
  if (W.empty()) return rep;
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  const GridSpec& spec = W[0].spec();
  for (const auto& w : W) {
    if (!(w.spec() == spec)) throw DomainError("all W_j must share one grid");
  }
  if (1.0 / k_max < 3.0 * spec.h * (1.0 - 1e-12)) throw DomainError("resolution too coarse: need 1/k_max >= 3h");
  for (std::size_t j = 0; j < W.size(); ++j) {
    if (!is_polynomially_convex(W[j]))
      throw DomainError("W_" + std::to_string(j + 1) + " is not polynomially convex");
  }
  const int J = static_cast<int>(W.size());

  rep.union_w = GridRegion(spec);
  for (const auto& w : W) rep.union_w = rep.union_w | w;

  // Distance from cells near W_j to the union of the earlier W_l; all radii 1/k are <= 1.
  const int reach = static_cast<int>(std::ceil(1.0 / spec.h)) + 1;
  std::vector<CellBox> windows(J);
  std::vector<std::vector<double>> dist_sq(J);
  GridRegion earlier(spec);
  for (int j = 0; j < J; ++j) {
    windows[j] = W[j].bbox();
    if (j > 0 && !windows[j].empty()) dist_sq[j] = squared_distance_field(earlier, expand(windows[j], reach, spec));
    earlier = earlier | W[j];
  }

  auto carve = [&](int k, int j) {
    if (j == 0 || windows[j].empty()) return W[j];
    GridRegion L(spec);
    const CellBox win = expand(windows[j], reach, spec);
    const int w = win.i1 - win.i0 + 1;
    const double rc = 1.0 / (k * spec.h);
    const double lim = rc * rc * (1.0 - 1e-12);
    for (int jj = windows[j].j0; jj <= windows[j].j1; ++jj) {
      for (int ii = windows[j].i0; ii <= windows[j].i1; ++ii) {
        if (W[j].test(ii, jj) && dist_sq[j][static_cast<std::size_t>(jj - win.j0) * w + (ii - win.i0)] >= lim)
          L.set(ii, jj);
      }
    }
    return L;
  };

  for (int k = 1; k <= k_max; ++k) {
    ConstructionTrace tr{k, {}, {}, GridRegion(spec), GridRegion(spec), GridRegion(spec)};
    GridRegion union_k(spec);
    for (int j = 0; j < std::min(k, J); ++j) {
      GridRegion L = carve(k, j);
      GridRegion K = polynomial_hull(L);
      rep.hulls_idempotent = rep.hulls_idempotent && is_polynomially_convex(K);
      for (const auto& prev : tr.L) rep.parts_disjoint = rep.parts_disjoint && !prev.intersects(L);
      tr.G = tr.G | L;
      union_k = union_k | K;
      tr.L.push_back(std::move(L));
      tr.K.push_back(std::move(K));
    }
    tr.F = polynomial_hull(tr.G);
    rep.hulls_idempotent = rep.hulls_idempotent && is_polynomially_convex(tr.F);
    rep.hull_equals_union_of_parts = rep.hull_equals_union_of_parts && (tr.F == union_k);
    rep.within_union = rep.within_union && tr.F.subset_of(rep.union_w);
    if (!rep.traces.empty()) rep.ascending = rep.ascending && rep.traces.back().F.subset_of(tr.F);
    tr.V = neighborhood(tr.F, 1.0 / (3.0 * k));
    if (!opts.keep_parts) {
      tr.L.clear();
      tr.K.clear();
    }
    rep.traces.push_back(std::move(tr));
  }

  const ConstructionTrace& last = rep.traces.back();
  rep.shell_area = last.V.minus(last.F).area();

  // Excess of the finite intersections, by a backward sweep of suffix intersections.
  rep.excess.resize(k_max);
  GridRegion suffix = last.V;
  for (int m = k_max; m >= 1; --m) {
    if (m < k_max) suffix = suffix & rep.traces[m - 1].V;
    rep.excess[m - 1] = {m, suffix.minus(rep.union_w).area()};
  }

  // Missing cells at k_max and their distance to F_{k_max}.
  const GridRegion missing = rep.union_w.minus(last.F);
  rep.missing_at_kmax = missing.count();
  if (rep.missing_at_kmax > 0 && !last.F.empty()) {
    const CellBox win = unite(rep.union_w.bbox(), last.F.bbox());
    const auto sq = squared_distance_field(last.F, win);
    const int w = win.i1 - win.i0 + 1;
    double worst = 0.0;
    for (int j = win.j0; j <= win.j1; ++j) {
      for (int i = win.i0; i <= win.i1; ++i) {
        if (missing.test(i, j)) worst = std::max(worst, sq[static_cast<std::size_t>(j - win.j0) * w + (i - win.i0)]);
      }
    }
    rep.max_missing_distance_at_kmax = std::sqrt(worst) * spec.h;
  }

  // Distances between distinct cell centers are at least h, so every k >= 1/h carves
  // exactly the cells of earlier W_l and F_k is constant from there on.
  rep.limit_k = std::max({J, k_max, static_cast<int>(std::ceil(1.0 / spec.h - 1e-9))});
  GridRegion G(spec);
  for (int j = 0; j < J; ++j) G = G | carve(rep.limit_k, j);
  rep.limit_union = polynomial_hull(G);
  const GridRegion limit_missing = rep.union_w.minus(rep.limit_union);
  rep.limit_missing_cells = limit_missing.count();
  const CellBox mb = limit_missing.bbox();
  for (int j = mb.j0; j <= mb.j1 && !mb.empty(); ++j) {
    for (int i = mb.i0; i <= mb.i1; ++i) {
      if (!limit_missing.test(i, j)) continue;
      bool adjacent = false;
      for (int dj = -1; dj <= 1 && !adjacent; ++dj) {
        for (int di = -1; di <= 1 && !adjacent; ++di) {
          const int a = i + di;
          const int b = j + dj;
          if (a >= 0 && b >= 0 && a < spec.width && b < spec.height && rep.limit_union.test(a, b)) adjacent = true;
        }
      }
      if (!adjacent) ++rep.limit_missing_beyond_shell;
    }
  }
  return rep;
}

void write_region(std::ostream& os, const GridRegion& r, std::uint64_t seed, const std::string& config_hash) {
  const GridSpec& s = r.spec();
  std::ostringstream head;
  head.precision(17);
  head << s.origin.real() << ' ' << s.origin.imag() << ' ' << s.h << ' ' << s.width << ' ' << s.height;
  os << "PKRGN format_version=1\n# seed=" << seed << " config_hash=" << config_hash << '\n' << head.str() << '\n';
  for (int j = 0; j < s.height; ++j) {
    bool cur = false;
    int run = 0;
    bool first = true;
    for (int i = 0; i < s.width; ++i) {
      if (r.test(i, j) == cur) {
        ++run;
        continue;
      }
      os << (first ? "" : " ") << run;
      first = false;
      cur = !cur;
      run = 1;
    }
    os << (first ? "" : " ") << run << '\n';
  }
}

GridRegion read_region(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("PKRGN", 0) != 0) throw DomainError("not a region file");
  if (line.find("format_version=1") == std::string::npos) throw DomainError("unsupported region format version");
  auto next_data = [&](std::string& out) {
    while (std::getline(is, out)) {
      if (!out.empty() && out[0] != '#') return true;
    }
    return false;
  };
  if (!next_data(line)) throw DomainError("region file lacks a grid line");
  GridSpec spec;
  double ore = 0, oim = 0;
  std::istringstream hs(line);
  if (!(hs >> ore >> oim >> spec.h >> spec.width >> spec.height)) throw DomainError("malformed region grid line");
  spec.origin = cplx(ore, oim);
  GridRegion r(spec);
  for (int j = 0; j < spec.height; ++j) {
    if (!next_data(line)) throw DomainError("region file ended early");
    std::istringstream rs(line);
    int i = 0;
    bool cur = false;
    long run = 0;
    while (rs >> run) {
      if (run < 0 || i + run > spec.width) throw DomainError("run lengths overflow the row");
      if (cur) {
        for (long t = 0; t < run; ++t) r.set(i + static_cast<int>(t), j);
      }
      i += static_cast<int>(run);
      cur = !cur;
    }
    if (i != spec.width) throw DomainError("row run lengths do not sum to the width");
  }
  return r;
}

}  // namespace plurikit
