#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "plurikit/errors.hpp"
#include "plurikit/planar.hpp"

using namespace plurikit;

namespace {

GridSpec coarse() { return GridSpec::box(-2.0, 4.0, -2.0, 2.0, 1.0 / 64.0); }

GridRegion random_blob(const GridSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_real_distribution<double> rad(0.05, 0.4);
  GridRegion r(spec);
  const int pieces = 1 + static_cast<int>(rng() % 4);
  for (int p = 0; p < pieces; ++p) {
    const cplx c(u(rng), u(rng));
    const double a = rad(rng);
    r = r | ((rng() % 2) ? rasterize_disk(spec, c, a) : rasterize_annulus(spec, c, a, a + 0.05));
  }
  return r;
}

}  // namespace

TEST_CASE("grid geometry") {
  const GridSpec s = coarse();
  CHECK(s.width == 384);
  CHECK(s.height == 256);
  CHECK(s.center(0, 0) == cplx(-2.0 + 1.0 / 128, -2.0 + 1.0 / 128));
  GridRegion r(s);
  CHECK(r.empty());
  r.set(3, 5);
  CHECK(r.test(3, 5));
  CHECK(r.count() == 1);
  CHECK(r.complement().count() == static_cast<std::size_t>(s.width) * s.height - 1);
}

TEST_CASE("neighborhood") {
  const GridSpec s = GridSpec::box(-2.0, 2.0, -2.0, 2.0, 1.0 / 64.0);
  const GridRegion dot = rasterize_point(s, 0.0);
  const GridRegion disk = neighborhood(dot, 1.0);
  const double expected = std::numbers::pi / (s.h * s.h);
  CHECK(std::abs(disk.count() - expected) <= 0.02 * expected);
  CHECK(neighborhood(GridRegion(s), 0.5).empty());
  const GridRegion blob = rasterize_disk(s, cplx(0.3, -0.2), 0.4);
  CHECK(blob.subset_of(neighborhood(blob, 0.1)));
  CHECK_THROWS_WITH_AS(neighborhood(blob, s.h / 2), "radius below resolution", DomainError);
  // Brute-force oracle on a small disk.
  const GridRegion n = neighborhood(blob, 0.25);
  for (int j = 0; j < s.height; j += 7) {
    for (int i = 0; i < s.width; i += 5) {
      const double d = distance(s.center(i, j), blob);
      if (std::abs(d - 0.25) > 1e-9) CHECK(n.test(i, j) == (d <= 0.25));
    }
  }
}

TEST_CASE("distance") {
  const GridSpec s = coarse();
  const GridRegion disk = rasterize_disk(s, 0.0, 1.0);
  CHECK(distance(0.1, disk) <= s.h);
  CHECK(std::abs(distance(2.0, disk) - 1.0) <= s.h);
  const GridRegion pts = rasterize_point(s, 0.0) | rasterize_point(s, 3.0);
  CHECK(std::abs(distance(1.0, pts) - 1.0) <= s.h);
  CHECK_THROWS_AS(distance(0.0, GridRegion(s)), DomainError);
}

TEST_CASE("polynomial hull oracle cases") {
  const GridSpec s = coarse();
  const GridRegion disk = rasterize_disk(s, 0.0, 1.0);
  CHECK(polynomial_hull(disk) == disk);
  CHECK(polynomial_hull(rasterize_circle(s, 0.0, 1.0)) == disk);
  CHECK(polynomial_hull(rasterize_annulus(s, 0.0, 1.0 - s.h, 1.0 + s.h)) == rasterize_disk(s, 0.0, 1.0 + s.h));
  const GridRegion pts = rasterize_point(s, 0.0) | rasterize_point(s, 1.0) | rasterize_point(s, cplx(0, 1));
  CHECK(polynomial_hull(pts) == pts);
  CHECK(polynomial_hull(GridRegion(s)).empty());
}

TEST_CASE("hull properties on random blobs") {
  const GridSpec s = GridSpec::box(-2.0, 2.0, -2.0, 2.0, 1.0 / 64.0);
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    const GridRegion a = random_blob(s, rng);
    const GridRegion ha = polynomial_hull(a);
    CHECK(polynomial_hull(ha) == ha);
    CHECK(a.subset_of(ha));
    const GridRegion b = a | random_blob(s, rng);
    CHECK(ha.subset_of(polynomial_hull(b)));
  }
}

TEST_CASE("hull of disjoint unions") {
  const GridSpec s = coarse();
  const GridRegion c1 = rasterize_circle(s, 0.0, 0.8);
  const GridRegion c2 = rasterize_circle(s, 2.5, 0.6);
  const UnionHull two = hull_of_union({c1, c2});
  CHECK_FALSE(two.overlap);
  CHECK(two.identity_holds);
  CHECK(two.region == (rasterize_disk(s, 0.0, 0.8) | rasterize_disk(s, 2.5, 0.6)));
  CHECK(hull_of_union({c1}).region == polynomial_hull(c1));
  const GridRegion d = rasterize_disk(s, 0.0, 1.0);
  const GridRegion p = rasterize_point(s, 3.0);
  CHECK(hull_of_union({d, p}).region == (d | p));
  const UnionHull ov = hull_of_union({d, rasterize_disk(s, 0.5, 1.0)});
  CHECK(ov.overlap);
  CHECK(ov.region == polynomial_hull(d | rasterize_disk(s, 0.5, 1.0)));
}

TEST_CASE("ascending construction: disk and far point") {
  const GridSpec s = coarse();
  const GridRegion disk = rasterize_disk(s, 0.0, 1.0);
  const GridRegion pt = rasterize_point(s, 2.0);
  const Prop1016Report rep = prop1016_construct({disk, pt}, 16);
  REQUIRE(rep.traces.size() == 16);
  CHECK(rep.traces[0].F == disk);
  for (int k = 2; k <= 16; ++k) CHECK(rep.traces[k - 1].F == (disk | pt));
  CHECK(rep.ascending);
  CHECK(rep.within_union);
  CHECK(rep.hull_equals_union_of_parts);
  CHECK(rep.parts_disjoint);
  CHECK(rep.limit_missing_cells == 0);
  for (const auto& row : rep.excess) CHECK(row.excess_area <= rep.shell_area);
}

TEST_CASE("ascending construction: single and overlapping regions") {
  const GridSpec s = coarse();
  const GridRegion disk = rasterize_disk(s, 0.0, 1.0);
  const Prop1016Report one = prop1016_construct({disk}, 8);
  for (const auto& tr : one.traces) CHECK(tr.F == disk);

  const GridRegion d2 = rasterize_disk(s, 1.5, 1.0);
  const Prop1016Report ov = prop1016_construct({disk, d2}, 20);
  CHECK(ov.ascending);
  CHECK(ov.within_union);
  CHECK(ov.hulls_idempotent);
  CHECK(ov.parts_disjoint);
  CHECK(ov.limit_missing_cells == 0);
  CHECK(ov.missing_at_kmax > 0);
  CHECK(ov.max_missing_distance_at_kmax <= 1.0 / 20 + s.h);
  for (int m : {1, 4, 16}) CHECK(ov.excess[m - 1].excess_area <= ov.shell_area);
}

TEST_CASE("ascending construction preconditions") {
  const GridSpec s = coarse();
  const GridRegion disk = rasterize_disk(s, 0.0, 1.0);
  CHECK_THROWS_WITH_AS(prop1016_construct({disk, rasterize_circle(s, 2.5, 0.5)}, 8), "W_2 is not polynomially convex",
                       DomainError);
  CHECK_THROWS_AS(prop1016_construct({disk}, 30), DomainError);
  CHECK(prop1016_construct({}, 4).traces.empty());
}

TEST_CASE("region file round trip") {
  const GridSpec s = coarse();
  const GridRegion r = rasterize_annulus(s, cplx(0.5, 0.1), 0.3, 0.7) | rasterize_point(s, 3.9);
  std::stringstream ss;
  write_region(ss, r, 17, "abc");
  CHECK(read_region(ss) == r);
  std::stringstream bad("PKRGN format_version=1\n0 0 1 2 1\n1 2\n");
  CHECK_THROWS_AS(read_region(bad), DomainError);
}
