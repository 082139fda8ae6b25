#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "plurikit/brackets.hpp"
#include "plurikit/errors.hpp"
#include "plurikit/series.hpp"

using namespace plurikit;

namespace {

// sum_j z0^j in P^n.
FormalSeries geometric(int nvars, int terms) {
  FormalSeries f(nvars);
  for (int j = 0; j < terms; ++j) {
    MultiIndex a(nvars, 0);
    a[0] = j;
    f.push_back(HomoPoly::monomial(a));
  }
  return f;
}

// sum_j (j z1)^j for j >= 1.
FormalSeries factorial_like(int nvars, int terms) {
  FormalSeries f(nvars);
  for (int j = 1; j <= terms; ++j) {
    CVec a(nvars, 0.0);
    a[1] = static_cast<double>(j);
    f.push_back(HomoPoly::linear_power(a, j));
  }
  return f;
}

}  // namespace

TEST_CASE("formal series structure") {
  FormalSeries f(2);
  f.push_back(HomoPoly::monomial({1, 0}));
  CHECK_THROWS_AS(f.push_back(HomoPoly::monomial({0, 1})), DomainError);
  f.push_back(3, HomoPoly::zero(2));
  CHECK(f.size() == 2);
  CHECK_THROWS_AS(f.push_back(2, HomoPoly::monomial({2, 0})), DomainError);
  CHECK_THROWS_AS(f.push_back(HomoPoly::monomial({1, 1, 2})), DomainError);
}

TEST_CASE("hartogs global test") {
  const HartogsResult g = hartogs_global_test(geometric(2, 16));
  CHECK(g.converges_estimate);
  CHECK(g.witness_c == doctest::Approx(1.0));
  const HartogsResult d = hartogs_global_test(factorial_like(2, 16));
  CHECK_FALSE(d.converges_estimate);
  CHECK(d.c[15] == doctest::Approx(std::pow(16.0, 16.0 / 17.0)));
  FormalSeries zeros(2);
  for (int j = 0; j < 10; ++j) zeros.push_back(j, HomoPoly::zero(2));
  CHECK_THROWS_AS(hartogs_global_test(zeros), DomainError);
  CHECK_THROWS_AS(hartogs_global_test(FormalSeries(2)), DomainError);
  CHECK_THROWS_AS(hartogs_global_test(geometric(2, 5)), DomainError);
}

TEST_CASE("restriction to a direction") {
  for (const auto& [deg, l] : restrict_direction(geometric(2, 10), ProjPoint{1.0, 0.0})) CHECK(l == 0.0);
  const FormalSeries f = factorial_like(3, 12);
  for (const auto& [deg, l] : restrict_direction(f, ProjPoint{1.0, 0.0, 1.0})) CHECK(l == -INFINITY);
  for (const auto& [deg, l] : restrict_direction(f, ProjPoint{1.0, 1.0, 0.0})) {
    const double j = static_cast<double>(deg);
    CHECK(l == doctest::Approx(j * std::log(j / std::sqrt(2.0))));
  }
}

TEST_CASE("membership verdicts") {
  const FormalSeries f = factorial_like(3, 24);
  const DirectionVerdict a = conv_membership(f, ProjPoint{1.0, 0.0, 1.0});
  CHECK(a.status == Membership::in);
  const DirectionVerdict b = conv_membership(f, ProjPoint{1.0, 1.0, 0.0});
  CHECK(b.status == Membership::out);
  CHECK(b.sup_seen == doctest::Approx(24.0 / std::sqrt(2.0)));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 10; ++t) {
    CVec v(3);
    for (auto& c : v) c = cplx(g(rng), g(rng));
    CHECK(conv_membership(geometric(3, 20), ProjPoint(v)).status == Membership::in);
  }
  // Representatives and powers do not change the verdict.
  const ProjPoint Z{0.3, 0.2, 1.0};
  const DirectionVerdict base = conv_membership(f, Z);
  for (int t = 1; t <= 10; ++t) {
    const cplx s = std::polar(0.5 * t, 0.9 * t);
    CHECK(conv_membership(f, ProjPoint{0.3 * s, 0.2 * s, s}).status == base.status);
  }
  FormalSeries powered(3);
  for (const auto& [deg, p] : f.components()) powered.push_back(p.pow(3));
  const DirectionVerdict pw = conv_membership(powered, Z);
  CHECK(pw.status == base.status);
  CHECK(pw.sup_seen == doctest::Approx(base.sup_seen).epsilon(1e-12));
}

TEST_CASE("main construction on one point of P^1") {
  const std::vector<SampledSet> K{SampledSet({ProjPoint{1.0, 0.0}})};
  const SeriesBuild b = build_series_main(K, default_cover_schedule(2, 6, 11), 4);
  CHECK(b.report.in_bound_holds);
  CHECK(b.report.every_cover_witnessed);
  CHECK(conv_membership(b.series, ProjPoint{1.0, 0.0}).status == Membership::in);
  CHECK(conv_membership(b.series, ProjPoint{1.0, 1.0}).status == Membership::out);
  long long prev = -1;
  for (const auto& [deg, p] : b.series.components()) {
    CHECK(deg > prev);
    prev = deg;
  }
  for (const auto& c : b.report.certificates) CHECK(reverify(c, &K[0]).ok);
}

TEST_CASE("main construction without sets") {
  const SeriesBuild b = build_series_main({}, default_cover_schedule(3, 4, 5), 3);
  REQUIRE_FALSE(b.series.empty());
  for (const auto& c : b.report.certificates) CHECK(conv_membership(b.series, c.point).status == Membership::out);
  CHECK_THROWS_AS(build_series_main({}, default_cover_schedule(3, 4, 5), 1), DomainError);
}

TEST_CASE("gamma points") {
  const ProjPoint g0 = gamma_point(0.0);
  CHECK(g0 == ProjPoint({1.0, 0.0, 1.0}));
  CHECK(gamma_point(1.0) == ProjPoint({1.0, 1.0, std::exp(1.0)}));
  const ProjPoint g50 = gamma_point(50.0);
  for (const auto& c : g50.coords()) CHECK(std::isfinite(std::abs(c)));
  CHECK(std::abs(g50[2]) == doctest::Approx(1.0));
  CHECK(gamma_point(cplx(-800.0, 2.0))[0].real() > 0.0);
}

TEST_CASE("gamma pipeline small run") {
  const GridSpec s = GridSpec::box(-2.0, 4.0, -2.0, 2.0, 1.0 / 16);
  GammaSpec spec;
  CHECK(gamma_pipeline(spec, 2).empty);
  spec.W = {rasterize_circle(s, 0.0, 1.0)};
  CHECK_THROWS_AS(gamma_pipeline(spec, 2), DomainError);

  spec.W = {rasterize_disk(s, 0.0, 1.0), rasterize_point(s, 3.0)};
  GammaOptions o;
  o.sample_stride = 4;
  o.cover_stride = 8;
  const GammaReport rep = gamma_pipeline(spec, 2, {}, o);
  REQUIRE(rep.build.has_value());
  CHECK(rep.cover_hypothesis_holds);
  CHECK(rep.build->report.in_bound_holds);
  const auto& series = rep.build->series;
  const CellBox pt = spec.W[1].bbox();
  CHECK(conv_membership(series, gamma_point(spec.W[1].center(pt.i0, pt.j0), spec)).status == Membership::in);
  CHECK(conv_membership(series, gamma_point(cplx(0.2, -0.3), spec)).status == Membership::in);
  CHECK(conv_membership(series, gamma_point(cplx(-1.8, 1.2), spec)).status == Membership::out);
}

TEST_CASE("series and verdict files") {
  const FormalSeries f = factorial_like(3, 6);
  std::stringstream ss;
  write_series(ss, f, {{"seed", 9}});
  const FormalSeries back = read_series(ss);
  REQUIRE(back.size() == f.size());
  const ProjPoint Z{1.0, 0.5, 0.25};
  for (std::size_t l = 0; l < f.size(); ++l) {
    CHECK(back.components()[l].first == f.components()[l].first);
    CHECK(log_bracket(back.components()[l].second, Z) == doctest::Approx(log_bracket(f.components()[l].second, Z)));
  }
  const auto j = verdict_to_json(Z, conv_membership(f, Z));
  CHECK(j.at("status").is_string());
  std::stringstream bad("{\"format_version\":1,\"kind\":\"series\",\"n\":1,\"truncation\":2}\n");
  CHECK_THROWS_AS(read_series(bad), DomainError);
}
