#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "plurikit/brackets.hpp"
#include "plurikit/errors.hpp"
#include "plurikit/homo_poly.hpp"
#include "plurikit/poly_io.hpp"
#include "plurikit/proj_point.hpp"

using namespace plurikit;

namespace {

HomoPoly var(int nvars, int i, long long power = 1) {
  CVec a(nvars, 0.0);
  a[i] = 1.0;
  return HomoPoly::linear_power(a, power);
}

CVec random_vec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  CVec v(n);
  for (auto& c : v) c = cplx(g(rng), g(rng));
  return v;
}

HomoPoly random_dense(std::mt19937_64& rng, int nvars, int degree) {
  std::normal_distribution<double> g;
  TermMap t;
  // All monomials of the given degree in up to three variables.
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) {
      MultiIndex alpha(nvars, 0);
      alpha[0] = a;
      if (nvars == 2) {
        if (a + b != degree) continue;
        alpha[1] = b;
      } else {
        alpha[1] = b;
        alpha[2] = degree - a - b;
      }
      t[alpha] = cplx(g(rng), g(rng));
    }
  }
  return HomoPoly::from_terms(nvars, t);
}

}  // namespace

TEST_CASE("projective point canonical form") {
  ProjPoint z{cplx(0, 2), cplx(0, 2)};
  CHECK(z[0].imag() == doctest::Approx(0.0));
  CHECK(z[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(ProjPoint{1.0, 1.0} == ProjPoint{cplx(0, -3), cplx(0, -3)});
  CHECK_FALSE(ProjPoint{1.0, 0.0} == ProjPoint{1.0, 1.0});
  CHECK_THROWS_AS(ProjPoint({0.0, 0.0}), DomainError);
  ProjPoint w{0.0, cplx(-2, 0), 1.0};
  CHECK(w[0] == cplx(0.0));
  CHECK(w[1].real() > 0.0);
}

TEST_CASE("bracket examples") {
  CHECK(bracket(var(2, 1), ProjPoint{1.0, 1.0}) == doctest::Approx(0.7071067812).epsilon(1e-10));
  CHECK(bracket(HomoPoly::constant(2, 1.0), ProjPoint{0.3, 2.0}) == 1.0);
  CHECK(bracket(var(2, 1, 3), ProjPoint{1.0, 1.0}) == doctest::Approx(bracket(var(2, 1), ProjPoint{1.0, 1.0})));
  CHECK_THROWS_WITH_AS(bracket(HomoPoly::zero(2), ProjPoint{1.0, 0.0}), "bracket undefined for zero polynomial",
                       DomainError);
  CHECK(HomoPoly::zero(3).degree() == -1);
}

TEST_CASE("homogeneity and scaling invariance") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int nv = 2 + trial % 2;
    const int deg = 1 + trial % 6;
    const HomoPoly p = random_dense(rng, nv, deg);
    const CVec z = random_vec(rng, nv);
    const cplx lam = random_vec(rng, 1)[0];
    CVec lz = z;
    for (auto& c : lz) c *= lam;
    const cplx lhs = p(lz);
    const cplx rhs = std::pow(lam, deg) * p(z);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
    CHECK(std::abs(log_bracket(p, lz) - log_bracket(p, z)) <= 1e-12 * std::max(1.0, std::abs(log_bracket(p, z))));
    for (int m : {2, 3, 5}) CHECK(log_bracket(p.pow(m), z) == doctest::Approx(log_bracket(p, z)).epsilon(1e-12));
  }
}

TEST_CASE("inhomogeneous term map is rejected") {
  TermMap t{{{1, 0}, 1.0}, {{2, 0}, 1.0}};
  CHECK_THROWS_AS(HomoPoly::from_terms(2, t), DomainError);
}

TEST_CASE("sup over sample sets") {
  CHECK(sup_bracket_over_set(var(2, 1), std::vector<ProjPoint>{ProjPoint{1.0, 0.0}}).set_sup == 0.0);
  CHECK(sup_bracket_over_set(var(2, 0), std::vector<ProjPoint>{ProjPoint{0.0, 1.0}}).set_sup == 0.0);
  std::vector<ProjPoint> circle;
  for (int i = 0; i < 1000; ++i) circle.push_back(ProjPoint{1.0, std::polar(1.0, 2 * std::numbers::pi * i / 1000)});
  const NormReport r = sup_bracket_over_set(var(2, 1), circle);
  CHECK(r.set_sup >= 0.7071 - 1e-3);
  CHECK(r.method == NormMethod::analytic);
  CHECK(r.global_sup == doctest::Approx(1.0));
  CHECK_THROWS_AS(sup_bracket_over_set(var(2, 1), std::vector<ProjPoint>{}), DomainError);
}

TEST_CASE("analytic sup of linear powers") {
  CHECK(analytic_sup_linear_power(CVec{0.0, 1.0, 0.0}, 5) == doctest::Approx(1.0));
  CHECK(analytic_sup_linear_power(CVec{1.0, 1.0}, 1) == doctest::Approx(1.4142135624));
  CHECK(analytic_sup_linear_power(CVec{3.0, 4.0}, 2) == doctest::Approx(5.0));
  CHECK_THROWS_AS(analytic_sup_linear_power(CVec{0.0, 0.0}, 2), DomainError);
}

TEST_CASE("certified global bounds") {
  // Monomial z0^a z1^b in the standard frame: exact sup prod (e_i/d)^(e_i/2d).
  const HomoPoly m = var(2, 0, 1) * var(2, 1, 3);
  const GlobalBound gb = certified_global_sup(m);
  CHECK(gb.exact);
  CHECK(gb.value() == doctest::Approx(std::pow(0.25, 0.125) * std::pow(0.75, 0.375)).epsilon(1e-12));
  CHECK(sampled_global_sup(m) <= gb.value() + 1e-12);
  CHECK(sampled_global_sup(m) >= gb.value() - 1e-4);
  // Non-orthogonal product: bound only.
  const HomoPoly skew = HomoPoly::linear_power(CVec{1.0, 1.0}) * var(2, 0);
  const GlobalBound sb = certified_global_sup(skew);
  CHECK_FALSE(sb.exact);
  CHECK(sampled_global_sup(skew) <= sb.value() + 1e-12);
  // Expanded dense factor: Bombieri bound dominates samples.
  std::mt19937_64 rng(3);
  const HomoPoly dense = random_dense(rng, 3, 4);
  CHECK(sampled_global_sup(dense) <= certified_global_sup(dense).value() + 1e-12);
}

TEST_CASE("q gadget") {
  const HomoPoly q = q_gadget(ProjPoint{1.0, 0.0, 0.0}, 3, 2);
  const TermMap t = q.expand();
  REQUIRE(t.size() == 1);
  CHECK(t.begin()->first == MultiIndex{2, 0, 0});
  CHECK(std::abs(t.begin()->second - cplx(9.0)) < 1e-12);
  CHECK(bracket(q, ProjPoint{1.0, 0.0, 0.0}) == doctest::Approx(3.0));
  const ProjPoint x{1.0, 1.0};
  CHECK(bracket(q_gadget(x, 1, 1), x) == doctest::Approx(1.0));
  const HomoPoly q5 = q_gadget(ProjPoint{1.0, 1.0, 0.0}, 5, 3);
  CHECK(certified_global_sup(q5).exact);
  CHECK(certified_global_sup(q5).value() == doctest::Approx(5.0).epsilon(1e-12));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const ProjPoint X(random_vec(rng, 2 + trial % 2));
    const int k = 1 + trial % 9;
    const int d = 1 + trial % 7;
    const HomoPoly g = q_gadget(X, k, d);
    CHECK(std::abs(certified_global_sup(g).value() - k) <= 1e-9 * k);
    CHECK(std::abs(bracket(g, X) - k) <= 1e-9 * k);
  }
}

TEST_CASE("interpolation identity") {
  const HomoPoly p = var(3, 1, 2);
  const HomoPoly q = q_gadget(ProjPoint{1.0, 0.0, 0.0}, 2, 2);
  const HomoPoly h = interpolate_h(p, q, 1, 2);
  CHECK(h.degree() == 4);
  const ProjPoint z{1.0, 1.0, 0.0};
  CHECK(bracket(h, z) == doctest::Approx(std::sqrt(bracket(p, z) * bracket(q, z))).epsilon(1e-12));
  CHECK(bracket(interpolate_h(p, p, 2, 3), z) == doctest::Approx(bracket(p, z)));

  CHECK_THROWS_AS(interpolate_h(p, q, 2, 1), DomainError);
  CHECK_THROWS_AS(interpolate_h(p, q, 2, 4), DomainError);
  CHECK_THROWS_AS(interpolate_h(p, var(3, 0, 3), 1, 2), DomainError);

  std::mt19937_64 rng(5);
  const double bound = std::pow(certified_global_sup(p).value(), 0.5) * std::pow(2.0, 0.5);
  for (int i = 0; i < 1000; ++i) {
    const CVec zz = random_vec(rng, 3);
    const double lhs = log_bracket(h, zz);
    const double rhs = 0.5 * log_bracket(p, zz) + 0.5 * log_bracket(q, zz);
    if (std::isfinite(rhs)) CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    CHECK(std::exp(lhs) <= bound + 1e-9);
  }
}

TEST_CASE("polynomial round trip through JSON lines") {
  std::mt19937_64 rng(1);
  const HomoPoly dense = random_dense(rng, 3, 3);
  const HomoPoly fact = interpolate_h(dense, q_gadget(ProjPoint{1.0, 2.0, 0.5}, 4, 3), 2, 5).scaled(cplx(0.3, -1));
  for (const HomoPoly& p : {dense, fact, HomoPoly::constant(3, 2.5), HomoPoly::zero(3)}) {
    std::stringstream ss;
    write_poly(ss, p);
    const HomoPoly back = read_poly(ss);
    CHECK(back.degree() == p.degree());
    if (p.is_zero()) continue;
    const CVec z = random_vec(rng, 3);
    CHECK(log_bracket(back, z) == doctest::Approx(log_bracket(p, z)).epsilon(1e-12));
  }
  std::stringstream bad("{\"n\":1,\"degree\":2,\"terms\":1}\n{\"alpha\":[1,0],\"re\":1,\"im\":0}\n");
  CHECK_THROWS_AS(read_poly(bad), DomainError);
  CHECK(parse_point("[[1,0],[0,1]]") == ProjPoint{1.0, cplx(0, 1)});
  CHECK(parse_point("[1,0]") == ProjPoint{1.0, 0.0});
}
