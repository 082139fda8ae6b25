#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "plurikit/errors.hpp"
#include "plurikit/radial.hpp"

using namespace plurikit;

TEST_CASE("lambda matches a 30-digit root of the lambda equation") {
  // Values from an independent multiprecision root finder.
  struct Row {
    double rho, s, lambda;
  };
  for (const Row& row : {Row{1.0, 0.1, 0.70947206912322757}, Row{0.5, 0.1, -0.034248064785096419},
                         Row{2.0, 0.05, 1.5136004293233929}, Row{1.0, 0.3, 1.9787237728420121}}) {
    const double l = solve_lambda(row.rho, row.s);
    CHECK(l == doctest::Approx(row.lambda).epsilon(1e-10));
    CHECK(lambda_residual(row.rho, row.s, l) <= 1e-10);
    CHECK(l > crossing_point(row.rho, row.s));
  }
}

TEST_CASE("lambda is increasing in rho") {
  CHECK(solve_lambda(0.5, 0.1) < solve_lambda(1.0, 0.1));
  const double l = solve_lambda(1.0, 0.1);
  const double h = 1e-6;
  const double fd = (solve_lambda(1.0 + h, 0.1) - solve_lambda(1.0 - h, 0.1)) / (2 * h);
  CHECK(fd == doctest::Approx(dlambda_drho(1.0, 0.1, l)).epsilon(1e-5));
}

TEST_CASE("lambda regime boundary") {
  const double b = branch_threshold(1.0);
  CHECK(b == doctest::Approx(0.5 * std::log(2.0)));
  CHECK_THROWS_WITH_AS(solve_lambda(1.0, b), "branch 1 applies; λ undefined", DomainError);
  CHECK_THROWS_AS(solve_lambda(1.0, b + 0.1), DomainError);
  CHECK_NOTHROW(solve_lambda(1.0, b - 1e-6));
}

TEST_CASE("closed form examples") {
  const double b = 0.5 * std::log(2.0);
  CHECK(sigma_star_ball({1.0, b, 2.0}) == doctest::Approx(-0.11157177565710488).epsilon(1e-12));
  CHECK(sigma_star_ball_detail({1.0, b, 2.0}).branch == 1);
  for (double rho : {0.3, 1.0, 4.0}) {
    for (double r : {0.0, 0.1, 2.0, 50.0}) CHECK(sigma_star_ball({rho, 0.0, r}) == 0.0);
  }
  const double l = solve_lambda(1.0, 0.1);
  const SigmaValue out = sigma_star_ball_detail({1.0, 0.1, std::exp(l) * 1.001});
  CHECK(out.branch == 3);
  CHECK(out.value == 0.0);
  CHECK(sigma_star_ball({2.0, 0.7, 1.5}) == -0.7);
}

TEST_CASE("closed form is continuous across branch boundaries") {
  for (double rho : {0.5, 1.0, 2.0}) {
    const double b = branch_threshold(rho);
    for (double s : {0.2 * b, 0.6 * b}) {
      const double l = solve_lambda(rho, s);
      const double below = sigma_star_ball({rho, s, std::exp(l) * (1 - 1e-12)});
      const double above = sigma_star_ball({rho, s, std::exp(l) * (1 + 1e-12)});
      CHECK(std::abs(below - above) <= 1e-8);
      CHECK(std::abs(sigma_star_ball({rho, s, rho * (1 + 1e-12)}) + s) <= 1e-8);
    }
    for (double r : {rho * 1.5, rho * 4.0}) {
      const double s1 = sigma_star_ball({rho, b, r});
      const double s2 = sigma_star_ball({rho, b * (1 - 1e-10), r});
      CHECK(std::abs(s1 - s2) <= 1e-8);
    }
  }
}

TEST_CASE("envelope oracle matches the closed form") {
  for (double rho : {0.5, 1.0, 2.0}) {
    for (double s : {0.05, 0.1, 0.3466, 0.5, 1.0}) {
      const EnvelopeTable tab = convex_envelope_oracle(rho, s, 4096, default_envelope_end(rho, s));
      CHECK(envelope_gap(tab, rho, s) <= 1e-6);
      for (std::size_t i = 0; i < tab.grid.size(); ++i) CHECK(tab.v_values[i] <= tab.w_values[i] + 1e-12);
      for (std::size_t i = 1; i + 1 < tab.grid.size(); ++i) {
        CHECK(tab.v_values[i + 1] - 2 * tab.v_values[i] + tab.v_values[i - 1] >= -1e-10);
        CHECK(tab.v_values[i + 1] >= tab.v_values[i]);
      }
    }
  }
}

TEST_CASE("envelope in the large-s branch is the affine piece") {
  const EnvelopeTable tab = convex_envelope_oracle(1.0, 0.5, 512, 6.0);
  const double b = branch_threshold(1.0);
  for (std::size_t i = 0; i < tab.grid.size(); ++i) CHECK(tab.v_values[i] == doctest::Approx(-0.5 + b + tab.grid[i]));
  CHECK_THROWS_AS(convex_envelope_oracle(1.0, 0.5, 32, 6.0), DomainError);
  CHECK_THROWS_AS(convex_envelope_oracle(1.0, 0.5, 128, 1.0), DomainError);
}

TEST_CASE("singleton extremal function") {
  CHECK(sigma_singleton(0.0, 2.0) == -2.0);
  CHECK(sigma_star_singleton(0.0, 2.0) == 0.0);
  CHECK(sigma_star_singleton(1.0, 7.0) == 0.0);
  CHECK(sigma_singleton(1.0, 7.0) == 0.0);
}

TEST_CASE("shrinking balls") {
  const auto seq = shrinking_ball_limit(1.0, 1.0, 10000);
  CHECK(seq.back() == 0.0);
  for (std::size_t i = 1; i < seq.size(); ++i) CHECK(seq[i] >= seq[i - 1]);
  for (double v : shrinking_ball_limit(1.0, 0.0, 50)) CHECK(v == 0.0);
}
