#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "plurikit/brackets.hpp"
#include "plurikit/certificates.hpp"
#include "plurikit/errors.hpp"
#include "plurikit/radial.hpp"

using namespace plurikit;

namespace {

// iota of a polar grid on |z| <= rho, boundary circle included.
SampledSet radial_disk(double rho, int radii = 16, int angles = 64) {
  std::vector<cplx> zs{0.0};
  for (int a = 1; a <= radii; ++a) {
    const double r = rho * a / radii;
    for (int b = 0; b < angles; ++b) zs.push_back(std::polar(r, 2.0 * std::numbers::pi * b / angles));
  }
  return SampledSet::from_planar(zs);
}

void check_sound(const Certificate& c, const SampledSet& K) {
  const Verification v = reverify(c, &K);
  CHECK_MESSAGE(v.ok, v.reason);
  CHECK(c.point_val <= c.global_sup + 1e-9);
}

}  // namespace

TEST_CASE("sampled set dedup and membership") {
  const SampledSet K({ProjPoint{1.0, 0.0}, ProjPoint{2.0, 0.0}, ProjPoint{cplx(0, 1), 0.0}, ProjPoint{1.0, 1.0}});
  CHECK(K.size() == 2);
  CHECK(K.contains(ProjPoint{3.0, 0.0}));
  CHECK_FALSE(K.contains(ProjPoint{1.0, 1e-3}));
  CHECK(std::abs(K.min_distance(ProjPoint{0.0, 1.0}) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(SampledSet::from_planar({0.0, 1.0}).provenance() == Provenance::planar_grid);
  CHECK_THROWS_AS(SampledSet({ProjPoint{1.0, 0.0}, ProjPoint{1.0, 0.0, 0.0}}), DomainError);
}

TEST_CASE("q lower bound oracle examples") {
  const SampledSet K({ProjPoint{1.0, 0.0}});
  const ProjPoint Z{1.0, 1.0};
  const Certificate c = q_lower_bound(K, Z, 0.5);
  CHECK(c.status == CertStatus::ok);
  // z1 alone gives 1/sqrt(2); z1 times a power of conj(Z) . y approaches 1.
  CHECK(c.point_val >= 1.0 / std::sqrt(2.0));
  CHECK(c.point_val <= 1.0);
  CHECK(c.set_sup == 0.0);
  CHECK(c.global_sup <= 1.0);
  check_sound(c, K);

  const Certificate one = q_lower_bound(K, Z, 1.0);
  CHECK(one.point_val == doctest::Approx(1.0).epsilon(1e-9));
  check_sound(one, K);

  CHECK_THROWS_AS(q_lower_bound(K, ProjPoint{1.0, 0.0}, 0.5), DomainError);
  CHECK_THROWS_AS(q_lower_bound(K, Z, 0.0), DomainError);
  CHECK_THROWS_AS(q_lower_bound(K, Z, 1.5), DomainError);
}

TEST_CASE("q lower bound falls back to the constant") {
  // Z sits between the samples, where no linear form does better than t.
  const SampledSet K({ProjPoint{1.0, 0.0}, ProjPoint{0.0, 1.0}, ProjPoint{1.0, 1.0}, ProjPoint{1.0, -1.0},
                      ProjPoint{1.0, cplx(0, 1)}, ProjPoint{1.0, cplx(0, -1)}});
  const Certificate c = q_lower_bound(K, ProjPoint{1.0, 0.05}, 0.01);
  CHECK(c.point_val >= 0.01 * (1 - 1e-12));
  check_sound(c, K);
  if (c.status == CertStatus::fallback) {
    CHECK(c.poly.degree() == 0);
    CHECK(c.point_val == doctest::Approx(0.01));
  }
}

TEST_CASE("q lower bound against the radial closed form") {
  const double rho = 1.0;
  const SampledSet K = radial_disk(rho);
  const double s_branch1[] = {0.5 * std::log(2.0), 0.5, 0.8};
  for (double s : s_branch1) {
    for (double r : {1.5, 2.0, 3.0}) {
      const double exact = sigma_star_ball({rho, s, r});
      const Certificate c = q_lower_bound(K, ProjPoint{1.0, r}, std::exp(-s));
      check_sound(c, K);
      const double got = std::log(c.point_val);
      CHECK(got <= exact + 1e-6);
      CHECK(got >= exact - 0.05);
    }
  }
  for (double s : {0.1, 0.2}) {
    for (double r : {1.2, 2.0}) {
      const Certificate c = q_lower_bound(K, ProjPoint{1.0, r}, std::exp(-s));
      check_sound(c, K);
      CHECK(std::log(c.point_val) <= sigma_star_ball({rho, s, r}) + 1e-6);
    }
  }
}

TEST_CASE("q lower bound is monotone in t") {
  const SampledSet K = radial_disk(0.5, 8, 32);
  const ProjPoint Z{1.0, 1.2};
  double prev = 0.0;
  for (double t : {0.05, 0.1, 0.2, 0.4, 0.8, 1.0}) {
    const Certificate c = q_lower_bound(K, Z, t);
    CHECK(c.point_val >= prev * (1 - 1e-9));
    prev = c.point_val;
  }
}

TEST_CASE("property J examples") {
  const SampledSet K({ProjPoint{1.0, 0.0}});
  const Certificate c = property_j_certificate(K, ProjPoint{1.0, 1.0}, 0.7, 1e-6);
  CHECK(c.status == CertStatus::ok);
  CHECK(c.point_val > 0.7);
  CHECK(c.set_sup == 0.0);
  check_sound(c, K);

  CHECK_THROWS_AS(property_j_certificate(K, ProjPoint{2.0, 0.0}, 0.5, 0.1), DomainError);
  CHECK_THROWS_AS(property_j_certificate(K, ProjPoint{1.0, 1.0}, 1.0, 0.1), DomainError);

  const SampledSet K2({ProjPoint{1.0, 0.0, 0.0}, ProjPoint{0.0, 1.0, 0.0}});
  const Certificate c2 = property_j_certificate(K2, ProjPoint{0.0, 0.0, 1.0}, 0.9, 0.0);
  CHECK(c2.status == CertStatus::ok);
  CHECK(c2.point_val == doctest::Approx(1.0).epsilon(1e-9));
  check_sound(c2, K2);

  // Eta unreachable: X just outside a disk.
  const SampledSet disk = radial_disk(1.0, 8, 32);
  const Certificate bad = property_j_certificate(disk, ProjPoint{1.0, 1.01}, 0.9, 1e-3);
  CHECK(bad.status == CertStatus::failed);
}

TEST_CASE("refutation of hull levels") {
  const SampledSet K({ProjPoint{1.0, 0.0}});
  const auto r = refute_hull_level(K, ProjPoint{1.0, 1.0}, 1);
  REQUIRE(r.has_value());
  CHECK(r->set_sup == 0.0);
  check_sound(*r, K);
  CHECK_FALSE(refute_hull_level(K, ProjPoint{1.0, 0.0}, 3).has_value());
  CHECK_THROWS_AS(refute_hull_level(K, ProjPoint{1.0, 1.0}, 0), DomainError);

  const SampledSet disk = radial_disk(0.01, 4, 16);
  const auto far = refute_hull_level(disk, ProjPoint{1.0, 10.0}, 2);
  REQUIRE(far.has_value());
  check_sound(*far, disk);
  // Z inside the disk: never refuted.
  CHECK_FALSE(refute_hull_level(disk, ProjPoint{1.0, 0.005}, 2).has_value());
}

TEST_CASE("beta choice") {
  const BetaChoice b = choose_beta(3.0, 0.9);
  CHECK(std::pow(0.9 / 3.0, b.value()) > 0.5);
  CHECK(std::gcd(b.a, b.b) == 1);
  CHECK(b.b <= 64);
  const double limit = std::log(2.0) / std::log(3.0 / 0.9);
  for (int d = 1; d <= 64; ++d) {
    for (int a = 1; a < d; ++a) {
      const double v = static_cast<double>(a) / d;
      if (v < limit) CHECK(v <= b.value());
    }
  }
}

TEST_CASE("h system on two points in P^2") {
  const SampledSet E({ProjPoint{1.0, 0.0, 0.0}, ProjPoint{0.0, 1.0, 0.0}});
  std::vector<ProjPoint> cover;
  for (int j = 0; j < 8; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / 8;
    cover.push_back(ProjPoint{std::polar(0.1, phi), std::polar(0.1, 2 * phi), 1.0});
  }
  SearchBudget budget;
  budget.jobs = 4;
  const HkjSystem sys = build_hkj_system(E, cover, 3, 0.9, budget);
  REQUIRE(sys.certs.size() == 8);
  CHECK(sys.failures.empty());
  for (const auto& c : sys.certs) {
    CHECK(c.status == CertStatus::ok);
    CHECK(c.set_sup <= std::pow(3.0, -sys.beta.value()));
    CHECK(c.global_sup <= 3.0 * (1 + 1e-12));
    CHECK(c.point_val > 1.5);
    check_sound(c, E);
  }
  CHECK_THROWS_AS(build_hkj_system(E, cover, 1, 0.9), DomainError);
  CHECK_THROWS_AS(build_hkj_system(E, {ProjPoint{1.0, 0.0, 0.0}}, 3, 0.9), DomainError);

  budget.jobs = 1;
  const HkjSystem serial = build_hkj_system(E, cover, 3, 0.9, budget);
  for (std::size_t i = 0; i < 8; ++i) CHECK(serial.certs[i].point_val == sys.certs[i].point_val);
}

TEST_CASE("certificate json round trip") {
  const SampledSet K({ProjPoint{1.0, 0.0}});
  const Certificate c = q_lower_bound(K, ProjPoint{1.0, 2.0}, 0.3);
  const nlohmann::json j = certificate_to_json(c);
  CHECK(j.at("set_sup_semantics") == "sampled lower bound");
  const Certificate back = certificate_from_json(j);
  CHECK(back.point_val == c.point_val);
  CHECK(back.kind == c.kind);
  nlohmann::json tampered = j;
  tampered["point_val"] = c.point_val * 1.01;
  CHECK_THROWS_AS(certificate_from_json(tampered), DomainError);
}

TEST_CASE("property J schedule keeps q above eta") {
  const SampledSet K({ProjPoint{1.0, 0.0, 0.0}, ProjPoint{1.0, 1.0, 0.0}});
  const ProjPoint X{0.2, 0.1, 1.0};
  const double eta = 0.8;
  for (double eps : {0.5, 0.1, 1e-2, 1e-4, 1e-8}) {
    const Certificate pj = property_j_certificate(K, X, eta, eps);
    REQUIRE(pj.status == CertStatus::ok);
    check_sound(pj, K);
    CHECK(q_lower_bound(K, X, eps).point_val >= eta);
  }
}
