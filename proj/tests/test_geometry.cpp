#include <cmath>
#include <algorithm>
#include <random>

#include "doctest.h"
#include "imcf/error.hpp"
#include "imcf/geometry.hpp"
#include "oracles.hpp"

using namespace imcf;

TEST_CASE("unit sphere area") {
  CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * oracle::pi).epsilon(1e-15));
  CHECK(unit_sphere_area(3) == doctest::Approx(12.566370614).epsilon(1e-10));
  CHECK(unit_sphere_area(4) == doctest::Approx(19.739208802).epsilon(1e-10));
  for (int n = 2; n <= 9; ++n) CHECK(unit_sphere_area(n) == doctest::Approx(oracle::unit_sphere_area(n)).epsilon(1e-14));
  CHECK_THROWS_AS(unit_sphere_area(1), Error);
}

TEST_CASE("space params validation and horizon radii") {
  CHECK_THROWS_AS(SpaceParams::make(2, 1.0), Error);
  CHECK_THROWS_AS(SpaceParams::make(3, 0.0), Error);
  CHECK_THROWS_AS(SpaceParams::make(3, -1.0), Error);
  CHECK_THROWS_AS(SpaceParams::make(3, NAN), Error);
  for (int n : {3, 4, 5, 7})
    for (double m : {0.5, 1.0, 2.0}) {
      const SpaceParams p = SpaceParams::make(n, m);
      CHECK(p.horizon_polar() == doctest::Approx(std::pow(2 * m, 1.0 / (n - 2))).epsilon(1e-14));
      CHECK(p.horizon_isotropic() == doctest::Approx(std::pow(m / 2, 1.0 / (n - 2))).epsilon(1e-14));
      CHECK(oracle::areal_radius(p.horizon_isotropic(), n, m) == doctest::Approx(p.horizon_polar()).epsilon(1e-13));
      CHECK(polar_from_isotropic(p.horizon_isotropic(), p) == doctest::Approx(p.horizon_polar()).epsilon(1e-13));
    }
}

TEST_CASE("chart map values") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  CHECK(polar_from_isotropic(2.0, p) == doctest::Approx(3.125).epsilon(1e-15));
  CHECK(polar_from_isotropic(0.5, p) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(polar_from_isotropic(1e8, p) / 1e8 == doctest::Approx(1.0).epsilon(1e-7));
  CHECK_THROWS_AS(polar_from_isotropic(0.49, p), Error);
  try {
    polar_from_isotropic(0.4, p);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
}

TEST_CASE("chart map is an increasing bijection with exact inverse") {
  std::mt19937_64 rng(7);
  for (int n : {3, 4, 5, 6})
    for (double m : {0.5, 1.0, 2.0}) {
      const SpaceParams p = SpaceParams::make(n, m);
      std::uniform_real_distribution<double> u(std::log(1.0001), std::log(1000.0));
      double prev_r = 0.0, prev_s = 0.0;
      std::vector<double> radii;
      for (int i = 0; i < 200; ++i) radii.push_back(p.horizon_isotropic() * std::exp(u(rng)));
      std::sort(radii.begin(), radii.end());
      for (double r : radii) {
        const double s = polar_from_isotropic(r, p);
        CHECK(s == doctest::Approx(oracle::areal_radius(r, n, m)).epsilon(1e-13));
        CHECK(isotropic_from_polar(s, p) == doctest::Approx(r).epsilon(1e-12));
        CHECK(isotropic_from_polar(s, p) == doctest::Approx(oracle::isotropic_radius(s, n, m)).epsilon(1e-12));
        if (prev_r > 0.0 && r > prev_r) CHECK(s > prev_s);
        prev_r = r;
        prev_s = s;
      }
    }
}

TEST_CASE("potential function") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  CHECK(potential_f(PolarPoint{4.0, 0.3}, p) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(potential_f(IsotropicPoint{2.0, 1.0}, p) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK_THROWS_AS(potential_f(PolarPoint{2.0, 0.0}, p), Error);
  try {
    potential_f(PolarPoint{1.5, 0.0}, p);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::horizon);
  }

  for (int n : {3, 4, 5})
    for (double m : {0.5, 1.0, 2.0}) {
      const SpaceParams q = SpaceParams::make(n, m);
      double prev = 0.0;
      for (int i = 0; i < 50; ++i) {
        const double r = q.horizon_isotropic() * (1.01 + 0.5 * i);
        const double s = oracle::areal_radius(r, n, m);
        const double via_polar = potential_f(PolarPoint{s, 0.0}, q);
        const double via_iso = potential_f(IsotropicPoint{r, 0.0}, q);
        CHECK(via_polar == doctest::Approx(oracle::potential(s, n, m)).epsilon(1e-13));
        CHECK(std::abs(via_polar - via_iso) < 1e-12);
        CHECK(via_polar > prev);
        CHECK(via_polar < 1.0);
        prev = via_polar;
      }
    }
}

TEST_CASE("conformal factor and its derivatives") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  const RadialJet psi = conformal_psi(2.0, p);
  CHECK(psi.value == doctest::Approx(2 * std::log(1.25)).epsilon(1e-15));
  CHECK(psi.d1 == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK_THROWS_AS(conformal_psi(0.5, p), Error);

  for (int n : {3, 4, 5})
    for (double m : {0.5, 1.0, 2.0}) {
      const SpaceParams q = SpaceParams::make(n, m);
      for (double scale : {1.3, 2.0, 5.0, 40.0}) {
        const double r = q.horizon_isotropic() * scale, h = 1e-4 * r;
        const RadialJet j = conformal_psi(r, q);
        auto psi_of = [&](double x) { return 2.0 / (n - 2.0) * std::log(1.0 + 0.5 * m * std::pow(x, 2.0 - n)); };
        CHECK(j.value > 0.0);
        CHECK(j.d1 < 0.0);
        CHECK(std::exp(2 * j.value) ==
              doctest::Approx(std::pow(1.0 + 0.5 * m * std::pow(r, 2.0 - n), 4.0 / (n - 2.0))).epsilon(1e-14));
        CHECK(j.d1 == doctest::Approx((psi_of(r + h) - psi_of(r - h)) / (2 * h)).epsilon(1e-7));
        CHECK(j.d2 == doctest::Approx((psi_of(r + h) - 2 * psi_of(r) + psi_of(r - h)) / (h * h)).epsilon(1e-5));

        // The chart map is an isometry of the radial direction: e^{psi} dr = ds / f.
        const RadialJet s = polar_radius_jet(r, q);
        const double ds_fd = (oracle::areal_radius(r + h, n, m) - oracle::areal_radius(r - h, n, m)) / (2 * h);
        CHECK(s.d1 == doctest::Approx(ds_fd).epsilon(1e-7));
        CHECK(std::exp(j.value) == doctest::Approx(s.d1 / oracle::potential(s.value, n, m)).epsilon(1e-12));

        const RadialJet f = potential_jet(r, q);
        auto f_of = [&](double x) { return oracle::potential(oracle::areal_radius(x, n, m), n, m); };
        CHECK(f.d1 == doctest::Approx((f_of(r + h) - f_of(r - h)) / (2 * h)).epsilon(1e-7));
        CHECK(f.d2 == doctest::Approx((f_of(r + h) - 2 * f_of(r) + f_of(r - h)) / (h * h)).epsilon(1e-4));
      }
    }
}

TEST_CASE("Euclidean limit of the chart quantities") {
  const SpaceParams p = SpaceParams::make(3, 1e-10);
  for (double r : {0.5, 1.0, 3.0, 10.0}) {
    CHECK(std::abs(conformal_psi(r, p).value) < 1e-9);
    CHECK(std::abs(conformal_psi(r, p).d1) < 1e-9);
    CHECK(std::abs(potential_f(IsotropicPoint{r, 0.0}, p) - 1.0) < 1e-9);
    CHECK(std::abs(polar_from_isotropic(r, p) - r) < 1e-9);
  }
}

TEST_CASE("static equations hold with analytic derivatives") {
  std::mt19937_64 rng(2024);
  for (int n : {3, 4, 5})
    for (double m : {0.5, 1.0, 2.0}) {
      const SpaceParams p = SpaceParams::make(n, m);
      std::uniform_real_distribution<double> logr(std::log(1.05), std::log(20.0));
      std::uniform_real_distribution<double> th(0.0, oracle::pi);
      double worst_h = 0.0, worst_l = 0.0;
      for (int i = 0; i < 100; ++i) {
        const StaticResidual res = static_residual({p.horizon_isotropic() * std::exp(logr(rng)), th(rng)}, p);
        worst_h = std::max(worst_h, res.hessian);
        worst_l = std::max(worst_l, res.laplacian);
      }
      CHECK(worst_h < 1e-10);
      CHECK(worst_l < 1e-10);
    }
  const SpaceParams p3 = SpaceParams::make(3, 1.0);
  CHECK(static_residual({3.0, 0.4}, p3).hessian < 1e-12);
  CHECK(static_residual({3.0, 0.4}, p3).laplacian < 1e-12);
  const SpaceParams p4 = SpaceParams::make(4, 0.5);
  CHECK(static_residual({2.0, 1.1}, p4).hessian < 1e-10);
  CHECK(static_residual({2.0, 1.1}, p4).laplacian < 1e-10);
}

TEST_CASE("generic Christoffel computation agrees that f is static") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  for (const auto& x : {std::array<double, 3>{1.2, 0.4, -0.7}, std::array<double, 3>{0.0, 2.5, 1.0},
                        std::array<double, 3>{3.0, -1.0, 0.2}}) {
    const oracle::StaticCheck ref = oracle::generic_static_check(x, p.m);
    CHECK(ref.hessian < 1e-6);
    CHECK(ref.laplacian < 1e-6);
  }
  // The same generic machinery detects a non-static potential.
  const StaticResidual bad = static_residual({2.0, 0.3}, p, {DerivativeMode::analytic, 1e-3, 3.0});
  CHECK(bad.hessian > 1e-3);
}

TEST_CASE("central differences converge at second order") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  const StaticResidual coarse = static_residual({3.0, 0.7}, p, {DerivativeMode::central_difference, 1e-2});
  const StaticResidual fine = static_residual({3.0, 0.7}, p, {DerivativeMode::central_difference, 5e-3});
  CHECK(coarse.laplacian / fine.laplacian == doctest::Approx(4.0).epsilon(0.05));
  CHECK(coarse.hessian / fine.hessian == doctest::Approx(4.0).epsilon(0.1));
  CHECK_THROWS_AS(static_residual({0.502, 0.0}, p), Error);
  CHECK_NOTHROW(static_residual({0.506, 0.0}, p));
  CHECK_THROWS_AS(static_residual({0.52, 0.0}, p, {DerivativeMode::central_difference, 1e-2}), Error);
}

TEST_CASE("negative control breaks the static equations") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  const StaticResidual res = static_residual({3.0, 0.7}, p, {DerivativeMode::analytic, 1e-3, 3.0});
  CHECK(std::max(res.hessian, res.laplacian) > 1e-4);
}

TEST_CASE("sphere identity for the potential") {
  for (int n : {3, 4, 5})
    for (double m : {0.5, 1.0, 2.0}) {
      const SpaceParams p = SpaceParams::make(n, m);
      for (double scale : {1.1, 2.0, 10.0}) CHECK(sphere_static_identity_residual(scale * p.horizon_isotropic(), p) < 1e-12);
    }
}
