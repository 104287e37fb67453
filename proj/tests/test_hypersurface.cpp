#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "imcf/error.hpp"
#include "imcf/hypersurface.hpp"
#include "oracles.hpp"

using namespace imcf;

namespace {

double max_abs_diff(const std::vector<double>& a, double value) {
  double worst = 0.0;
  for (double x : a) worst = std::max(worst, std::abs(x - value));
  return worst;
}

}  // namespace

TEST_CASE("graph construction checks") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  CHECK_THROWS_AS(RadialGraph(p, std::vector<double>(15, 3.0)), Error);
  CHECK_NOTHROW(RadialGraph(p, std::vector<double>(17, 3.0)));
  std::vector<double> bad(33, 3.0);
  bad[4] = NAN;
  CHECK_THROWS_AS(RadialGraph(p, bad), Error);
  bad[4] = -1.0;
  try {
    euclidean_geometry(RadialGraph(p, bad));
    FAIL("expected invalid surface");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_surface);
  }
  CHECK_THROWS_AS(surfaces::offset_sphere(p, 3.0, 2.0, 32), Error);
  CHECK_THROWS_AS(surfaces::slice(p, 2.0, 32), Error);
}

TEST_CASE("quadrature integrates the sphere exactly") {
  for (int n : {3, 4, 5, 7}) {
    const SpaceParams p = SpaceParams::make(n, 1.0);
    const RadialGraph g = surfaces::centered_sphere(p, 1.0, 40);
    double total = 0.0;
    for (double w : g.weights()) total += w;
    CHECK(total == doctest::Approx(oracle::unit_sphere_area(n)).epsilon(1e-13));
  }
}

TEST_CASE("round sphere Euclidean data") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  const SurfaceGeometry g = euclidean_geometry(surfaces::centered_sphere(p, 3.0, 64));
  CHECK(max_abs_diff(g.mean_curvature_euclid, 2.0 / 3.0) < 1e-13);
  double area = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) area += g.weights[k] * g.area_density_euclid[k];
  CHECK(area == doctest::Approx(36.0 * oracle::pi).epsilon(1e-13));
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(g.normal_radial[k] == doctest::Approx(1.0));
    CHECK(g.traceless_norm_sq_euclid(k) < 1e-24);
  }
  const SpaceParams p5 = SpaceParams::make(5, 1.0);
  const SurfaceGeometry g5 = euclidean_geometry(surfaces::centered_sphere(p5, 2.0, 64));
  CHECK(max_abs_diff(g5.mean_curvature_euclid, 4.0 / 2.0) < 1e-13);
}

TEST_CASE("offset sphere principal curvatures converge to 1/R") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  auto worst = [&](int N) {
    const SurfaceGeometry g = euclidean_geometry(surfaces::offset_sphere(p, 0.5, 3.0, N));
    return std::max(max_abs_diff(g.kappa_meridian, 1.0 / 3.0), max_abs_diff(g.kappa_latitude, 1.0 / 3.0));
  };
  const double e64 = worst(64), e128 = worst(128);
  CHECK(e128 < 1e-4);
  CHECK(e64 / e128 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("spheroid mean curvature integral matches the parametric oracle") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  const oracle::SpheroidIntegrals ref = oracle::spheroid_integrals(3.0, 4.0);
  auto error = [&](int N) {
    const SurfaceGeometry g = euclidean_geometry(surfaces::spheroid(p, 3.0, 4.0, N));
    double area = 0.0, int_h = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double dmu = g.weights[k] * g.area_density_euclid[k];
      area += dmu;
      int_h += g.mean_curvature_euclid[k] * dmu;
    }
    CHECK(area == doctest::Approx(ref.area).epsilon(1e-3));
    return std::abs(int_h - ref.int_H);
  };
  const double e64 = error(64), e128 = error(128), e256 = error(256);
  CHECK(e256 / ref.int_H < 1e-4);
  CHECK(e64 / e128 == doctest::Approx(4.0).epsilon(0.15));
  CHECK(e128 / e256 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("slice Schwarzschild data") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  const SurfaceGeometry g = schwarzschild_geometry(surfaces::slice(p, 4.0, 64));
  CHECK(max_abs_diff(g.mean_curvature, std::sqrt(0.5) / 2.0) < 1e-13);
  CHECK(g.mean_curvature[7] == doctest::Approx(0.35355339).epsilon(1e-8));
  CHECK(g.mean_curvature[7] == doctest::Approx(oracle::slice_mean_curvature(4.0, 3, 1.0)).epsilon(1e-9));
  const Functionals fn = functionals(g);
  CHECK(fn.area == doctest::Approx(64.0 * oracle::pi).epsilon(1e-13));
  CHECK(fn.int_fH == doctest::Approx(16.0 * oracle::pi).epsilon(1e-13));
  CHECK(fn.flux == doctest::Approx(4.0 * oracle::pi).epsilon(1e-13));
  CHECK(fn.Q == doctest::Approx(4.0 * std::sqrt(oracle::pi)).epsilon(1e-13));
  CHECK(fn.Q == doctest::Approx(7.0898154).epsilon(1e-8));
  CHECK(fn.umbilicity < 1e-20);
  const MinkowskiReport mr = minkowski_report(g);
  CHECK(mr.lhs == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(mr.rhs == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(std::abs(mr.slack) < 1e-12);
}

TEST_CASE("slice curvature agrees between charts for random slices") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> dim(3, 6);
  std::uniform_real_distribution<double> mass(0.2, 3.0), factor(1.05, 30.0);
  for (int i = 0; i < 50; ++i) {
    const int n = dim(rng);
    const double m = mass(rng);
    const SpaceParams p = SpaceParams::make(n, m);
    const double s = p.horizon_polar() * factor(rng);
    const SurfaceGeometry g = schwarzschild_geometry(surfaces::slice(p, s, 32));
    const double expected = (n - 1.0) * oracle::potential(s, n, m) / s;
    CHECK(max_abs_diff(g.mean_curvature, expected) < 1e-8 * std::max(1.0, expected));
    CHECK(g.mean_curvature[3] == doctest::Approx(oracle::slice_mean_curvature(s, n, m)).epsilon(1e-8));
    CHECK(functionals(g).Q == doctest::Approx(q_limit(p)).epsilon(1e-12));
  }
}

TEST_CASE("conformal relations hold nodewise") {
  const SpaceParams p = SpaceParams::make(4, 1.5);
  const SurfaceGeometry g = schwarzschild_geometry(surfaces::spheroid(p, 2.5, 3.5, 64));
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double r = g.rho[k];
    const double a = 0.5 * p.m * std::pow(r, 2.0 - p.n);
    const double psi = 2.0 / (p.n - 2.0) * std::log1p(a);
    const double dpsi = -p.m * std::pow(r, 1.0 - p.n) / (1.0 + a);
    CHECK(g.psi[k] == doctest::Approx(psi).epsilon(1e-13));
    CHECK(g.mean_curvature[k] ==
          doctest::Approx(std::exp(-psi) * (g.mean_curvature_euclid[k] + (p.n - 1.0) * dpsi * g.normal_radial[k]))
              .epsilon(1e-12));
    CHECK(g.area_density[k] == doctest::Approx(std::exp((p.n - 1.0) * psi) * g.area_density_euclid[k]).epsilon(1e-12));
    CHECK(g.traceless_norm_sq(k) == doctest::Approx(std::exp(-2 * psi) * g.traceless_norm_sq_euclid(k)).epsilon(1e-12));
  }
}

TEST_CASE("Euclidean limit of the Schwarzschild data") {
  const SpaceParams p = SpaceParams::make(3, 1e-12);
  const SurfaceGeometry g = schwarzschild_geometry(surfaces::spheroid(p, 3.0, 4.0, 64));
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(std::abs(g.mean_curvature[k] - g.mean_curvature_euclid[k]) < 1e-9);
    CHECK(std::abs(g.area_density[k] - g.area_density_euclid[k]) < 1e-9 * g.area_density_euclid[k]);
    CHECK(std::abs(g.potential[k] - 1.0) < 1e-9);
  }
}

TEST_CASE("spheres outside the horizon are mean convex") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  for (double r : {0.5001, 0.6, 1.0, 3.0, 100.0}) {
    const SurfaceGeometry g = schwarzschild_geometry(surfaces::centered_sphere(p, r, 16));
    const double a = 0.5 / r;
    CHECK(g.mean_curvature[0] > 0.0);
    CHECK(g.conformal_mean_curvature(0) == doctest::Approx(2.0 * (1 - a) / (r * (1 + a))).epsilon(1e-12));
  }
  try {
    schwarzschild_geometry(surfaces::centered_sphere(p, 0.4, 16));
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
}

TEST_CASE("flux is shape independent") {
  // For a radial graph <grad f, nu> dmu reduces to the sphere flux density
  // times the quadrature weight, so the discrete flux is exact at every N.
  for (int n : {3, 4, 5}) {
    const SpaceParams p = SpaceParams::make(n, 1.0);
    const double expected = (n - 2.0) * oracle::unit_sphere_area(n);
    for (int N : {32, 64, 256}) {
      CHECK(functionals(schwarzschild_geometry(surfaces::slice(p, 4.0, N))).flux ==
            doctest::Approx(expected).epsilon(1e-12));
      CHECK(functionals(schwarzschild_geometry(surfaces::spheroid(p, 3.0, 4.0, N))).flux ==
            doctest::Approx(expected).epsilon(1e-12));
      CHECK(functionals(schwarzschild_geometry(surfaces::offset_sphere(p, 0.5, 3.0, N))).flux ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
  const SpaceParams p = SpaceParams::make(3, 1.0);
  const RadialGraph wavy = RadialGraph::from_function(p, 64, [](double t) { return 2.0 + 0.3 * std::cos(3 * t); });
  CHECK(functionals(schwarzschild_geometry(wavy)).flux == doctest::Approx(4.0 * oracle::pi).epsilon(1e-12));
  const SpaceParams tiny = SpaceParams::make(3, 1e-12);
  CHECK(std::abs(functionals(schwarzschild_geometry(surfaces::spheroid(tiny, 3.0, 4.0, 64))).flux) < 1e-10);
}

TEST_CASE("area and curvature integrals converge at second order") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  auto at = [&](int N) { return functionals(schwarzschild_geometry(surfaces::spheroid(p, 3.0, 4.0, N))); };
  const Functionals a = at(64), b = at(128), c = at(256);
  CHECK((a.area - b.area) / (b.area - c.area) == doctest::Approx(4.0).epsilon(0.125));
  CHECK((a.int_fH - b.int_fH) / (b.int_fH - c.int_fH) == doctest::Approx(4.0).epsilon(0.125));
}

TEST_CASE("umbilicity vanishes on spheres in the isotropic chart") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  CHECK(functionals(schwarzschild_geometry(surfaces::offset_sphere(p, 0.5, 3.0, 256))).umbilicity < 1e-10);
  CHECK(functionals(schwarzschild_geometry(surfaces::centered_sphere(p, 2.0, 64))).umbilicity < 1e-20);
  CHECK(functionals(schwarzschild_geometry(surfaces::spheroid(p, 3.0, 4.0, 64))).umbilicity > 0.1);
}

TEST_CASE("Minkowski-type inequality on test surfaces") {
  const SpaceParams p = SpaceParams::make(3, 1.0);
  const SurfaceGeometry offset = schwarzschild_geometry(surfaces::offset_sphere(p, 0.5, 3.0, 128));
  CHECK(is_euclidean_convex(offset));
  CHECK(minkowski_report(offset).slack > 0.0);
  const SurfaceGeometry ell = schwarzschild_geometry(surfaces::spheroid(p, 3.0, 4.0, 128));
  CHECK(minkowski_report(ell).slack > 0.0);
  const SurfaceGeometry round = schwarzschild_geometry(surfaces::centered_sphere(p, 5.0, 64));
  CHECK(std::abs(minkowski_report(round).slack) < 1e-12);

  const SpaceParams tiny = SpaceParams::make(3, 1e-12);
  const SurfaceGeometry unit = schwarzschild_geometry(surfaces::centered_sphere(tiny, 1.0, 64));
  const Functionals fn = functionals(unit);
  CHECK(fn.int_fH == doctest::Approx(2.0 * std::sqrt(4.0 * oracle::pi) * std::sqrt(fn.area)).epsilon(1e-10));
  CHECK(std::abs(minkowski_report(unit).slack) < 1e-10);
  CHECK(minkowski_report(schwarzschild_geometry(surfaces::spheroid(tiny, 3.0, 4.0, 128))).slack > 0.0);
}

TEST_CASE("surface exchange format round trip") {
  const SpaceParams p = SpaceParams::make(4, 0.75);
  const RadialGraph g = surfaces::spheroid(p, 3.0, 4.0, 32);
  std::stringstream ss;
  write_surface(ss, g);
  const std::string text = ss.str();
  CHECK(text.rfind("# 4 0.75 32\n", 0) == 0);
  const RadialGraph back = read_surface(ss);
  CHECK(back.N() == 32);
  CHECK(back.params().n == 4);
  CHECK(back.params().m == 0.75);
  for (int k = 0; k <= 32; ++k) CHECK(back.rho()[k] == g.rho()[k]);

  std::istringstream missing_row("# 3 1 16\n0 3\n");
  CHECK_THROWS_AS(read_surface(missing_row), Error);
  std::istringstream bad_header("3 1 16\n");
  CHECK_THROWS_AS(read_surface(bad_header), Error);
  std::istringstream bad_grid("# 3 1 16\n0 3\n0.5 3\n");
  CHECK_THROWS_AS(read_surface(bad_grid), Error);
  CHECK_THROWS_AS(read_surface(std::string("/nonexistent/surface.txt")), Error);
}
