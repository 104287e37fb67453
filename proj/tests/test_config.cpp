#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "imcf/config.hpp"
#include "imcf/error.hpp"

using namespace imcf;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a configuration error for: " << text);
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("slice configuration") {
  const ExperimentConfig c = parse_config("n=3\nm=1\nsurface=slice\ns=4\nN=128");
  CHECK(c.params.n == 3);
  CHECK(c.params.m == 1.0);
  CHECK(c.surface.kind == SurfaceKind::slice);
  CHECK(c.surface.s == 4.0);
  CHECK(c.N == 128);
  CHECK(c.t_end == 3.0);
  CHECK(c.tol.statics == 1e-10);
  CHECK(c.tol.monotone == 1e-6);
  CHECK(c.tol.monotone_weak == 1e-3);
  CHECK(c.tol.limit == 0.03);
  CHECK(c.eps_schedule == std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4});
}

TEST_CASE("comments, whitespace and overrides") {
  const ExperimentConfig c = parse_config(
      "# header\n  n = 4   # dimension\nm=0.5\r\n\nsurface = ellipsoid\na=2\nc=3\neps_schedule = 0.1, 0.001\n"
      "ls_levels=1,2\nweak_monotonicity=yes\ntol_flux=1e-4\nN=64\nN=32\n");
  CHECK(c.params.n == 4);
  CHECK(c.params.m == 0.5);
  CHECK(c.surface.kind == SurfaceKind::ellipsoid);
  CHECK(c.surface.a == 2.0);
  CHECK(c.surface.c == 3.0);
  CHECK(c.eps_schedule == std::vector<double>{0.1, 0.001});
  CHECK(c.ls_levels == std::vector<double>{1.0, 2.0});
  CHECK(c.weak_monotonicity);
  CHECK(c.tol.flux == 1e-4);
  CHECK(c.N == 32);
}

TEST_CASE("configuration errors") {
  CHECK(code_of("m=1") == ErrorCode::config);
  CHECK(code_of("n=3") == ErrorCode::config);
  CHECK(code_of("n=2\nm=1") == ErrorCode::config);
  CHECK(code_of("n=3\nm=0") == ErrorCode::config);
  CHECK(code_of("n=3\nm=one") == ErrorCode::config);
  CHECK(code_of("n=3.5\nm=1") == ErrorCode::config);
  CHECK(code_of("n=3\nm=1\ncolour=blue") == ErrorCode::config);
  CHECK(code_of("n=3\nm=1\nsurface=cube") == ErrorCode::config);
  CHECK(code_of("n=3\nm=1\nsurface=torus") == ErrorCode::config);
  CHECK(code_of("n=3\nm=1\njust text") == ErrorCode::config);
  CHECK(code_of("n=3\nm=1\nN=") == ErrorCode::config);
  CHECK(code_of("n=3\nm=1\nN=8") == ErrorCode::config);
  CHECK(code_of("n=3\nm=1\ntol_limit=0") == ErrorCode::config);
  CHECK(code_of("n=3\nm=1\neps_schedule=0.1,0.2") == ErrorCode::config);
  CHECK(code_of("n=3\nm=1\nls_levels=2,1") == ErrorCode::config);
  CHECK(code_of("n=3\nm=1\nsurface=slice\ns=2") == ErrorCode::config);
  CHECK(code_of("n=3\nm=1\nsurface=offset_sphere\nd=3\nR=3") == ErrorCode::config);
  CHECK(code_of("n=3\nm=1\nsurface=file") == ErrorCode::config);
  CHECK(code_of("n=3\nm=1\nweak_monotonicity=maybe") == ErrorCode::config);
}

TEST_CASE("torus rejection explains the star-shaped requirement") {
  try {
    parse_config("n=3\nm=1\nsurface=torus");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("star-shaped") != std::string::npos);
  }
}

TEST_CASE("canonical text round trip") {
  const ExperimentConfig c = parse_config(
      "n=5\nm=2\nsurface=offset_sphere\nd=0.25\nR=4\nt_end=1.5\neps_schedule=0.3,0.01\ntol_equality=1e-7");
  const ExperimentConfig d = parse_config(config_to_text(c));
  CHECK(config_to_text(d) == config_to_text(c));
  CHECK(d.params.n == 5);
  CHECK(d.surface.d == 0.25);
  CHECK(d.t_end == 1.5);
  CHECK(d.tol.equality == 1e-7);
}

TEST_CASE("loading files with overrides") {
  const auto dir = std::filesystem::temp_directory_path() / "imcf_config_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "exp.cfg").string();
  {
    std::ofstream os(path);
    os << "n=3\nm=1\nsurface=sphere\nr=3\n";
  }
  const ExperimentConfig c = load_config(path, {"N=64", "r = 5"});
  CHECK(c.N == 64);
  CHECK(c.surface.r == 5.0);
  CHECK_THROWS_AS(load_config(path, {"N"}), Error);
  try {
    load_config((dir / "missing.cfg").string());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("surfaces built from the configuration") {
  const ExperimentConfig c = parse_config("n=3\nm=1\nsurface=ellipsoid\na=3\nc=4\nN=32");
  const RadialGraph g = build_surface(c);
  CHECK(g.N() == 32);
  CHECK(g.rho()[0] == doctest::Approx(4.0));
  CHECK(g.rho()[16] == doctest::Approx(3.0));
  CHECK(build_surface(c, 64).N() == 64);
  CHECK_FALSE(is_round(c.surface));
  CHECK(is_round(parse_config("n=3\nm=1\nsurface=slice").surface));
  CHECK(is_round(parse_config("n=3\nm=1\nsurface=offset_sphere\nd=0").surface));
}
