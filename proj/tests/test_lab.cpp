#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "doctest.h"
#include "imcf/error.hpp"
#include "imcf/lab.hpp"
#include "oracles.hpp"

using namespace imcf;

namespace {

const Claim* find_claim(const VerificationReport& r, const std::string& id) {
  for (const Claim& c : r.claims)
    if (c.id == id) return &c;
  return nullptr;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("imcf_lab_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("claim evaluation") {
  CHECK(evaluate(ClaimKind::within, 1.0, 1.05, 0.1));
  CHECK_FALSE(evaluate(ClaimKind::within, 1.0, 1.2, 0.1));
  CHECK(evaluate(ClaimKind::at_most, 1.05, 1.0, 0.1));
  CHECK_FALSE(evaluate(ClaimKind::at_most, 1.2, 1.0, 0.1));
  CHECK(evaluate(ClaimKind::at_least, 0.95, 1.0, 0.1));
  CHECK_FALSE(evaluate(ClaimKind::at_least, 0.8, 1.0, 0.1));
  CHECK(evaluate(ClaimKind::must_break, 1.0, 0.0, 0.1));
  CHECK_FALSE(evaluate(ClaimKind::must_break, 0.05, 0.0, 0.1));
  CHECK_FALSE(evaluate(ClaimKind::within, std::nan(""), 0.0, 1.0));
  CHECK(evaluate(ClaimKind::must_break, std::nan(""), 0.0, 1.0));
  const Claim c = make_claim("x", "anchor", ClaimKind::at_most, 2.0, 1.0, 0.5);
  CHECK_FALSE(c.pass);
  VerificationReport r{"e", {c}, {}, {}, true};
  CHECK(r.status() == ReportStatus::fail);
  r.claims.clear();
  CHECK(r.status() == ReportStatus::inconclusive);
}

TEST_CASE("statics verification with its negative control") {
  for (const char* text : {"n=3\nm=1", "n=4\nm=2", "n=5\nm=0.5"}) {
    const VerificationReport r = verify_statics(parse_config(text));
    CHECK(r.status() == ReportStatus::pass);
    REQUIRE(find_claim(r, "statics.negative_control"));
    CHECK(find_claim(r, "statics.negative_control")->measured > 1e-4);
    for (const Claim& c : r.claims) CHECK_FALSE(c.anchor.empty());
  }
}

TEST_CASE("a negative control that does not break fails the report") {
  const VerificationReport r = verify_statics(parse_config("n=3\nm=1\ntol_statics=1"));
  CHECK_FALSE(find_claim(r, "statics.negative_control")->pass);
  CHECK(r.status() == ReportStatus::fail);
}

TEST_CASE("inequality verification") {
  const VerificationReport slice = verify_inequality(parse_config("n=3\nm=1\nsurface=slice\ns=4\nN=200"));
  CHECK(slice.status() == ReportStatus::pass);
  CHECK(std::abs(find_claim(slice, "equality.slack")->measured) < 1e-6);
  CHECK(find_claim(slice, "equality.Q")->measured ==
        doctest::Approx(2.0 * std::sqrt(4.0 * oracle::pi)).epsilon(1e-12));

  const VerificationReport offset = verify_inequality(parse_config("n=3\nm=1\nsurface=offset_sphere\nd=0.5\nR=3"));
  CHECK(offset.status() == ReportStatus::pass);
  CHECK(find_claim(offset, "inequality.slack")->measured > 0.0);
  CHECK(find_claim(offset, "equality.slack") == nullptr);

  const VerificationReport classical =
      verify_inequality(parse_config("n=3\nm=1e-12\nsurface=ellipsoid\na=3\nc=4\nN=128"));
  CHECK(classical.status() == ReportStatus::pass);
  CHECK(find_claim(classical, "inequality.slack")->measured > 0.0);
}

TEST_CASE("monotonicity and limit on the slice") {
  const ExperimentConfig c = parse_config("n=3\nm=1\nsurface=slice\ns=4\nN=32\nt_end=3\nsample_every=0.5");
  const RunResult run = run_smooth(c);
  const VerificationReport mono = verify_monotonicity(c, run);
  CHECK(mono.status() == ReportStatus::pass);
  CHECK(std::abs(find_claim(mono, "monotonicity.smooth")->measured) < 1e-10);
  const VerificationReport limit = verify_limit(c, run);
  CHECK(limit.status() == ReportStatus::pass);
  CHECK(find_claim(limit, "limit.distance")->measured == doctest::Approx(q_limit(c.params)).epsilon(1e-10));
}

TEST_CASE("limit verification requires a long run") {
  const ExperimentConfig c = parse_config("n=3\nm=1\nsurface=slice\nN=32\nt_end=1");
  try {
    verify_limit(c);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::config);
  }
}

TEST_CASE("breakdown makes the monotonicity report inconclusive") {
  const auto dir = scratch("breakdown");
  std::filesystem::create_directories(dir);
  const SpaceParams p = SpaceParams::make(3, 1.0);
  const RadialGraph dimple = RadialGraph::from_function(
      p, 64, [](double t) { return 3.0 - 1.5 * std::exp(-(t / 0.3) * (t / 0.3)); });
  const auto path = (dir / "dimple.txt").string();
  write_surface(path, dimple);
  const ExperimentConfig c = parse_config("n=3\nm=1\nsurface=file\nfile=" + path + "\nt_end=1");
  const VerificationReport r = verify_monotonicity(c);
  CHECK(r.status() == ReportStatus::inconclusive);
  REQUIRE_FALSE(r.notes.empty());
  CHECK(r.notes.front().find("breakdown") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("flux verification") {
  const VerificationReport r3 = verify_flux(parse_config("n=3\nm=1\nN=64"));
  CHECK(r3.status() == ReportStatus::pass);
  CHECK(r3.claims.size() == 3);
  for (const Claim& c : r3.claims) CHECK(c.expected == doctest::Approx(4.0 * oracle::pi).epsilon(1e-15));

  const VerificationReport r4 = verify_flux(parse_config("n=4\nm=1\nN=64"));
  CHECK(r4.status() == ReportStatus::pass);
  for (const Claim& c : r4.claims) CHECK(c.measured == doctest::Approx(4.0 * oracle::pi * oracle::pi).epsilon(1e-10));

  const VerificationReport r0 = verify_flux(parse_config("n=3\nm=1e-12\nN=64"));
  CHECK(r0.status() == ReportStatus::pass);
  for (const Claim& c : r0.claims) CHECK(std::abs(c.measured) < 1e-10);
}

TEST_CASE("weak verification on the ellipsoid") {
  const ExperimentConfig c =
      parse_config("n=3\nm=1\nsurface=ellipsoid\na=3\nc=4\nls_radial_cells=64\nls_angular_cells=32");
  const VerificationReport r = verify_weak(c, solve_levelset(c));
  CHECK(r.status() == ReportStatus::pass);
  CHECK(find_claim(r, "area_law.weak")->measured < 1e-2);
}

TEST_CASE("commands") {
  CHECK(parse_command("geometry-check") == Command::geometry_check);
  CHECK(parse_command("all") == Command::all);
  CHECK(to_string(parse_command("levelset")) == "levelset");
  CHECK_THROWS_AS(parse_command("plot"), Error);
}

TEST_CASE("geometry-check writes reproducible artifacts") {
  const ExperimentConfig c = parse_config("n=3\nm=1\nsurface=offset_sphere\nd=0.5\nR=3\nN=64");
  const auto a = scratch("a"), b = scratch("b");
  const LabOutcome oa = run_command(c, Command::geometry_check, a.string());
  run_command(c, Command::geometry_check, b.string());
  CHECK(oa.status() == ReportStatus::pass);
  for (const char* f : {"series.csv", "report.txt", "report.jsonl", "plot.gp", "surface.txt", "config.cfg"}) {
    CHECK(std::filesystem::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  CHECK(slurp(a / "plot.gp").find("limit = 7.0898154036220") != std::string::npos);
  CHECK(slurp(a / "report.txt").find("overall: PASS") != std::string::npos);

  std::istringstream jsonl(slurp(a / "report.jsonl"));
  std::string line;
  int claims = 0;
  while (std::getline(jsonl, line)) {
    const auto j = nlohmann::json::parse(line);
    REQUIRE(j.contains("experiment"));
    if (j.contains("id")) {
      ++claims;
      CHECK(j["pass"].get<bool>());
      CHECK_FALSE(j["anchor"].get<std::string>().empty());
    }
  }
  CHECK(claims > 5);
  const RadialGraph surface = read_surface((a / "surface.txt").string());
  CHECK(surface.N() == 64);
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST_CASE("levelset command") {
  const ExperimentConfig c = parse_config("n=3\nm=1\nsurface=slice\ns=4\nls_radial_cells=60\nls_levels=0.5,1");
  const auto dir = scratch("ls");
  const LabOutcome out = run_command(c, Command::levelset, dir.string());
  CHECK(out.status() == ReportStatus::pass);
  for (const char* f : {"field.csv", "level_0.txt", "level_1.txt", "series.csv"})
    CHECK(std::filesystem::exists(dir / f));
  std::filesystem::remove_all(dir);
}
