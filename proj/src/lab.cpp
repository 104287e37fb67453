#include "imcf/lab.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "imcf/error.hpp"
#include "numeric_util.hpp"

namespace imcf {

namespace {

using detail::format_double;

constexpr int kStaticSamples = 100;
constexpr double kLimitMinTime = 3.0;

std::string fmt(double x) { return format_double(x); }

/// Largest forward difference of a sampled column over samples with t >= from.
template <class Get>
double max_increase(const FlowSeries& series, double from, Get get) {
  double worst = 0.0;
  bool any = false;
  for (std::size_t k = 1; k < series.samples.size(); ++k) {
    if (series.samples[k - 1].t < from) continue;
    const double inc = get(series.samples[k]) - get(series.samples[k - 1]);
    worst = any ? std::max(worst, inc) : inc;
    any = true;
  }
  return worst;
}

/// Isotropic radius of a configured coordinate sphere.
double round_isotropic_radius(const ExperimentConfig& c) {
  const SurfaceSpec& s = c.surface;
  switch (s.kind) {
    case SurfaceKind::slice: return isotropic_from_polar(s.s, c.params);
    case SurfaceKind::sphere: return s.r;
    case SurfaceKind::offset_sphere: return s.R;
    case SurfaceKind::ellipsoid: return s.a;
    case SurfaceKind::file: break;
  }
  throw Error(ErrorCode::config, "surface is not a coordinate sphere");
}

bool is_radial(const ExperimentConfig& c) { return c.surface.kind != SurfaceKind::file && is_round(c.surface); }

std::string proxy_note() {
  return "outward-minimizing hypothesis certified through Euclidean convexity of the radial graph "
         "(sufficient proxy, not a verification of outward minimization)";
}

std::string run_note(const RunResult& run) {
  std::ostringstream os;
  os << "flow stopped at t=" << fmt(run.stop_time) << " (" << to_string(run.status) << ")";
  if (!run.message.empty()) os << ": " << run.message;
  return os.str();
}

/// Weak series over the configured levels with the initial surface as t = 0.
FlowSeries weak_series(const ExperimentConfig& c, const LevelSetField& field) {
  const RadialGraph inner = build_surface(c, c.ls_angular_cells);
  FlowSeries series;
  series.samples.push_back(make_sample(0.0, functionals(schwarzschild_geometry(inner))));
  const FlowSeries levels = weak_Q_series(field, c.ls_levels);
  series.samples.insert(series.samples.end(), levels.samples.begin(), levels.samples.end());
  return series;
}

void write_file(const std::filesystem::path& path, const std::string& content, std::vector<std::string>& artifacts) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::io, "cannot open output file: " + path.string());
  os << content;
  if (!os) throw Error(ErrorCode::io, "failed writing output file: " + path.string());
  artifacts.push_back(path.filename().string());
}

template <class Writer>
std::string render(Writer&& writer) {
  std::ostringstream os;
  writer(os);
  return os.str();
}

}  // namespace

std::string to_string(ClaimKind kind) {
  switch (kind) {
    case ClaimKind::within: return "within";
    case ClaimKind::at_most: return "at_most";
    case ClaimKind::at_least: return "at_least";
    case ClaimKind::must_break: return "must_break";
  }
  return "unknown";
}

bool evaluate(ClaimKind kind, double measured, double expected, double tolerance) {
  if (!std::isfinite(measured)) return kind == ClaimKind::must_break;
  switch (kind) {
    case ClaimKind::within: return std::abs(measured - expected) <= tolerance;
    case ClaimKind::at_most: return measured <= expected + tolerance;
    case ClaimKind::at_least: return measured >= expected - tolerance;
    case ClaimKind::must_break: return std::abs(measured - expected) > tolerance;
  }
  return false;
}

Claim make_claim(std::string id, std::string anchor, ClaimKind kind, double measured, double expected,
                 double tolerance) {
  return Claim{std::move(id), std::move(anchor), kind, measured, expected, tolerance,
               evaluate(kind, measured, expected, tolerance)};
}

std::string to_string(ReportStatus status) {
  switch (status) {
    case ReportStatus::pass: return "PASS";
    case ReportStatus::fail: return "FAIL";
    case ReportStatus::inconclusive: return "INCONCLUSIVE";
  }
  return "UNKNOWN";
}

ReportStatus VerificationReport::status() const {
  for (const Claim& c : claims)
    if (!c.pass) return ReportStatus::fail;
  return inconclusive ? ReportStatus::inconclusive : ReportStatus::pass;
}

VerificationReport verify_statics(const ExperimentConfig& config) {
  const SpaceParams& p = config.params;
  VerificationReport report{"statics", {}, {}, {}, false};
  const StaticProbe probe{};
  const double r0 = p.horizon_isotropic();
  const double lo = std::max(1.05 * r0, r0 + 5.0 * probe.h), hi = 100.0 * r0;
  double hess = 0.0, lap = 0.0, sphere = 0.0;
  for (int k = 0; k < kStaticSamples; ++k) {
    const double r = lo * std::pow(hi / lo, k / double(kStaticSamples - 1));
    const double theta = (k + 0.5) * std::numbers::pi / kStaticSamples;
    const StaticResidual res = static_residual(IsotropicPoint{r, theta}, p, probe);
    hess = std::max(hess, res.hessian);
    lap = std::max(lap, res.laplacian);
    sphere = std::max(sphere, sphere_static_identity_residual(r, p));
  }
  const double tol = config.tol.statics;
  report.claims.push_back(make_claim("statics.hessian", "Hess f = f Ric on the exterior region", ClaimKind::at_most,
                                     hess, 0.0, tol));
  report.claims.push_back(
      make_claim("statics.laplacian", "Lap f = 0 on the exterior region", ClaimKind::at_most, lap, 0.0, tol));
  report.claims.push_back(make_claim("statics.sphere_identity",
                                     "Lap_S f + f Ric(nu,nu) = -H <nu, grad f> on coordinate spheres",
                                     ClaimKind::at_most, sphere, 0.0, tol));

  // f^2 = 1 - 3 m s^{2-n} is real only for s^{n-2} > 3 m.
  StaticProbe control = probe;
  control.potential_coefficient = 3.0;
  const double s_real = std::pow(3.0 * p.m, 1.0 / (p.n - 2));
  const double clo = isotropic_from_polar(2.0 * s_real, p), chi = std::max(hi, 10.0 * clo);
  double broken = 0.0;
  for (int k = 0; k < kStaticSamples; ++k) {
    const double r = clo * std::pow(chi / clo, k / double(kStaticSamples - 1));
    const double theta = (k + 0.5) * std::numbers::pi / kStaticSamples;
    const StaticResidual res = static_residual(IsotropicPoint{r, theta}, p, control);
    broken = std::max({broken, res.hessian, res.laplacian});
  }
  report.claims.push_back(make_claim("statics.negative_control",
                                     "perturbed potential f^2 = 1 - 3 m s^{2-n} violates the static equations",
                                     ClaimKind::must_break, broken, 0.0, tol));
  std::ostringstream os;
  os << kStaticSamples << " sample points, isotropic r in [" << fmt(lo) << ", " << fmt(hi) << "]";
  report.notes.push_back(os.str());
  return report;
}

VerificationReport verify_inequality(const ExperimentConfig& config) {
  VerificationReport report{"inequality", {}, {}, {}, false};
  const SurfaceGeometry geom = schwarzschild_geometry(build_surface(config));
  const MinkowskiReport mk = minkowski_report(geom);
  const Functionals fn = functionals(geom);
  report.notes.push_back("lhs=" + fmt(mk.lhs) + " rhs=" + fmt(mk.rhs) + " Q=" + fmt(fn.Q));
  const std::string anchor =
      "int f H / ((n-1) omega) >= (|Sigma| / omega)^{(n-2)/(n-1)} - 2m for outward-minimizing Sigma";
  if (is_euclidean_convex(geom)) {
    report.notes.push_back(proxy_note());
    report.claims.push_back(
        make_claim("inequality.slack", anchor, ClaimKind::at_least, mk.slack, 0.0, config.tol.inequality));
  } else {
    report.inconclusive = true;
    report.notes.push_back("surface is not Euclidean convex; outward minimization is not certified and the slack " +
                           fmt(mk.slack) + " is recorded without a claim");
  }
  if (is_round(config.surface)) {
    report.claims.push_back(make_claim("equality.slack", "equality holds on coordinate spheres", ClaimKind::within,
                                       mk.slack, 0.0, config.tol.equality));
    report.claims.push_back(make_claim("equality.Q", "Q equals (n-1) omega^{1/(n-1)} on coordinate spheres",
                                       ClaimKind::within, fn.Q, q_limit(config.params), config.tol.equality));
  }
  return report;
}

RunResult run_smooth(const ExperimentConfig& config) {
  const RadialGraph initial = build_surface(config);
  FlowOptions options;
  options.dt_max = config.dt_max;
  try {
    return run(initial, config.t_end, config.sample_every, options);
  } catch (const FlowBreakdownError& e) {
    return RunResult{FlowSeries{}, RunStatus::breakdown, e.time(), e.what(), initial};
  }
}

VerificationReport verify_monotonicity(const ExperimentConfig& config) {
  return verify_monotonicity(config, run_smooth(config));
}

VerificationReport verify_monotonicity(const ExperimentConfig& config, const RunResult& run) {
  VerificationReport report{"monotonicity", {}, {}, {}, false};
  if (run.status != RunStatus::completed) {
    report.inconclusive = true;
    report.notes.push_back(run_note(run));
  }
  if (run.series.empty()) return report;
  const FlowSeries& s = run.series;
  const double Q0 = s.front().Q;
  report.claims.push_back(make_claim("monotonicity.smooth", "Q(t) is non-increasing along the smooth flow",
                                     ClaimKind::at_most, max_increase(s, 0.0, [](auto& x) { return x.Q; }), 0.0,
                                     config.tol.monotone * std::abs(Q0)));
  double area_err = 0.0, flux_err = 0.0;
  const double flux = config.params.m * (config.params.n - 2) * config.params.omega();
  for (const FlowSample& x : s.samples) {
    area_err = std::max(area_err, std::abs(x.area / (s.front().area * std::exp(x.t)) - 1.0));
    flux_err = std::max(flux_err, std::abs(x.flux / flux - 1.0));
  }
  report.claims.push_back(make_claim("area_law.smooth", "|Sigma_t| = e^t |Sigma| (relative deviation)",
                                     ClaimKind::at_most, area_err, 0.0, config.tol.area_law));
  report.claims.push_back(make_claim("flux.along_flow", "int <grad f, nu> = m (n-2) omega along the flow (relative)",
                                     ClaimKind::at_most, flux_err, 0.0, config.tol.flux));
  report.notes.push_back("samples=" + std::to_string(s.samples.size()) + " Q(0)=" + fmt(Q0) +
                         " Q(end)=" + fmt(s.back().Q));
  if (config.weak_monotonicity) {
    const LevelSetField field = solve_levelset(config);
    const FlowSeries weak = weak_series(config, field);
    report.claims.push_back(make_claim("monotonicity.weak", "Q(t) is non-increasing along the weak flow",
                                       ClaimKind::at_most, max_increase(weak, 0.0, [](auto& x) { return x.Q; }),
                                       0.0, config.tol.monotone_weak * std::abs(Q0)));
  }
  return report;
}

VerificationReport verify_limit(const ExperimentConfig& config) {
  if (config.t_end < kLimitMinTime) throw Error(ErrorCode::config, "limit verification needs t_end >= 3");
  return verify_limit(config, run_smooth(config));
}

VerificationReport verify_limit(const ExperimentConfig& config, const RunResult& run) {
  if (config.t_end < kLimitMinTime) throw Error(ErrorCode::config, "limit verification needs t_end >= 3");
  VerificationReport report{"limit", {}, {}, {}, false};
  if (run.status != RunStatus::completed || run.series.empty()) {
    report.inconclusive = true;
    report.notes.push_back(run_note(run));
    return report;
  }
  const double limit = q_limit(config.params);
  const FlowSeries& s = run.series;
  report.claims.push_back(make_claim("limit.distance", "Q(t) tends to (n-1) omega^{1/(n-1)}", ClaimKind::within,
                                     s.back().Q, limit, config.tol.limit * limit));
  const double half = 0.5 * config.t_end - 1e-12;
  report.claims.push_back(make_claim("limit.gap_decreasing",
                                     "Q(t) - (n-1) omega^{1/(n-1)} decreases over the last half of the run",
                                     ClaimKind::at_most,
                                     max_increase(s, half, [limit](auto& x) { return x.Q - limit; }), 0.0,
                                     config.tol.monotone * std::abs(s.front().Q)));
  report.notes.push_back("limit=" + fmt(limit) + " gap(t_end)=" + fmt(s.back().Q - limit));
  return report;
}

VerificationReport verify_flux(const ExperimentConfig& config) {
  VerificationReport report{"flux", {}, {}, {}, false};
  const SpaceParams& p = config.params;
  const SurfaceSpec& spec = config.surface;
  const double expected = p.m * (p.n - 2) * p.omega();
  const double s = spec.kind == SurfaceKind::slice ? spec.s : std::max(spec.s, 2.0 * p.horizon_polar());
  const std::vector<std::pair<std::string, RadialGraph>> surfaces{
      {"slice", surfaces::slice(p, s, config.N)},
      {"spheroid", surfaces::spheroid(p, spec.a, spec.c, config.N)},
      {"offset_sphere", surfaces::offset_sphere(p, spec.d, spec.R, config.N)},
  };
  for (const auto& [name, graph] : surfaces) {
    const Functionals fn = functionals(schwarzschild_geometry(graph));
    report.claims.push_back(make_claim("flux." + name, "int <grad f, nu> = m (n-2) omega on enclosing surfaces",
                                       ClaimKind::within, fn.flux, expected, config.tol.flux * expected));
  }
  report.notes.push_back(
      "surfaces not enclosing the horizon have zero flux by the divergence theorem and Lap f = 0; they are not "
      "radial graphs and are covered analytically by the statics claims");
  return report;
}

LevelSetField solve_levelset(const ExperimentConfig& config) {
  LevelSetOptions options;
  options.eps_schedule = config.eps_schedule;
  if (is_radial(config)) {
    const double s = polar_from_isotropic(round_isotropic_radius(config), config.params);
    return solve_radial(config.params, RoundSphereSurface{config.params, s},
                        RadialGridSpec{config.ls_radial_cells, RadialChart::polar}, options, config.S_out_factor);
  }
  return solve_axisymmetric(build_surface(config, config.ls_angular_cells),
                            AxisymmetricGridSpec{config.ls_radial_cells}, options, config.S_out_factor);
}

VerificationReport verify_weak(const ExperimentConfig& config, const LevelSetField& field) {
  VerificationReport report{"weak_flow", {}, {}, {}, false};
  const FlowSeries series = weak_series(config, field);
  const double A0 = series.front().area, Q0 = series.front().Q;
  double area_err = 0.0;
  for (std::size_t k = 1; k < series.samples.size(); ++k) {
    const FlowSample& x = series.samples[k];
    area_err = std::max(area_err, std::abs(x.area / (A0 * std::exp(x.t)) - 1.0));
  }
  report.claims.push_back(make_claim("area_law.weak", "|Sigma_t| = e^t |Sigma| on level sets (relative deviation)",
                                     ClaimKind::at_most, area_err, 0.0, config.tol.weak_area));
  report.claims.push_back(make_claim("monotonicity.weak", "Q(t) is non-increasing along the weak flow",
                                     ClaimKind::at_most, max_increase(series, 0.0, [](auto& x) { return x.Q; }),
                                     0.0, config.tol.monotone_weak * std::abs(Q0)));
  std::ostringstream os;
  os << "eps=" << fmt(field.eps) << " iterations=" << field.iterations << " residual=" << fmt(field.residual_max)
     << " skipped stages=" << field.eps_skipped.size();
  report.notes.push_back(os.str());
  return report;
}

Command parse_command(std::string_view name) {
  if (name == "geometry-check") return Command::geometry_check;
  if (name == "flow") return Command::flow;
  if (name == "levelset") return Command::levelset;
  if (name == "verify") return Command::verify;
  if (name == "all") return Command::all;
  throw Error(ErrorCode::config, "unknown command '" + std::string(name) + "'");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::geometry_check: return "geometry-check";
    case Command::flow: return "flow";
    case Command::levelset: return "levelset";
    case Command::verify: return "verify";
    case Command::all: return "all";
  }
  return "unknown";
}

ReportStatus LabOutcome::status() const {
  bool inconclusive = false;
  for (const VerificationReport& r : reports) {
    const ReportStatus s = r.status();
    if (s == ReportStatus::fail) return s;
    inconclusive = inconclusive || s == ReportStatus::inconclusive;
  }
  return inconclusive ? ReportStatus::inconclusive : ReportStatus::pass;
}

LabOutcome run_command(const ExperimentConfig& config, Command command, const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create output directory " + out_dir + ": " + ec.message());

  LabOutcome out;
  FlowSeries series;
  std::vector<std::string>& files = out.artifacts;
  write_file(dir / "config.cfg", config_to_text(config), files);

  const bool smooth = command == Command::flow || command == Command::verify || command == Command::all;
  const bool weak = command == Command::levelset || command == Command::all;

  if (command == Command::geometry_check || command == Command::verify || command == Command::all) {
    out.reports.push_back(verify_statics(config));
    out.reports.push_back(verify_inequality(config));
  }
  if (command == Command::geometry_check) {
    const RadialGraph graph = build_surface(config);
    series.samples.push_back(make_sample(0.0, functionals(schwarzschild_geometry(graph))));
    write_file(dir / "surface.txt", render([&](std::ostream& os) { write_surface(os, graph); }), files);
  }
  if (smooth) {
    const RunResult run = run_smooth(config);
    series = run.series;
    out.reports.push_back(verify_monotonicity(config, run));
    if (config.t_end >= kLimitMinTime)
      out.reports.push_back(verify_limit(config, run));
    else
      out.reports.back().notes.push_back("limit not checked: t_end < 3");
    write_file(dir / "surface_final.txt", render([&](std::ostream& os) { write_surface(os, run.final_graph); }),
               files);
  }
  if (command == Command::geometry_check || command == Command::verify || command == Command::all)
    out.reports.push_back(verify_flux(config));
  if (weak) {
    const LevelSetField field = solve_levelset(config);
    out.reports.push_back(verify_weak(config, field));
    const FlowSeries ws = weak_series(config, field);
    write_file(dir / "field.csv", render([&](std::ostream& os) { write_field_csv(os, field); }), files);
    for (std::size_t k = 0; k < config.ls_levels.size(); ++k) {
      const ExtractedLevel level = extract_level(field, config.ls_levels[k]);
      write_file(dir / ("level_" + std::to_string(k) + ".txt"),
                 render([&](std::ostream& os) { write_surface(os, level.graph); }), files);
    }
    if (command == Command::levelset)
      series = ws;
    else
      write_file(dir / "weak_series.csv", render([&](std::ostream& os) { write_series_csv(os, ws); }), files);
  }

  write_file(dir / "series.csv", render([&](std::ostream& os) { write_series_csv(os, series); }), files);
  write_file(dir / "plot.gp", render([&](std::ostream& os) { write_plot_script(os, config.params, "series.csv"); }),
             files);
  for (VerificationReport& r : out.reports) r.artifacts = files;
  write_file(dir / "report.jsonl", render([&](std::ostream& os) { write_report_jsonl(os, out.reports); }), files);
  write_file(dir / "report.txt", render([&](std::ostream& os) { write_report_text(os, out.reports); }), files);
  return out;
}

void write_report_text(std::ostream& os, const std::vector<VerificationReport>& reports) {
  bool inconclusive = false, failed = false;
  for (const VerificationReport& r : reports) {
    const ReportStatus status = r.status();
    failed = failed || status == ReportStatus::fail;
    inconclusive = inconclusive || status == ReportStatus::inconclusive;
    os << "experiment " << r.experiment << ": " << to_string(status) << '\n';
    for (const Claim& c : r.claims) {
      os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.id << ": " << c.anchor << '\n'
         << "         measured " << fmt(c.measured) << ", " << to_string(c.kind) << ' ' << fmt(c.expected)
         << ", tolerance " << fmt(c.tolerance) << '\n';
    }
    for (const std::string& n : r.notes) os << "  note: " << n << '\n';
  }
  os << "overall: "
     << (failed ? "FAIL" : inconclusive ? "INCONCLUSIVE" : "PASS") << '\n';
}

void write_report_jsonl(std::ostream& os, const std::vector<VerificationReport>& reports) {
  using nlohmann::json;
  for (const VerificationReport& r : reports) {
    for (const Claim& c : r.claims) {
      json line = {{"experiment", r.experiment}, {"id", c.id},           {"anchor", c.anchor},
                   {"kind", to_string(c.kind)},  {"measured", c.measured}, {"expected", c.expected},
                   {"tolerance", c.tolerance},   {"pass", c.pass}};
      os << line.dump() << '\n';
    }
    json summary = {{"experiment", r.experiment},
                    {"status", to_string(r.status())},
                    {"notes", r.notes},
                    {"artifacts", r.artifacts}};
    os << summary.dump() << '\n';
  }
}

void write_plot_script(std::ostream& os, const SpaceParams& params, const std::string& series_file) {
  os << "set datafile separator ','\n"
     << "set terminal pngcairo size 900,540\n"
     << "set output 'Q.png'\n"
     << "set xlabel 't'\n"
     << "set ylabel 'Q(t)'\n"
     << "set key top right\n"
     << "limit = " << fmt(q_limit(params)) << '\n'
     << "plot '" << series_file << "' using 1:5 skip 1 with linespoints title 'Q', \\\n"
     << "     limit with lines dashtype 2 title '(n-1) omega^{1/(n-1)}'\n";
}

}  // namespace imcf
