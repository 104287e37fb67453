#pragma once

// Verification campaigns. Each verify_* call returns a report whose claim
// pass flags are pure functions of (kind, measured, expected, tolerance).

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "imcf/config.hpp"
#include "imcf/flow_smooth.hpp"
#include "imcf/levelset.hpp"

namespace imcf {

enum class ClaimKind {
  within,      // |measured - expected| <= tolerance
  at_most,     // measured <= expected + tolerance
  at_least,    // measured >= expected - tolerance
  must_break,  // negative control: |measured - expected| > tolerance
};

std::string to_string(ClaimKind kind);

struct Claim {
  std::string id;
  std::string anchor;  // statement under test
  ClaimKind kind = ClaimKind::within;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

bool evaluate(ClaimKind kind, double measured, double expected, double tolerance);
Claim make_claim(std::string id, std::string anchor, ClaimKind kind, double measured, double expected,
                 double tolerance);

enum class ReportStatus { pass, fail, inconclusive };

std::string to_string(ReportStatus status);

struct VerificationReport {
  std::string experiment;
  std::vector<Claim> claims;
  std::vector<std::string> notes;
  std::vector<std::string> artifacts;  // file names relative to the output directory
  /// Set when the experiment could not run to completion (flow breakdown).
  bool inconclusive = false;

  /// fail if any claim fails, otherwise inconclusive or pass.
  ReportStatus status() const;
};

/// Static equations at 100 points on a log-spaced radial range, plus the
/// sphere identity and a negative control with f^2 = 1 - 3 m s^{2-n}.
VerificationReport verify_statics(const ExperimentConfig& config);

/// Minkowski-type inequality for the configured surface; equality claims on
/// coordinate spheres.
VerificationReport verify_inequality(const ExperimentConfig& config);

/// Smooth flow with the configured surface.
RunResult run_smooth(const ExperimentConfig& config);

/// Non-increasing Q along the smooth run (and the weak series when
/// config.weak_monotonicity is set), area law, conserved flux. Breakdown makes
/// the report inconclusive.
VerificationReport verify_monotonicity(const ExperimentConfig& config);
VerificationReport verify_monotonicity(const ExperimentConfig& config, const RunResult& run);

/// Q(t_end) near the limit and a decreasing gap over [t_end / 2, t_end].
/// Requires t_end >= 3 (Error(config) otherwise).
VerificationReport verify_limit(const ExperimentConfig& config);
VerificationReport verify_limit(const ExperimentConfig& config, const RunResult& run);

/// Flux of grad f on a slice, a spheroid and an offset sphere.
VerificationReport verify_flux(const ExperimentConfig& config);

/// Level-set solve for the configured surface: radial for coordinate spheres,
/// axisymmetric otherwise.
LevelSetField solve_levelset(const ExperimentConfig& config);

/// Area law and non-increasing weak Q at config.ls_levels.
VerificationReport verify_weak(const ExperimentConfig& config, const LevelSetField& field);

enum class Command { geometry_check, flow, levelset, verify, all };

/// "geometry-check", "flow", "levelset", "verify", "all"; Error(config) otherwise.
Command parse_command(std::string_view name);
std::string to_string(Command command);

struct LabOutcome {
  std::vector<VerificationReport> reports;
  std::vector<std::string> artifacts;

  ReportStatus status() const;
};

/// Runs a command and writes its artifacts (series.csv, report.txt,
/// report.jsonl, plot.gp and command-specific files) into out_dir, which is
/// created when missing.
LabOutcome run_command(const ExperimentConfig& config, Command command, const std::string& out_dir);

void write_report_text(std::ostream& os, const std::vector<VerificationReport>& reports);
void write_report_jsonl(std::ostream& os, const std::vector<VerificationReport>& reports);
/// gnuplot script plotting Q against t from series_file with the limit line.
void write_plot_script(std::ostream& os, const SpaceParams& params, const std::string& series_file);

}  // namespace imcf
