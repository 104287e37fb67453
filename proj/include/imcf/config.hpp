#pragma once

// Flat key=value experiment configuration. One assignment per line, '#'
// starts a comment, later assignments override earlier ones.

#include <string>
#include <string_view>
#include <vector>

#include "imcf/geometry.hpp"
#include "imcf/hypersurface.hpp"

namespace imcf {

enum class SurfaceKind { slice, sphere, offset_sphere, ellipsoid, file };

std::string to_string(SurfaceKind kind);

struct SurfaceSpec {
  SurfaceKind kind = SurfaceKind::slice;
  double s = 4.0;  // slice areal radius
  double r = 3.0;  // centred sphere isotropic radius
  double d = 0.5;  // offset sphere centre offset
  double R = 3.0;  // offset sphere radius
  double a = 3.0;  // spheroid equatorial semi-axis
  double c = 4.0;  // spheroid polar semi-axis
  std::string file;
};

/// Per-claim acceptance tolerances.
struct Tolerances {
  double statics = 1e-10;
  double equality = 1e-6;
  double inequality = 1e-8;
  double monotone = 1e-6;       // relative to Q(0), smooth flow
  double monotone_weak = 1e-3;  // relative to Q(0), weak flow
  double limit = 0.03;          // relative to the limit value
  double area_law = 1e-4;
  double weak_area = 1e-2;      // |Sigma_t| = e^t |Sigma| on level sets
  double flux = 1e-3;
};

struct ExperimentConfig {
  SpaceParams params;
  SurfaceSpec surface;
  int N = 128;
  double t_end = 3.0;
  double sample_every = 0.1;
  double dt_max = 1e-3;
  std::vector<double> eps_schedule{1e-1, 1e-2, 1e-3, 1e-4};
  double S_out_factor = 100.0;
  int ls_radial_cells = 96;
  int ls_angular_cells = 32;
  std::vector<double> ls_levels{0.5, 1.0, 1.5, 2.0};
  bool weak_monotonicity = false;
  Tolerances tol;
};

/// Parses and validates a configuration. n and m are required; everything
/// else is defaulted. Errors (code config): unknown keys, malformed values,
/// unknown surface kinds, out-of-range values.
ExperimentConfig parse_config(std::string_view text);

/// Reads a configuration file and applies "key=value" overrides after it.
ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Canonical text form; parse_config(config_to_text(c)) reproduces c.
std::string config_to_text(const ExperimentConfig& config);

/// Initial surface at resolution N (file surfaces keep their own resolution).
RadialGraph build_surface(const ExperimentConfig& config, int N);
inline RadialGraph build_surface(const ExperimentConfig& config) { return build_surface(config, config.N); }

/// True when the surface is a coordinate sphere about the origin.
bool is_round(const SurfaceSpec& surface);

}  // namespace imcf
