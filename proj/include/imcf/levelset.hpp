#pragma once

// Weak inverse mean curvature flow through the regularized level-set equation
//   div_g( grad u / sqrt(|grad u|^2 + eps^2) ) = sqrt(|grad u|^2 + eps^2)
// with u = 0 on the inner boundary and u = L - 2 on the outer boundary.
//
// Radial grids are uniform in xi = ln x, with x the areal radius s (polar
// chart) or the isotropic radius r. Axisymmetric grids are boundary fitted:
//   ln r = a(theta) + eta (ln R_out - a(theta)),  a = ln rho_Sigma,
// uniform in eta in [0, 1] and on the latitude grid of the inner graph.

#include <iosfwd>
#include <string>
#include <vector>

#include "imcf/flow_smooth.hpp"
#include "imcf/hypersurface.hpp"

namespace imcf {

enum class GridKind { radial, axisymmetric };
enum class RadialChart { polar, isotropic };

struct RadialGridSpec {
  int cells = 100;
  RadialChart chart = RadialChart::polar;
};

struct AxisymmetricGridSpec {
  int radial_cells = 96;
};

struct LevelSetOptions {
  /// Decreasing regularization values; the last one is the target.
  std::vector<double> eps_schedule{1e-1, 1e-2, 1e-3, 1e-4};
  /// Stages with eps > safety * |dOmega|_g / |Omega|_g have no solution and
  /// are skipped. The final stage must satisfy the bound.
  double solvability_safety = 0.5;
  double tolerance = 1e-10;
  int max_iterations = 200;
  /// Iterations without a new best residual before giving up.
  int stagnation_window = 30;
};

struct LevelSetField {
  SpaceParams params;
  GridKind kind = GridKind::radial;
  RadialChart chart = RadialChart::polar;
  int radial_cells = 0;   // M
  int angular_cells = 0;  // N, 0 on radial grids
  /// ln of the inner radius per latitude (a single entry on radial grids),
  /// in the chart variable of the grid.
  std::vector<double> inner_log_radius;
  double outer_log_radius = 0.0;
  /// Node values, row-major in (radial index i, latitude index j).
  std::vector<double> u;
  double eps = 0.0;
  double L = 0.0;

  std::vector<double> eps_solved;
  std::vector<double> eps_skipped;
  int iterations = 0;
  double residual_max = 0.0;

  int columns() const { return angular_cells + 1; }
  double& at(int i, int j) { return u[static_cast<std::size_t>(i) * columns() + j]; }
  double at(int i, int j) const { return u[static_cast<std::size_t>(i) * columns() + j]; }
  double theta(int j) const;
  /// Chart variable xi = ln x at node (i, j).
  double log_radius(int i, int j) const;
  /// Isotropic radius |x| at node (i, j).
  double isotropic_radius(int i, int j) const;
  /// Dirichlet value on the outer boundary, L - 2.
  double outer_value() const { return L - 2.0; }
};

/// Radial field around the slice s_inner; outer areal radius outer_factor * s_inner.
/// u starts linear in xi.
LevelSetField make_radial_field(const SpaceParams& params, double s_inner, const RadialGridSpec& grid,
                                double outer_factor = 100.0);

/// Axisymmetric field around a star-shaped graph; the outer isotropic radius
/// corresponds to outer_factor times the areal radius (|Sigma|_g / omega)^{1/(n-1)}.
LevelSetField make_axisymmetric_field(const RadialGraph& inner, const AxisymmetricGridSpec& grid,
                                      double outer_factor = 100.0);

/// Discrete residual at the interior nodes (i = 1..M-1, all j), row-major.
std::vector<double> residual(const LevelSetField& field);

/// Continuation in eps with damped Newton and a Picard fallback, starting
/// from field.u. Throws NonconvergenceError on stagnation and Error(config)
/// when the final eps violates the solvability bound.
LevelSetField solve(LevelSetField field, const LevelSetOptions& options = {});

LevelSetField solve_radial(const SpaceParams& params, const RoundSphereSurface& inner, const RadialGridSpec& grid,
                           const LevelSetOptions& options = {}, double outer_factor = 100.0);
LevelSetField solve_axisymmetric(const RadialGraph& inner, const AxisymmetricGridSpec& grid,
                                 const LevelSetOptions& options = {}, double outer_factor = 100.0);

/// g-volume of the grid domain and g-area of its boundary.
struct DomainMeasure {
  double volume = 0.0;
  double boundary_area = 0.0;
};

DomainMeasure domain_measure(const LevelSetField& field);

/// |grad u|_g at every node, one-sided at the radial ends.
std::vector<double> gradient_norm(const LevelSetField& field);

struct ExtractedLevel {
  double t = 0.0;
  RadialGraph graph;
  /// |grad u|_g interpolated to the contour, per latitude node.
  std::vector<double> weak_mean_curvature;
};

/// Contour u = t along each ray (first crossing, linear in xi). Radial fields
/// produce a graph with radial_output_cells latitude cells. Throws
/// Error(extraction) when a ray crosses the level more than once or t is out
/// of (0, L - 2).
ExtractedLevel extract_level(const LevelSetField& field, double t, int radial_output_cells = 32);

/// Functionals of the extracted levels with the weak mean curvature.
FlowSeries weak_Q_series(const LevelSetField& field, const std::vector<double>& levels, int radial_output_cells = 32);

/// max |grad u|_g |x| over interior nodes with |x| > 2 max_theta rho_Sigma.
double gradient_bound_constant(const LevelSetField& field);

/// CSV "s,u" / "r,u" for radial fields, "r,theta,u" (isotropic r) for
/// axisymmetric ones.
void write_field_csv(std::ostream& os, const LevelSetField& field);
void write_field_csv(const std::string& path, const LevelSetField& field);

}  // namespace imcf
