#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "imcf/geometry.hpp"

namespace imcf {

/// Axisymmetric star-shaped hypersurface r = rho(theta) in the isotropic
/// chart, sampled on the uniform latitude grid theta_k = k pi / N including
/// both poles. Rotation is about the last coordinate axis.
class RadialGraph {
 public:
  static constexpr int kMinNodes = 16;

  /// rho holds N + 1 isotropic radii. Requires N >= 16 and finite samples;
  /// positivity and horizon clearance are checked by the geometry routines.
  RadialGraph(SpaceParams params, std::vector<double> rho);

  static RadialGraph from_function(SpaceParams params, int N, const std::function<double(double)>& rho_of_theta);

  /// Same grid and quadrature with new samples.
  RadialGraph with_rho(std::vector<double> rho) const;

  const SpaceParams& params() const { return params_; }
  int N() const { return static_cast<int>(rho_.size()) - 1; }
  double spacing() const;
  double theta(int k) const;
  std::span<const double> rho() const { return rho_; }

  /// Weights w_k with sum_k w_k g(theta_k) ~ int_{S^{n-1}} g: the
  /// piecewise-linear interpolant of g integrated exactly against
  /// omega_{n-2} sin^{n-2} theta.
  std::span<const double> weights() const { return weights_; }

 private:
  RadialGraph(SpaceParams params, std::vector<double> rho, std::vector<double> weights);

  SpaceParams params_;
  std::vector<double> rho_;
  std::vector<double> weights_;
};

/// Coordinate sphere {s} x S^{n-1}.
struct RoundSphereSurface {
  SpaceParams params;
  double s = 0.0;

  RadialGraph to_graph(int N) const;
};

namespace surfaces {
RadialGraph slice(const SpaceParams& params, double s, int N);
/// Euclidean sphere of radius r centred at the origin of the isotropic chart.
RadialGraph centered_sphere(const SpaceParams& params, double r, int N);
/// Euclidean sphere |x - d e_axis| = R; must enclose the origin (|d| < R).
RadialGraph offset_sphere(const SpaceParams& params, double d, double R, int N);
/// Spheroid with equatorial semi-axis a and polar semi-axis c.
RadialGraph spheroid(const SpaceParams& params, double a, double c, int N);
}  // namespace surfaces

/// Per-node first and second fundamental data. Euclidean quantities refer to
/// the flat metric of the isotropic chart; Schwarzschild quantities to
/// g = e^{2 psi} delta. Area densities exclude the quadrature weight.
struct SurfaceGeometry {
  SpaceParams params;
  std::vector<double> theta;
  std::vector<double> weights;
  std::vector<double> rho;
  std::vector<double> rho_theta;

  // Euclidean outward normal in the (r-hat, theta-hat) frame.
  std::vector<double> normal_radial;
  std::vector<double> normal_polar;
  std::vector<double> kappa_meridian;
  std::vector<double> kappa_latitude;  // multiplicity n - 2
  std::vector<double> mean_curvature_euclid;
  std::vector<double> area_density_euclid;

  bool has_schwarzschild = false;
  std::vector<double> psi;
  std::vector<double> dpsi_normal;  // d psi . nu-bar
  std::vector<double> mean_curvature;
  std::vector<double> area_density;
  std::vector<double> potential;
  std::vector<double> flux_density;  // <grad f, nu>_g

  std::size_t size() const { return theta.size(); }

  /// e^{psi} H = H-bar + (n-1) d psi . nu-bar at node k.
  double conformal_mean_curvature(std::size_t k) const;

  /// |traceless Euclidean shape operator|^2 at node k.
  double traceless_norm_sq_euclid(std::size_t k) const;
  /// Same in the Schwarzschild metric, e^{-2 psi} times the Euclidean value.
  double traceless_norm_sq(std::size_t k) const;

  /// Copy with the Schwarzschild mean curvature replaced (weak curvature of
  /// level sets).
  SurfaceGeometry with_mean_curvature(std::span<const double> H) const;
};

SurfaceGeometry euclidean_geometry(const RadialGraph& graph);
SurfaceGeometry schwarzschild_geometry(const RadialGraph& graph);

struct Functionals {
  double area = 0.0;
  double int_fH = 0.0;
  double flux = 0.0;
  double Q = 0.0;
  double umbilicity = 0.0;
  double H_min = 0.0;
  double H_max = 0.0;
};

Functionals functionals(const SurfaceGeometry& geom);

/// Value approached by Q along the flow, (n-1) omega^{1/(n-1)}.
double q_limit(const SpaceParams& params);

/// Both sides of the Minkowski-type inequality
///   1/((n-1) omega) int f H  >=  (|Sigma|/omega)^{(n-2)/(n-1)} - 2m.
struct MinkowskiReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

MinkowskiReport minkowski_report(const SurfaceGeometry& geom);

/// True when both Euclidean principal curvatures are positive at every node;
/// used as the sufficient proxy for outward minimizing test surfaces.
bool is_euclidean_convex(const SurfaceGeometry& geom);

// Surface exchange format: "# n m N" then N + 1 lines "theta rho".
void write_surface(std::ostream& os, const RadialGraph& graph);
void write_surface(const std::string& path, const RadialGraph& graph);
RadialGraph read_surface(std::istream& is);
RadialGraph read_surface(const std::string& path);

}  // namespace imcf
