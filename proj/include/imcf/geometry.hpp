#pragma once

// Closed-form geometry of the n-dimensional Schwarzschild space.
//
// Two charts are used. The polar chart (s, theta) has metric
//   g = ds^2 / (1 - 2 m s^{2-n}) + s^2 g_{S^{n-1}},
// and the isotropic chart x in R^n \ D_{r0} has the conformally flat metric
//   g = (1 + m/2 |x|^{2-n})^{4/(n-2)} delta = e^{2 psi} delta.
// The isotropic chart is the canonical internal representation; polar
// quantities are derived through polar_from_isotropic.

namespace imcf {

/// Dimension and mass of a Schwarzschild space. Construct through make().
struct SpaceParams {
  int n = 3;
  double m = 1.0;

  /// Validates n >= 3 and m > 0 (finite).
  static SpaceParams make(int n, double m);

  /// Areal radius of the horizon, s0 = (2m)^{1/(n-2)}.
  double horizon_polar() const;
  /// Isotropic radius of the horizon, r0 = (m/2)^{1/(n-2)}.
  double horizon_isotropic() const;
  /// omega_{n-1}, area of the unit sphere in R^n.
  double omega() const;
};

struct PolarPoint {
  double s = 0.0;
  double theta = 0.0;  // latitude for axisymmetric work
};

struct IsotropicPoint {
  double r = 0.0;
  double theta = 0.0;
};

/// Relative margin of the horizon guard: inputs with s <= s0 (1 + margin)
/// are rejected.
inline constexpr double kHorizonMargin = 1e-12;

double unit_sphere_area(int n);

double polar_from_isotropic(double r, const SpaceParams& params);
double isotropic_from_polar(double s, const SpaceParams& params);

double potential_f(const PolarPoint& point, const SpaceParams& params);
double potential_f(const IsotropicPoint& point, const SpaceParams& params);

/// Value and first two radial derivatives of a radial function.
struct RadialJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// psi = 2/(n-2) ln(1 + m/2 r^{2-n}) and its radial derivatives in the
/// isotropic radius. value/d1 are the (psi, dpsi/dr) pair.
RadialJet conformal_psi(double r, const SpaceParams& params);

/// ds/dr and d^2s/dr^2 of the chart map, with value = s(r).
RadialJet polar_radius_jet(double r, const SpaceParams& params);

/// Potential along the isotropic radius, f(r) = sqrt(1 - k m s(r)^{2-n}),
/// differentiated through the chain rule via s(r). The physical potential has
/// k = 2; other coefficients only exist for negative-control experiments.
RadialJet potential_jet(double r, const SpaceParams& params, double coefficient = 2.0);

enum class DerivativeMode { analytic, central_difference };

struct StaticProbe {
  DerivativeMode mode = DerivativeMode::analytic;
  /// Central-difference step in the isotropic chart. Also sets the required
  /// clearance from the horizon (4h) in either mode.
  double h = 1e-3;
  /// Coefficient k in f^2 = 1 - k m s^{2-n}.
  double potential_coefficient = 2.0;
};

struct StaticResidual {
  double hessian = 0.0;    // max_ij |Hess f - f Ric|
  double laplacian = 0.0;  // |Lap f|
};

/// Residuals of the static equations Hess f = f Ric and Lap f = 0 at a point,
/// evaluated with the conformal-metric formulas for Christoffel symbols and
/// Ricci curvature of e^{2 psi} delta in Cartesian components of R^n.
StaticResidual static_residual(const IsotropicPoint& point, const SpaceParams& params,
                               const StaticProbe& probe = {});

/// |Lap_S f + f Ric(nu,nu) + H <nu, grad f>| on the coordinate sphere of
/// isotropic radius r. Lap_S f vanishes there since f is constant on spheres.
double sphere_static_identity_residual(double r, const SpaceParams& params);

}  // namespace imcf
