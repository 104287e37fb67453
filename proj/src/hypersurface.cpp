#include "imcf/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "imcf/error.hpp"
#include "numeric_util.hpp"

namespace imcf {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> latitude_weights(int n, int N) {
  // int over S^{n-1} of g = omega_{n-2} int_0^pi g sin^{n-2} theta d theta.
  static const detail::GaussRule rule = detail::gauss_legendre(16);
  const double h = kPi / N;
  const double omega = unit_sphere_area(n - 1);
  std::vector<double> w(N + 1, 0.0);
  for (int cell = 0; cell < N; ++cell) {
    const double a = cell * h, b = a + h;
    auto weight = [&](double t) { return std::pow(std::sin(t), n - 2); };
    const double left = detail::integrate(rule, a, b, [&](double t) { return (b - t) / h * weight(t); });
    const double right = detail::integrate(rule, a, b, [&](double t) { return (t - a) / h * weight(t); });
    w[cell] += omega * left;
    w[cell + 1] += omega * right;
  }
  return w;
}

}  // namespace

RadialGraph::RadialGraph(SpaceParams params, std::vector<double> rho) : params_(params), rho_(std::move(rho)) {
  if (static_cast<int>(rho_.size()) - 1 < kMinNodes) {
    std::ostringstream os;
    os << "radial graph needs N >= " << kMinNodes << " (got N = " << static_cast<int>(rho_.size()) - 1 << ")";
    throw Error(ErrorCode::invalid_surface, os.str());
  }
  for (double r : rho_)
    if (!std::isfinite(r)) throw Error(ErrorCode::invalid_surface, "radial graph sample is not finite");
  weights_ = latitude_weights(params_.n, N());
}

RadialGraph::RadialGraph(SpaceParams params, std::vector<double> rho, std::vector<double> weights)
    : params_(params), rho_(std::move(rho)), weights_(std::move(weights)) {
  for (double r : rho_)
    if (!std::isfinite(r)) throw Error(ErrorCode::invalid_surface, "radial graph sample is not finite");
}

RadialGraph RadialGraph::with_rho(std::vector<double> rho) const {
  if (rho.size() != rho_.size()) throw Error(ErrorCode::invalid_argument, "with_rho: sample count changed");
  return RadialGraph(params_, std::move(rho), weights_);
}

RadialGraph RadialGraph::from_function(SpaceParams params, int N, const std::function<double(double)>& rho_of_theta) {
  if (N < kMinNodes) throw Error(ErrorCode::invalid_surface, "radial graph needs N >= 16");
  std::vector<double> rho(N + 1);
  for (int k = 0; k <= N; ++k) rho[k] = rho_of_theta(kPi * k / N);
  return RadialGraph(params, std::move(rho));
}

double RadialGraph::spacing() const { return kPi / N(); }

double RadialGraph::theta(int k) const { return k == N() ? kPi : kPi * k / N(); }

RadialGraph RoundSphereSurface::to_graph(int N) const { return surfaces::slice(params, s, N); }

namespace surfaces {

RadialGraph slice(const SpaceParams& params, double s, int N) {
  if (!(s > params.horizon_polar() * (1.0 + kHorizonMargin)))
    throw Error(ErrorCode::horizon, "slice radius must lie outside the horizon");
  const double r = isotropic_from_polar(s, params);
  return RadialGraph(params, std::vector<double>(N + 1, r));
}

RadialGraph centered_sphere(const SpaceParams& params, double r, int N) {
  return RadialGraph(params, std::vector<double>(N + 1, r));
}

RadialGraph offset_sphere(const SpaceParams& params, double d, double R, int N) {
  if (!(R > std::abs(d))) throw Error(ErrorCode::invalid_surface, "offset sphere must enclose the origin");
  return RadialGraph::from_function(params, N, [=](double t) {
    const double st = std::sin(t);
    return d * std::cos(t) + std::sqrt(R * R - d * d * st * st);
  });
}

RadialGraph spheroid(const SpaceParams& params, double a, double c, int N) {
  if (!(a > 0.0 && c > 0.0)) throw Error(ErrorCode::invalid_surface, "spheroid semi-axes must be positive");
  return RadialGraph::from_function(params, N, [=](double t) {
    const double st = std::sin(t), ct = std::cos(t);
    return 1.0 / std::sqrt(st * st / (a * a) + ct * ct / (c * c));
  });
}

}  // namespace surfaces

double SurfaceGeometry::conformal_mean_curvature(std::size_t k) const {
  return mean_curvature_euclid[k] + (params.n - 1.0) * dpsi_normal[k];
}

double SurfaceGeometry::traceless_norm_sq_euclid(std::size_t k) const {
  const double n = params.n;
  const double diff = kappa_meridian[k] - kappa_latitude[k];
  return (n - 2.0) / (n - 1.0) * diff * diff;
}

double SurfaceGeometry::traceless_norm_sq(std::size_t k) const {
  return std::exp(-2.0 * psi[k]) * traceless_norm_sq_euclid(k);
}

SurfaceGeometry SurfaceGeometry::with_mean_curvature(std::span<const double> H) const {
  if (!has_schwarzschild || H.size() != size())
    throw Error(ErrorCode::invalid_argument, "with_mean_curvature: size mismatch or missing Schwarzschild data");
  SurfaceGeometry copy = *this;
  copy.mean_curvature.assign(H.begin(), H.end());
  return copy;
}

SurfaceGeometry euclidean_geometry(const RadialGraph& graph) {
  const int N = graph.N();
  const double h = graph.spacing();
  const auto rho = graph.rho();
  for (double r : rho)
    if (!(r > 0.0)) throw Error(ErrorCode::invalid_surface, "radial graph has a non-positive radius");

  SurfaceGeometry g;
  g.params = graph.params();
  g.weights.assign(graph.weights().begin(), graph.weights().end());
  g.rho.assign(rho.begin(), rho.end());
  const std::size_t count = static_cast<std::size_t>(N) + 1;
  g.theta.resize(count);
  g.rho_theta.resize(count);
  g.normal_radial.resize(count);
  g.normal_polar.resize(count);
  g.kappa_meridian.resize(count);
  g.kappa_latitude.resize(count);
  g.mean_curvature_euclid.resize(count);
  g.area_density_euclid.resize(count);

  const double n = g.params.n;
  for (int k = 0; k <= N; ++k) {
    const double t = graph.theta(k);
    // Ghost reflection about the poles: rho_{-1} = rho_1, rho_{N+1} = rho_{N-1}.
    const double prev = rho[k == 0 ? 1 : k - 1];
    const double next = rho[k == N ? N - 1 : k + 1];
    const double r = rho[k];
    const double d1 = (k == 0 || k == N) ? 0.0 : (next - prev) / (2.0 * h);
    const double d2 = (next - 2.0 * r + prev) / (h * h);
    const double len = std::hypot(r, d1);

    g.theta[k] = t;
    g.rho_theta[k] = d1;
    g.normal_radial[k] = r / len;
    g.normal_polar[k] = -d1 / len;
    g.kappa_meridian[k] = (r * r + 2.0 * d1 * d1 - r * d2) / (len * len * len);
    if (k == 0 || k == N) {
      g.kappa_latitude[k] = g.kappa_meridian[k];
    } else {
      const double st = std::sin(t), ct = std::cos(t);
      g.kappa_latitude[k] = (g.normal_radial[k] * st + g.normal_polar[k] * ct) / (r * st);
    }
    g.mean_curvature_euclid[k] = g.kappa_meridian[k] + (n - 2.0) * g.kappa_latitude[k];
    g.area_density_euclid[k] = std::pow(r, n - 2.0) * len;
  }
  return g;
}

SurfaceGeometry schwarzschild_geometry(const RadialGraph& graph) {
  SurfaceGeometry g = euclidean_geometry(graph);
  const SpaceParams& p = g.params;
  const double r0 = p.horizon_isotropic();
  for (double r : g.rho)
    if (!(r > r0) || !(polar_from_isotropic(r, p) > p.horizon_polar() * (1.0 + kHorizonMargin)))
      throw Error(ErrorCode::domain, "surface node lies on or inside the horizon");

  const std::size_t count = g.size();
  g.psi.resize(count);
  g.dpsi_normal.resize(count);
  g.mean_curvature.resize(count);
  g.area_density.resize(count);
  g.potential.resize(count);
  g.flux_density.resize(count);
  const double n = p.n;
  for (std::size_t k = 0; k < count; ++k) {
    const RadialJet psi = conformal_psi(g.rho[k], p);
    const RadialJet f = potential_jet(g.rho[k], p);
    const double e = std::exp(-psi.value);
    g.psi[k] = psi.value;
    g.dpsi_normal[k] = psi.d1 * g.normal_radial[k];
    g.mean_curvature[k] = e * g.conformal_mean_curvature(k);
    g.area_density[k] = std::exp((n - 1.0) * psi.value) * g.area_density_euclid[k];
    g.potential[k] = f.value;
    g.flux_density[k] = e * f.d1 * g.normal_radial[k];
  }
  g.has_schwarzschild = true;
  return g;
}

double q_limit(const SpaceParams& params) {
  return (params.n - 1.0) * std::pow(params.omega(), 1.0 / (params.n - 1.0));
}

Functionals functionals(const SurfaceGeometry& geom) {
  if (!geom.has_schwarzschild) throw Error(ErrorCode::invalid_argument, "functionals need Schwarzschild data");
  Functionals out;
  out.H_min = std::numeric_limits<double>::infinity();
  out.H_max = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < geom.size(); ++k) {
    const double dmu = geom.weights[k] * geom.area_density[k];
    out.area += dmu;
    out.int_fH += geom.potential[k] * geom.mean_curvature[k] * dmu;
    out.flux += geom.flux_density[k] * dmu;
    out.umbilicity += geom.traceless_norm_sq(k) * dmu;
    out.H_min = std::min(out.H_min, geom.mean_curvature[k]);
    out.H_max = std::max(out.H_max, geom.mean_curvature[k]);
  }
  const SpaceParams& p = geom.params;
  const double n = p.n;
  out.Q = std::pow(out.area, -(n - 2.0) / (n - 1.0)) * (out.int_fH + 2.0 * (n - 1.0) * p.m * p.omega());
  return out;
}

MinkowskiReport minkowski_report(const SurfaceGeometry& geom) {
  const Functionals fn = functionals(geom);
  const SpaceParams& p = geom.params;
  const double n = p.n, omega = p.omega();
  MinkowskiReport rep;
  rep.lhs = fn.int_fH / ((n - 1.0) * omega);
  rep.rhs = std::pow(fn.area / omega, (n - 2.0) / (n - 1.0)) - 2.0 * p.m;
  rep.slack = rep.lhs - rep.rhs;
  return rep;
}

bool is_euclidean_convex(const SurfaceGeometry& geom) {
  for (std::size_t k = 0; k < geom.size(); ++k)
    if (!(geom.kappa_meridian[k] > 0.0 && geom.kappa_latitude[k] > 0.0)) return false;
  return true;
}

}  // namespace imcf
