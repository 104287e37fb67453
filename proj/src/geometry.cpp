#include "imcf/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "imcf/error.hpp"

namespace imcf {

namespace {

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (" << value << ")";
  return os.str();
}

// a(r) = m/2 r^{2-n}
double isotropic_a(double r, const SpaceParams& p) { return 0.5 * p.m * std::pow(r, 2.0 - p.n); }

void require_exterior_isotropic(double r, const SpaceParams& p, const char* op) {
  if (!(r > p.horizon_isotropic()))
    throw Error(ErrorCode::domain, describe(op, r) + ": isotropic radius must exceed r0");
}

}  // namespace

SpaceParams SpaceParams::make(int n, double m) {
  if (n < 3) throw Error(ErrorCode::domain, describe("dimension must satisfy n >= 3", n));
  if (!(m > 0.0) || !std::isfinite(m))
    throw Error(ErrorCode::domain, describe("mass must be positive and finite", m));
  return SpaceParams{n, m};
}

double SpaceParams::horizon_polar() const { return std::pow(2.0 * m, 1.0 / (n - 2)); }

double SpaceParams::horizon_isotropic() const { return std::pow(0.5 * m, 1.0 / (n - 2)); }

double SpaceParams::omega() const { return unit_sphere_area(n); }

double unit_sphere_area(int n) {
  if (n < 2) throw Error(ErrorCode::domain, describe("unit sphere area needs n >= 2", n));
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double polar_from_isotropic(double r, const SpaceParams& params) {
  if (!(r >= params.horizon_isotropic()) || !std::isfinite(r))
    throw Error(ErrorCode::domain, describe("polar_from_isotropic: r below horizon", r));
  const double a = isotropic_a(r, params);
  return r * std::pow(1.0 + a, 2.0 / (params.n - 2));
}

double isotropic_from_polar(double s, const SpaceParams& params) {
  if (!(s >= params.horizon_polar()) || !std::isfinite(s))
    throw Error(ErrorCode::domain, describe("isotropic_from_polar: s below horizon", s));
  // With w = r^{(n-2)/2}: s^{(n-2)/2} = w + (m/2)/w; exterior branch is the larger root.
  const double half = 0.5 * (params.n - 2);
  const double big_s = std::pow(s, half);
  const double disc = std::max(0.0, big_s * big_s - 2.0 * params.m);
  const double w = 0.5 * (big_s + std::sqrt(disc));
  return std::pow(w, 1.0 / half);
}

double potential_f(const PolarPoint& point, const SpaceParams& params) {
  if (!(point.s > params.horizon_polar() * (1.0 + kHorizonMargin)) || !std::isfinite(point.s))
    throw Error(ErrorCode::horizon, describe("potential_f: point on or inside the horizon", point.s));
  return std::sqrt(1.0 - 2.0 * params.m * std::pow(point.s, 2.0 - params.n));
}

double potential_f(const IsotropicPoint& point, const SpaceParams& params) {
  if (!(point.r > params.horizon_isotropic()))
    throw Error(ErrorCode::horizon, describe("potential_f: point on or inside the horizon", point.r));
  return potential_f(PolarPoint{polar_from_isotropic(point.r, params), point.theta}, params);
}

RadialJet conformal_psi(double r, const SpaceParams& params) {
  require_exterior_isotropic(r, params, "conformal_psi");
  const int n = params.n;
  const double a = isotropic_a(r, params);
  RadialJet j;
  j.value = 2.0 / (n - 2) * std::log1p(a);
  j.d1 = -params.m * std::pow(r, 1.0 - n) / (1.0 + a);
  j.d2 = -params.m * std::pow(r, -double(n)) / (1.0 + a) * ((1.0 - n) - (2.0 - n) * a / (1.0 + a));
  return j;
}

RadialJet polar_radius_jet(double r, const SpaceParams& params) {
  require_exterior_isotropic(r, params, "polar_radius_jet");
  const int n = params.n;
  const double p = 2.0 / (n - 2);
  const double a = isotropic_a(r, params);
  const double da = (2.0 - n) * a / r;
  RadialJet j;
  j.value = r * std::pow(1.0 + a, p);
  j.d1 = std::pow(1.0 + a, p - 1.0) * (1.0 - a);
  j.d2 = da * std::pow(1.0 + a, p - 2.0) * ((p - 1.0) * (1.0 - a) - (1.0 + a));
  return j;
}

RadialJet potential_jet(double r, const SpaceParams& params, double coefficient) {
  const RadialJet s = polar_radius_jet(r, params);
  const int n = params.n;
  const double km = coefficient * params.m;
  if (coefficient == 2.0 && !(s.value > params.horizon_polar() * (1.0 + kHorizonMargin)))
    throw Error(ErrorCode::horizon, describe("potential_jet: point on or inside the horizon", r));
  const double g = 1.0 - km * std::pow(s.value, 2.0 - n);
  if (!(g > 0.0)) throw Error(ErrorCode::horizon, describe("potential_jet: potential not positive", r));
  const double dg = km * (n - 2) * std::pow(s.value, 1.0 - n);
  const double d2g = km * (n - 2) * (1.0 - n) * std::pow(s.value, -double(n));
  const double f = std::sqrt(g);
  const double fs = dg / (2.0 * f);
  const double fss = d2g / (2.0 * f) - dg * dg / (4.0 * f * f * f);
  return RadialJet{f, fs * s.d1, fss * s.d1 * s.d1 + fs * s.d2};
}

namespace {

// First and second Cartesian derivatives of a scalar field on R^n.
struct CartesianJet {
  double value = 0.0;
  std::vector<double> grad;
  std::vector<double> hess;  // row-major n x n
};

CartesianJet radial_to_cartesian(const RadialJet& j, const std::vector<double>& x) {
  const std::size_t n = x.size();
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  const double r = std::sqrt(r2);
  CartesianJet c{j.value, std::vector<double>(n), std::vector<double>(n * n)};
  for (std::size_t i = 0; i < n; ++i) {
    c.grad[i] = j.d1 * x[i] / r;
    for (std::size_t k = 0; k < n; ++k) {
      const double xx = x[i] * x[k] / r2;
      c.hess[i * n + k] = j.d2 * xx + j.d1 / r * ((i == k ? 1.0 : 0.0) - xx);
    }
  }
  return c;
}

template <class Fn>
CartesianJet central_differences(Fn&& fn, const std::vector<double>& x, double h) {
  const std::size_t n = x.size();
  CartesianJet c{fn(x), std::vector<double>(n), std::vector<double>(n * n)};
  std::vector<double> y = x;
  auto at = [&](std::size_t i, double di, std::size_t k, double dk) {
    y = x;
    y[i] += di;
    y[k] += dk;
    return fn(y);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double plus = at(i, h, i, 0.0);
    const double minus = at(i, -h, i, 0.0);
    c.grad[i] = (plus - minus) / (2.0 * h);
    c.hess[i * n + i] = (plus - 2.0 * c.value + minus) / (h * h);
    for (std::size_t k = i + 1; k < n; ++k) {
      const double v = (at(i, h, k, h) - at(i, h, k, -h) - at(i, -h, k, h) + at(i, -h, k, -h)) / (4.0 * h * h);
      c.hess[i * n + k] = v;
      c.hess[k * n + i] = v;
    }
  }
  return c;
}

double norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

StaticResidual static_residual(const IsotropicPoint& point, const SpaceParams& params, const StaticProbe& probe) {
  const std::size_t n = static_cast<std::size_t>(params.n);
  if (probe.mode == DerivativeMode::central_difference && !(probe.h > 0.0))
    throw Error(ErrorCode::invalid_argument, "static_residual: central differences need h > 0");
  const double clearance = point.r - 4.0 * std::max(probe.h, 0.0);
  if (!(clearance > params.horizon_isotropic()) ||
      !(polar_from_isotropic(clearance, params) > params.horizon_polar() * (1.0 + kHorizonMargin)))
    throw Error(ErrorCode::domain, describe("static_residual: stencil crosses the horizon", point.r));

  // Point in the meridian plane spanned by e_0 and the axis e_{n-1}.
  std::vector<double> x(n, 0.0);
  x[0] = point.r * std::sin(point.theta);
  x[n - 1] += point.r * std::cos(point.theta);

  CartesianJet psi, f;
  if (probe.mode == DerivativeMode::analytic) {
    psi = radial_to_cartesian(conformal_psi(point.r, params), x);
    f = radial_to_cartesian(potential_jet(point.r, params, probe.potential_coefficient), x);
  } else {
    psi = central_differences([&](const std::vector<double>& y) { return conformal_psi(norm(y), params).value; },
                              x, probe.h);
    f = central_differences(
        [&](const std::vector<double>& y) {
          return potential_jet(norm(y), params, probe.potential_coefficient).value;
        },
        x, probe.h);
  }

  const double dim = static_cast<double>(n);
  double grad_psi_sq = 0.0, lap_psi = 0.0, lap_f = 0.0, psi_dot_f = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    grad_psi_sq += psi.grad[i] * psi.grad[i];
    lap_psi += psi.hess[i * n + i];
    lap_f += f.hess[i * n + i];
    psi_dot_f += psi.grad[i] * f.grad[i];
  }

  StaticResidual out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double delta = i == k ? 1.0 : 0.0;
      // Ricci of e^{2 psi} delta.
      const double ric = -(dim - 2.0) * (psi.hess[i * n + k] - psi.grad[i] * psi.grad[k]) -
                         (lap_psi + (dim - 2.0) * grad_psi_sq) * delta;
      // Hess f = d^2 f - Gamma^l_ik d_l f with Gamma^l_ik = d^l_i psi_k + d^l_k psi_i - delta_ik psi_l.
      const double hess =
          f.hess[i * n + k] - psi.grad[k] * f.grad[i] - psi.grad[i] * f.grad[k] + delta * psi_dot_f;
      out.hessian = std::max(out.hessian, std::abs(hess - f.value * ric));
    }
  }
  out.laplacian = std::abs(std::exp(-2.0 * psi.value) * (lap_f + (dim - 2.0) * psi_dot_f));
  return out;
}

double sphere_static_identity_residual(double r, const SpaceParams& params) {
  const RadialJet psi = conformal_psi(r, params);
  const RadialJet f = potential_jet(r, params);
  const double n = params.n;
  const double lap_psi = psi.d2 + (n - 1.0) * psi.d1 / r;
  const double ric_rr = -(n - 2.0) * (psi.d2 - psi.d1 * psi.d1) - (lap_psi + (n - 2.0) * psi.d1 * psi.d1);
  const double e = std::exp(-psi.value);
  const double ric_nn = e * e * ric_rr;
  const double mean_curvature = e * (n - 1.0) * (1.0 / r + psi.d1);
  const double normal_derivative = e * f.d1;
  return std::abs(f.value * ric_nn + mean_curvature * normal_derivative);
}

}  // namespace imcf
