#include "imcf/levelset.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "imcf/error.hpp"
#include "levelset_internal.hpp"
#include "numeric_util.hpp"

namespace imcf {

namespace detail {

double conformal_radius(double r, const SpaceParams& params) { return polar_from_isotropic(r, params); }

RadialCoefficients radial_coefficients(const LevelSetField& field) {
  const SpaceParams& p = field.params;
  RadialCoefficients c;
  c.M = field.radial_cells;
  c.dim = p.n;
  const double xi0 = field.inner_log_radius.front();
  c.h = (field.outer_log_radius - xi0) / c.M;
  const double n = p.n;
  // A and B of the metric A^2 dxi^2 + B^2 g_sphere.
  auto coeffs = [&](double xi, double& A, double& B) {
    const double x = std::exp(xi);
    if (field.chart == RadialChart::polar) {
      A = x / potential_f(PolarPoint{x, 0.0}, p);
      B = x;
    } else {
      A = B = conformal_radius(x, p);
    }
  };
  c.xi.resize(c.M + 1);
  c.inv_a_sq.resize(c.M + 1);
  c.div_scale.resize(c.M + 1);
  for (int i = 0; i <= c.M; ++i) {
    c.xi[i] = i == c.M ? field.outer_log_radius : xi0 + i * c.h;
    double A = 0.0, B = 0.0;
    coeffs(c.xi[i], A, B);
    c.inv_a_sq[i] = 1.0 / (A * A);
    c.div_scale[i] = 1.0 / (c.h * A * std::pow(B, n - 1.0));
  }
  c.face_flux.resize(c.M);
  c.face_inv_a_sq.resize(c.M);
  for (int i = 0; i < c.M; ++i) {
    double A = 0.0, B = 0.0;
    coeffs(xi0 + (i + 0.5) * c.h, A, B);
    c.face_flux[i] = std::pow(B, n - 1.0) / A;
    c.face_inv_a_sq[i] = 1.0 / (A * A);
  }
  return c;
}

AxisymmetricCoefficients axisymmetric_coefficients(const LevelSetField& field) {
  const SpaceParams& p = field.params;
  AxisymmetricCoefficients c;
  c.M = field.radial_cells;
  c.N = field.angular_cells;
  c.deta = 1.0 / c.M;
  c.dtheta = std::numbers::pi / c.N;
  c.dim = p.n;
  const int N = c.N;
  const auto& a = field.inner_log_radius;
  // Even reflection about both poles.
  auto a_at = [&](int j) {
    if (j < 0) j = -j;
    if (j > N) j = 2 * N - j;
    return a[j];
  };
  c.a = a;
  c.da.resize(N + 1);
  c.b.resize(N + 1);
  for (int j = 0; j <= N; ++j) {
    c.da[j] = (j == 0 || j == N) ? 0.0 : (a_at(j + 1) - a_at(j - 1)) / (2.0 * c.dtheta);
    c.b[j] = field.outer_log_radius - a[j];
  }
  c.a_face.resize(N);
  c.da_face.resize(N);
  c.b_face.resize(N);
  c.face_sine.resize(N);
  for (int j = 0; j < N; ++j) {
    c.a_face[j] = (-a_at(j - 1) + 9.0 * a_at(j) + 9.0 * a_at(j + 1) - a_at(j + 2)) / 16.0;
    c.da_face[j] = (a_at(j + 1) - a_at(j)) / c.dtheta;
    c.b_face[j] = field.outer_log_radius - c.a_face[j];
    c.face_sine[j] = std::pow(std::sin((j + 0.5) * c.dtheta), p.n - 2.0);
  }
  static const GaussRule rule = gauss_legendre(16);
  c.volume.resize(N + 1);
  for (int j = 0; j <= N; ++j) {
    const double lo = std::max(0.0, (j - 0.5) * c.dtheta), hi = std::min(std::numbers::pi, (j + 0.5) * c.dtheta);
    c.volume[j] = integrate(rule, lo, hi, [&](double t) { return std::pow(std::sin(t), p.n - 2.0); });
  }
  const int cols = N + 1;
  c.phi_node.resize(static_cast<std::size_t>(c.M + 1) * cols);
  c.phi_eta.resize(static_cast<std::size_t>(c.M) * cols);
  c.phi_theta.resize(static_cast<std::size_t>(c.M + 1) * N);
  for (int i = 0; i <= c.M; ++i) {
    const double eta = i * c.deta;
    for (int j = 0; j <= N; ++j) {
      const double xi = i == c.M ? field.outer_log_radius : c.a[j] + eta * c.b[j];
      c.phi_node[i * cols + j] = conformal_radius(std::exp(xi), p);
      if (i < c.M) c.phi_eta[i * cols + j] = conformal_radius(std::exp(c.a[j] + (eta + 0.5 * c.deta) * c.b[j]), p);
    }
    for (int j = 0; j < N; ++j)
      c.phi_theta[i * N + j] = conformal_radius(std::exp(c.a_face[j] + eta * c.b_face[j]), p);
  }
  return c;
}

}  // namespace detail

namespace {

using detail::AxisymmetricCoefficients;
using detail::Dual;
using detail::RadialCoefficients;
using detail::regularized_norm;

constexpr int kRadialStencil = 4;
constexpr int kAxisymmetricStencil = 10;

// Stencil {u_{i-2}, u_{i-1}, u_i, u_{i+1}}.
template <class T>
T radial_node(const RadialCoefficients& c, int i, const std::array<T, kRadialStencil>& s, double eps, bool frozen) {
  const double ih = 1.0 / c.h;
  auto flux = [&](const T& left, const T& right, int face) {
    const T q = (right - left) * ih;
    const T w = regularized_norm(q * q * c.face_inv_a_sq[face], eps, frozen);
    return c.face_flux[face] * q / w;
  };
  const T div = (flux(s[2], s[3], i) - flux(s[1], s[2], i - 1)) * c.div_scale[i];
  // Upwind (inner side) difference for the source.
  const T g = i == 1 ? (s[2] - s[1]) * ih : (3.0 * s[2] - 4.0 * s[1] + s[0]) * (0.5 * ih);
  return div - regularized_norm(g * g * c.inv_a_sq[i], eps, frozen);
}

// Stencil slot of offset (di, dj): rows i-1..i+1 times columns j-1..j+1,
// then (i-2, j).
constexpr int slot(int di, int dj) { return di == -2 ? 9 : (di + 1) * 3 + (dj + 1); }

template <class T>
T axisymmetric_node(const AxisymmetricCoefficients& c, int i, int j, const std::array<T, kAxisymmetricStencil>& s,
                    double eps, bool frozen) {
  const int N = c.N, cols = N + 1;
  const double n = c.dim;
  const double ideta = 1.0 / c.deta, idth = 1.0 / c.dtheta;
  auto U = [&](int di, int dj) -> const T& { return s[slot(di, dj)]; };
  auto d_theta = [&](int di) { return (U(di, 1) - U(di, -1)) * (0.5 * idth); };
  auto d_eta = [&](int dj) { return (U(1, dj) - U(-1, dj)) * (0.5 * ideta); };

  const double bj = c.b[j];
  auto eta_flux = [&](int row, const T& ue, const T& ut) {
    const double eta = (row + 0.5) * c.deta;
    const double cc = c.da[j] * (1.0 - eta);
    const double gee = (1.0 + cc * cc) / (bj * bj), get = -cc / bj;
    const double phi = c.phi_eta[row * cols + j];
    const T q2 = gee * ue * ue + 2.0 * get * ue * ut + ut * ut;
    const T w = regularized_norm(q2 * (1.0 / (phi * phi)), eps, frozen);
    return (std::pow(phi, n - 2.0) * bj) * (gee * ue + get * ut) / w;
  };
  auto theta_flux = [&](int face, const T& ut, const T& ue) {
    const double eta = i * c.deta;
    const double bf = c.b_face[face];
    const double cc = c.da_face[face] * (1.0 - eta);
    const double gee = (1.0 + cc * cc) / (bf * bf), get = -cc / bf;
    const double phi = c.phi_theta[i * N + face];
    const T q2 = gee * ue * ue + 2.0 * get * ue * ut + ut * ut;
    const T w = regularized_norm(q2 * (1.0 / (phi * phi)), eps, frozen);
    return (std::pow(phi, n - 2.0) * bf * c.face_sine[face]) * (get * ue + ut) / w;
  };

  const T eta_plus = eta_flux(i, (U(1, 0) - U(0, 0)) * ideta, (d_theta(0) + d_theta(1)) * 0.5);
  const T eta_minus = eta_flux(i - 1, (U(0, 0) - U(-1, 0)) * ideta, (d_theta(-1) + d_theta(0)) * 0.5);
  const T theta_plus = j < N ? theta_flux(j, (U(0, 1) - U(0, 0)) * idth, (d_eta(0) + d_eta(1)) * 0.5) : T(0.0);
  const T theta_minus = j > 0 ? theta_flux(j - 1, (U(0, 0) - U(0, -1)) * idth, (d_eta(-1) + d_eta(0)) * 0.5) : T(0.0);

  const double phi = c.phi_node[i * cols + j];
  const double volume = c.volume[j];
  const T div = (volume * (eta_plus - eta_minus) * ideta + (theta_plus - theta_minus)) *
                (1.0 / (std::pow(phi, n) * bj * volume));

  const double cc = c.da[j] * (1.0 - i * c.deta);
  const double gee = (1.0 + cc * cc) / (bj * bj), get = -cc / bj;
  const T ue = i == 1 ? (U(0, 0) - U(-1, 0)) * ideta : (3.0 * U(0, 0) - 4.0 * U(-1, 0) + U(-2, 0)) * (0.5 * ideta);
  const T ut = d_theta(0);
  const T q2 = gee * ue * ue + 2.0 * get * ue * ut + ut * ut;
  return div - regularized_norm(q2 * (1.0 / (phi * phi)), eps, frozen);
}

// Column of offset dj from j with even reflection about the poles.
int reflect(int j, int N) {
  if (j < 0) return -j;
  if (j > N) return 2 * N - j;
  return j;
}

using SparseMatrix = Eigen::SparseMatrix<double>;

// Residual and Jacobian of the interior equations with respect to the
// interior values u[cols .. M * cols).
class Discretization {
 public:
  explicit Discretization(const LevelSetField& field) : field_(field) {
    if (field.kind == GridKind::radial)
      radial_ = detail::radial_coefficients(field);
    else
      axisymmetric_ = detail::axisymmetric_coefficients(field);
  }

  int unknowns() const { return (field_.radial_cells - 1) * field_.columns(); }

  std::vector<double> residual(const std::vector<double>& u, double eps) const {
    std::vector<double> r(unknowns());
    const int M = field_.radial_cells, cols = field_.columns();
    if (field_.kind == GridKind::radial) {
      for (int i = 1; i < M; ++i) {
        std::array<double, kRadialStencil> s{i >= 2 ? u[i - 2] : 0.0, u[i - 1], u[i], u[i + 1]};
        r[i - 1] = radial_node(radial_, i, s, eps, false);
      }
    } else {
      const int N = field_.angular_cells;
      for (int i = 1; i < M; ++i)
        for (int j = 0; j <= N; ++j) {
          std::array<double, kAxisymmetricStencil> s{};
          for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) s[slot(di, dj)] = u[(i + di) * cols + reflect(j + dj, N)];
          s[slot(-2, 0)] = i >= 2 ? u[(i - 2) * cols + j] : 0.0;
          r[(i - 1) * cols + j] = axisymmetric_node(axisymmetric_, i, j, s, eps, false);
        }
    }
    return r;
  }

  SparseMatrix jacobian(const std::vector<double>& u, double eps, bool frozen) const {
    const int M = field_.radial_cells, cols = field_.columns();
    std::vector<Eigen::Triplet<double>> triplets;
    auto add = [&](int row, int node, double value) {
      const int i = node / cols;
      if (i < 1 || i >= M || value == 0.0) return;
      triplets.emplace_back(row, node - cols, value);
    };
    if (field_.kind == GridKind::radial) {
      using D = Dual<kRadialStencil>;
      triplets.reserve(static_cast<std::size_t>(unknowns()) * 3);
      for (int i = 1; i < M; ++i) {
        const std::array<int, kRadialStencil> nodes{std::max(i - 2, 0), i - 1, i, i + 1};
        std::array<D, kRadialStencil> s;
        for (int k = 0; k < kRadialStencil; ++k) {
          s[k] = D(u[nodes[k]]);
          s[k].d[k] = 1.0;
        }
        const D r = radial_node(radial_, i, s, eps, frozen);
        for (int k = 0; k < kRadialStencil; ++k)
          if (!(k == 0 && i < 2)) add(i - 1, nodes[k], r.d[k]);
      }
    } else {
      using D = Dual<kAxisymmetricStencil>;
      const int N = field_.angular_cells;
      triplets.reserve(static_cast<std::size_t>(unknowns()) * kAxisymmetricStencil);
      for (int i = 1; i < M; ++i)
        for (int j = 0; j <= N; ++j) {
          std::array<int, kAxisymmetricStencil> nodes{};
          for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) nodes[slot(di, dj)] = (i + di) * cols + reflect(j + dj, N);
          nodes[slot(-2, 0)] = std::max(i - 2, 0) * cols + j;
          std::array<D, kAxisymmetricStencil> s;
          for (int k = 0; k < kAxisymmetricStencil; ++k) {
            s[k] = D(u[nodes[k]]);
            s[k].d[k] = 1.0;
          }
          const D r = axisymmetric_node(axisymmetric_, i, j, s, eps, frozen);
          const int row = (i - 1) * cols + j;
          for (int k = 0; k < kAxisymmetricStencil; ++k)
            if (!(k == slot(-2, 0) && i < 2)) add(row, nodes[k], r.d[k]);
        }
    }
    SparseMatrix J(unknowns(), unknowns());
    J.setFromTriplets(triplets.begin(), triplets.end());  // sums duplicates from pole reflection
    J.makeCompressed();
    return J;
  }

 private:
  const LevelSetField& field_;
  RadialCoefficients radial_;
  AxisymmetricCoefficients axisymmetric_;
};

double max_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double two_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Solves J du = -r; false when the factorization fails.
bool linear_step(const SparseMatrix& J, const std::vector<double>& r, std::vector<double>& du) {
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(J);
  lu.factorize(J);
  if (lu.info() != Eigen::Success) return false;
  const Eigen::Map<const Eigen::VectorXd> rhs(r.data(), static_cast<Eigen::Index>(r.size()));
  const Eigen::VectorXd x = lu.solve(-rhs);
  if (lu.info() != Eigen::Success || !x.allFinite()) return false;
  du.assign(x.data(), x.data() + x.size());
  return true;
}

std::vector<double> with_update(const std::vector<double>& u, const std::vector<double>& du, double lambda,
                                int offset) {
  std::vector<double> out = u;
  for (std::size_t k = 0; k < du.size(); ++k) out[offset + k] += lambda * du[k];
  return out;
}

void solve_stage(LevelSetField& field, double eps, const LevelSetOptions& options) {
  const Discretization disc(field);
  const int offset = field.columns();
  std::vector<double> u = field.u;
  std::vector<double> r = disc.residual(u, eps);
  double best = max_norm(r);
  int since_best = 0;
  std::vector<double> du;
  for (int it = 0; it < options.max_iterations; ++it) {
    if (max_norm(r) < options.tolerance) {
      field.u = std::move(u);
      field.residual_max = max_norm(r);
      return;
    }
    ++field.iterations;
    bool accepted = false;
    if (linear_step(disc.jacobian(u, eps, false), r, du)) {
      const double r0 = two_norm(r);
      for (double lambda = 1.0; lambda >= 1.0 / 1024.0; lambda *= 0.5) {
        std::vector<double> trial = with_update(u, du, lambda, offset);
        std::vector<double> rt = disc.residual(trial, eps);
        const double rn = two_norm(rt);
        if (std::isfinite(rn) && rn < (1.0 - 1e-4 * lambda) * r0) {
          u = std::move(trial);
          r = std::move(rt);
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) {
      // Picard step: the frozen-mobility residual is affine in u.
      if (!linear_step(disc.jacobian(u, eps, true), r, du))
        throw NonconvergenceError(u, max_norm(r), "level-set solve: singular linearization");
      std::vector<double> trial = with_update(u, du, 1.0, offset);
      std::vector<double> rt = disc.residual(trial, eps);
      if (std::isfinite(max_norm(rt))) {
        u = std::move(trial);
        r = std::move(rt);
      }
    }
    const double now = max_norm(r);
    if (now < best) {
      best = now;
      since_best = 0;
    } else if (++since_best >= options.stagnation_window) {
      std::ostringstream os;
      os << "level-set solve stagnated at eps = " << eps << " with residual " << now;
      throw NonconvergenceError(u, now, os.str());
    }
  }
  if (max_norm(r) < options.tolerance) {
    field.u = std::move(u);
    field.residual_max = max_norm(r);
    return;
  }
  std::ostringstream os;
  os << "level-set solve did not converge at eps = " << eps << " within " << options.max_iterations
     << " iterations (residual " << max_norm(r) << ")";
  throw NonconvergenceError(u, max_norm(r), os.str());
}

void fill_linear(LevelSetField& field) {
  const int M = field.radial_cells, cols = field.columns();
  field.u.assign(static_cast<std::size_t>(M + 1) * cols, 0.0);
  for (int i = 0; i <= M; ++i)
    for (int j = 0; j < cols; ++j) field.at(i, j) = field.outer_value() * i / M;
}

}  // namespace

double LevelSetField::theta(int j) const {
  if (kind == GridKind::radial) return 0.0;
  return j == angular_cells ? std::numbers::pi : std::numbers::pi * j / angular_cells;
}

double LevelSetField::log_radius(int i, int j) const {
  if (i == radial_cells) return outer_log_radius;
  const double a = inner_log_radius[kind == GridKind::radial ? 0 : j];
  return a + static_cast<double>(i) / radial_cells * (outer_log_radius - a);
}

double LevelSetField::isotropic_radius(int i, int j) const {
  const double x = std::exp(log_radius(i, j));
  if (kind == GridKind::radial && chart == RadialChart::polar) return isotropic_from_polar(x, params);
  return x;
}

LevelSetField make_radial_field(const SpaceParams& params, double s_inner, const RadialGridSpec& grid,
                                double outer_factor) {
  if (grid.cells < 4) throw Error(ErrorCode::invalid_argument, "radial level-set grid needs at least 4 cells");
  if (!(outer_factor > 1.0)) throw Error(ErrorCode::invalid_argument, "outer radius factor must exceed 1");
  if (!(s_inner > params.horizon_polar() * (1.0 + kHorizonMargin)))
    throw Error(ErrorCode::horizon, "inner slice must lie outside the horizon");
  LevelSetField f;
  f.params = params;
  f.kind = GridKind::radial;
  f.chart = grid.chart;
  f.radial_cells = grid.cells;
  f.angular_cells = 0;
  const double s_outer = outer_factor * s_inner;
  if (grid.chart == RadialChart::polar) {
    f.inner_log_radius = {std::log(s_inner)};
    f.outer_log_radius = std::log(s_outer);
  } else {
    f.inner_log_radius = {std::log(isotropic_from_polar(s_inner, params))};
    f.outer_log_radius = std::log(isotropic_from_polar(s_outer, params));
  }
  f.L = (params.n - 1.0) * std::log(outer_factor) + 2.0;
  fill_linear(f);
  return f;
}

LevelSetField make_axisymmetric_field(const RadialGraph& inner, const AxisymmetricGridSpec& grid,
                                      double outer_factor) {
  if (grid.radial_cells < 4) throw Error(ErrorCode::invalid_argument, "axisymmetric grid needs at least 4 radial cells");
  if (!(outer_factor > 1.0)) throw Error(ErrorCode::invalid_argument, "outer radius factor must exceed 1");
  const SpaceParams& p = inner.params();
  const Functionals fn = functionals(schwarzschild_geometry(inner));
  const double s_inner = std::pow(fn.area / p.omega(), 1.0 / (p.n - 1.0));
  const double r_outer = isotropic_from_polar(outer_factor * s_inner, p);
  double r_max = 0.0;
  for (double r : inner.rho()) r_max = std::max(r_max, r);
  if (!(r_outer > 2.0 * r_max)) throw Error(ErrorCode::invalid_argument, "outer radius too close to the inner surface");

  LevelSetField f;
  f.params = p;
  f.kind = GridKind::axisymmetric;
  f.chart = RadialChart::isotropic;
  f.radial_cells = grid.radial_cells;
  f.angular_cells = inner.N();
  f.inner_log_radius.resize(inner.N() + 1);
  for (int j = 0; j <= inner.N(); ++j) f.inner_log_radius[j] = std::log(inner.rho()[j]);
  f.outer_log_radius = std::log(r_outer);
  f.L = (p.n - 1.0) * std::log(outer_factor) + 2.0;
  fill_linear(f);
  return f;
}

std::vector<double> residual(const LevelSetField& field) {
  if (!(field.eps > 0.0)) throw Error(ErrorCode::invalid_argument, "residual: eps must be positive");
  return Discretization(field).residual(field.u, field.eps);
}

DomainMeasure domain_measure(const LevelSetField& field) {
  const SpaceParams& p = field.params;
  const double n = p.n;
  static const detail::GaussRule rule = detail::gauss_legendre(8);
  DomainMeasure out;
  if (field.kind == GridKind::radial) {
    const RadialCoefficients c = detail::radial_coefficients(field);
    auto density = [&](double xi) {
      const double x = std::exp(xi);
      if (field.chart == RadialChart::polar) return x * std::pow(x, n - 1.0) / potential_f(PolarPoint{x, 0.0}, p);
      return std::pow(detail::conformal_radius(x, p), n);
    };
    for (int i = 0; i < c.M; ++i) out.volume += detail::integrate(rule, c.xi[i], c.xi[i + 1], density);
    out.volume *= p.omega();
    auto areal = [&](double xi) {
      const double x = std::exp(xi);
      return field.chart == RadialChart::polar ? x : detail::conformal_radius(x, p);
    };
    out.boundary_area = p.omega() * (std::pow(areal(c.xi.front()), n - 1.0) + std::pow(areal(c.xi.back()), n - 1.0));
    return out;
  }
  const AxisymmetricCoefficients c = detail::axisymmetric_coefficients(field);
  const double omega_lat = unit_sphere_area(p.n - 1);
  for (int j = 0; j <= c.N; ++j) {
    double column = 0.0;
    for (int i = 0; i < c.M; ++i) {
      const double lo = c.a[j] + i * c.deta * c.b[j], hi = c.a[j] + (i + 1) * c.deta * c.b[j];
      column += detail::integrate(rule, lo, hi,
                                  [&](double xi) { return std::pow(detail::conformal_radius(std::exp(xi), p), n); });
    }
    out.volume += omega_lat * c.volume[j] * column;
  }
  std::vector<double> rho(c.N + 1);
  for (int j = 0; j <= c.N; ++j) rho[j] = std::exp(c.a[j]);
  const double inner_area = functionals(schwarzschild_geometry(RadialGraph(p, rho))).area;
  const double s_outer = detail::conformal_radius(std::exp(field.outer_log_radius), p);
  out.boundary_area = inner_area + p.omega() * std::pow(s_outer, n - 1.0);
  return out;
}

LevelSetField solve(LevelSetField field, const LevelSetOptions& options) {
  if (options.eps_schedule.empty()) throw Error(ErrorCode::config, "eps schedule is empty");
  for (std::size_t k = 0; k < options.eps_schedule.size(); ++k) {
    const double e = options.eps_schedule[k];
    if (!(e > 0.0) || (k > 0 && !(e < options.eps_schedule[k - 1])))
      throw Error(ErrorCode::config, "eps schedule must be positive and strictly decreasing");
  }
  const DomainMeasure measure = domain_measure(field);
  const double eps_bound = options.solvability_safety * measure.boundary_area / measure.volume;
  if (!(options.eps_schedule.back() <= eps_bound)) {
    std::ostringstream os;
    os << "final eps " << options.eps_schedule.back() << " exceeds the solvability bound " << eps_bound
       << " of the domain; no regularized solution exists";
    throw Error(ErrorCode::config, os.str());
  }
  field.eps_solved.clear();
  field.eps_skipped.clear();
  field.iterations = 0;
  for (double eps : options.eps_schedule) {
    if (eps > eps_bound) {
      field.eps_skipped.push_back(eps);
      continue;
    }
    solve_stage(field, eps, options);
    field.eps = eps;
    field.eps_solved.push_back(eps);
  }

  const double top = field.outer_value();
  const double slack = 1e-8 * top;
  for (double v : field.u)
    if (!(v >= -slack && v <= top + slack)) {
      std::ostringstream os;
      os << "solved field violates the maximum principle (value " << v << " outside [0, " << top << "])";
      throw NonconvergenceError(field.u, field.residual_max, os.str());
    }
  return field;
}

LevelSetField solve_radial(const SpaceParams& params, const RoundSphereSurface& inner, const RadialGridSpec& grid,
                           const LevelSetOptions& options, double outer_factor) {
  return solve(make_radial_field(params, inner.s, grid, outer_factor), options);
}

LevelSetField solve_axisymmetric(const RadialGraph& inner, const AxisymmetricGridSpec& grid,
                                 const LevelSetOptions& options, double outer_factor) {
  return solve(make_axisymmetric_field(inner, grid, outer_factor), options);
}

}  // namespace imcf
