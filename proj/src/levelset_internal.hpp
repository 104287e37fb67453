#pragma once

// Discretization internals of the level-set solver shared by the solver and
// the extraction code.

#include <array>
#include <cmath>
#include <type_traits>
#include <vector>

#include "imcf/levelset.hpp"

namespace imcf::detail {

/// Forward-mode dual number with K tangent directions.
template <int K>
struct Dual {
  double v = 0.0;
  std::array<double, K> d{};

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit lift of constants
};

template <int K>
Dual<K> operator+(const Dual<K>& a, const Dual<K>& b) {
  Dual<K> r(a.v + b.v);
  for (int k = 0; k < K; ++k) r.d[k] = a.d[k] + b.d[k];
  return r;
}
template <int K>
Dual<K> operator-(const Dual<K>& a, const Dual<K>& b) {
  Dual<K> r(a.v - b.v);
  for (int k = 0; k < K; ++k) r.d[k] = a.d[k] - b.d[k];
  return r;
}
template <int K>
Dual<K> operator-(const Dual<K>& a) {
  Dual<K> r(-a.v);
  for (int k = 0; k < K; ++k) r.d[k] = -a.d[k];
  return r;
}
template <int K>
Dual<K> operator*(const Dual<K>& a, const Dual<K>& b) {
  Dual<K> r(a.v * b.v);
  for (int k = 0; k < K; ++k) r.d[k] = a.d[k] * b.v + a.v * b.d[k];
  return r;
}
template <int K>
Dual<K> operator/(const Dual<K>& a, const Dual<K>& b) {
  const double inv = 1.0 / b.v;
  Dual<K> r(a.v * inv);
  for (int k = 0; k < K; ++k) r.d[k] = (a.d[k] - r.v * b.d[k]) * inv;
  return r;
}
template <int K>
Dual<K> operator*(double a, const Dual<K>& b) {
  Dual<K> r(a * b.v);
  for (int k = 0; k < K; ++k) r.d[k] = a * b.d[k];
  return r;
}
template <int K>
Dual<K> operator*(const Dual<K>& a, double b) {
  return b * a;
}
template <int K>
Dual<K> operator+(const Dual<K>& a, double b) {
  Dual<K> r = a;
  r.v += b;
  return r;
}
template <int K>
Dual<K> operator-(const Dual<K>& a, double b) {
  Dual<K> r = a;
  r.v -= b;
  return r;
}
template <int K>
Dual<K> sqrt(const Dual<K>& a) {
  Dual<K> r(std::sqrt(a.v));
  const double scale = 0.5 / r.v;
  for (int k = 0; k < K; ++k) r.d[k] = scale * a.d[k];
  return r;
}

inline double value_of(double x) { return x; }
template <int K>
double value_of(const Dual<K>& x) {
  return x.v;
}

/// sqrt(q2 + eps^2); frozen evaluation drops the dependence on u.
template <class T>
T regularized_norm(const T& q2, double eps, bool frozen) {
  using std::sqrt;
  if constexpr (std::is_same_v<T, double>) {
    (void)frozen;
    return sqrt(q2 + eps * eps);
  } else {
    if (frozen) return T(std::sqrt(value_of(q2) + eps * eps));
    return sqrt(q2 + eps * eps);
  }
}

/// Precomputed coefficients of a radial grid.
struct RadialCoefficients {
  int M = 0;
  double h = 0.0;
  double dim = 3.0;
  std::vector<double> xi;           // nodes
  std::vector<double> inv_a_sq;     // 1 / A^2 at nodes
  std::vector<double> div_scale;    // 1 / (h A B^{n-1}) at nodes
  std::vector<double> face_flux;    // B^{n-1} / A at faces i + 1/2
  std::vector<double> face_inv_a_sq;
};

/// Precomputed coefficients of a boundary-fitted axisymmetric grid.
struct AxisymmetricCoefficients {
  int M = 0;
  int N = 0;
  double deta = 0.0;
  double dtheta = 0.0;
  double dim = 3.0;
  std::vector<double> a, da, b;           // per latitude node
  std::vector<double> a_face, da_face, b_face;  // per latitude face j + 1/2
  std::vector<double> volume;             // int sin^{n-2} over the control interval of node j
  std::vector<double> face_sine;          // sin^{n-2} at faces j + 1/2
  // Conformal radius phi = e^{psi} r on nodes (M+1)x(N+1), eta faces
  // M x (N+1) and latitude faces (M+1) x N.
  std::vector<double> phi_node, phi_eta, phi_theta;

  double eta(int i) const { return i * deta; }
};

RadialCoefficients radial_coefficients(const LevelSetField& field);
AxisymmetricCoefficients axisymmetric_coefficients(const LevelSetField& field);

/// Conformal radius e^{psi(r)} r, which equals the areal radius s(r).
double conformal_radius(double r, const SpaceParams& params);

}  // namespace imcf::detail
