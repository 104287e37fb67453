#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "imcf/error.hpp"
#include "imcf/levelset.hpp"
#include "levelset_internal.hpp"
#include "numeric_util.hpp"

namespace imcf {

namespace {

// Second-order derivative along the radial index, one-sided at the ends.
double radial_derivative(const LevelSetField& f, int i, int j, double h) {
  const int M = f.radial_cells;
  if (i == 0) return (-3.0 * f.at(0, j) + 4.0 * f.at(1, j) - f.at(2, j)) / (2.0 * h);
  if (i == M) return (3.0 * f.at(M, j) - 4.0 * f.at(M - 1, j) + f.at(M - 2, j)) / (2.0 * h);
  return (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * h);
}

}  // namespace

std::vector<double> gradient_norm(const LevelSetField& field) {
  const int M = field.radial_cells, cols = field.columns();
  std::vector<double> out(field.u.size());
  if (field.kind == GridKind::radial) {
    const detail::RadialCoefficients c = detail::radial_coefficients(field);
    for (int i = 0; i <= M; ++i) out[i] = std::abs(radial_derivative(field, i, 0, c.h)) * std::sqrt(c.inv_a_sq[i]);
    return out;
  }
  const detail::AxisymmetricCoefficients c = detail::axisymmetric_coefficients(field);
  const int N = c.N;
  for (int i = 0; i <= M; ++i)
    for (int j = 0; j <= N; ++j) {
      const double ue = radial_derivative(field, i, j, c.deta);
      const double ut = (j == 0 || j == N) ? 0.0 : (field.at(i, j + 1) - field.at(i, j - 1)) / (2.0 * c.dtheta);
      const double cc = c.da[j] * (1.0 - c.eta(i));
      const double bj = c.b[j];
      const double q2 = (1.0 + cc * cc) / (bj * bj) * ue * ue - 2.0 * cc / bj * ue * ut + ut * ut;
      const double phi = c.phi_node[i * cols + j];
      out[i * cols + j] = std::sqrt(std::max(q2, 0.0)) / phi;
    }
  return out;
}

ExtractedLevel extract_level(const LevelSetField& field, double t, int radial_output_cells) {
  const double top = field.outer_value();
  if (!(t > 0.0 && t < top)) {
    std::ostringstream os;
    os << "level " << t << " outside (0, " << top << ")";
    throw Error(ErrorCode::extraction, os.str());
  }
  const int M = field.radial_cells, cols = field.columns();
  const std::vector<double> grad = gradient_norm(field);
  std::vector<double> radius(cols), curvature(cols);
  for (int j = 0; j < cols; ++j) {
    int i = 0;
    while (i < M && field.at(i + 1, j) < t) ++i;
    if (i == M) throw Error(ErrorCode::extraction, "level not reached along a ray");
    for (int k = i + 2; k <= M; ++k)
      if (field.at(k, j) < t) {
        std::ostringstream os;
        os << "level " << t << " is not a radial graph (ray " << j << " crosses it more than once)";
        throw Error(ErrorCode::extraction, os.str());
      }
    const double u0 = field.at(i, j), u1 = field.at(i + 1, j);
    const double w = u1 > u0 ? (t - u0) / (u1 - u0) : 0.0;
    const double xi = (1.0 - w) * field.log_radius(i, j) + w * field.log_radius(i + 1, j);
    const double x = std::exp(xi);
    radius[j] = (field.kind == GridKind::radial && field.chart == RadialChart::polar)
                    ? isotropic_from_polar(x, field.params)
                    : x;
    curvature[j] = (1.0 - w) * grad[i * cols + j] + w * grad[(i + 1) * cols + j];
  }
  if (field.kind == GridKind::radial) {
    const int N = std::max(radial_output_cells, RadialGraph::kMinNodes);
    return ExtractedLevel{t, RadialGraph(field.params, std::vector<double>(N + 1, radius[0])),
                          std::vector<double>(N + 1, curvature[0])};
  }
  return ExtractedLevel{t, RadialGraph(field.params, std::move(radius)), std::move(curvature)};
}

FlowSeries weak_Q_series(const LevelSetField& field, const std::vector<double>& levels, int radial_output_cells) {
  if (!std::is_sorted(levels.begin(), levels.end()))
    throw Error(ErrorCode::invalid_argument, "weak_Q_series: levels must be ascending");
  FlowSeries series;
  for (double t : levels) {
    const ExtractedLevel level = extract_level(field, t, radial_output_cells);
    const SurfaceGeometry geom = schwarzschild_geometry(level.graph).with_mean_curvature(level.weak_mean_curvature);
    series.samples.push_back(make_sample(t, functionals(geom)));
  }
  return series;
}

double gradient_bound_constant(const LevelSetField& field) {
  const std::vector<double> grad = gradient_norm(field);
  const int M = field.radial_cells, cols = field.columns();
  double inner = 0.0;
  for (int j = 0; j < cols; ++j) inner = std::max(inner, field.isotropic_radius(0, j));
  double C = 0.0;
  for (int i = 1; i < M; ++i)
    for (int j = 0; j < cols; ++j) {
      const double r = field.isotropic_radius(i, j);
      if (r > 2.0 * inner) C = std::max(C, grad[i * cols + j] * r);
    }
  return C;
}

void write_field_csv(std::ostream& os, const LevelSetField& field) {
  using detail::format_double;
  if (field.kind == GridKind::radial) {
    os << (field.chart == RadialChart::polar ? "s,u\n" : "r,u\n");
    for (int i = 0; i <= field.radial_cells; ++i)
      os << format_double(std::exp(field.log_radius(i, 0))) << ',' << format_double(field.at(i, 0)) << '\n';
    return;
  }
  os << "r,theta,u\n";
  for (int i = 0; i <= field.radial_cells; ++i)
    for (int j = 0; j < field.columns(); ++j)
      os << format_double(field.isotropic_radius(i, j)) << ',' << format_double(field.theta(j)) << ','
         << format_double(field.at(i, j)) << '\n';
}

void write_field_csv(const std::string& path, const LevelSetField& field) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::io, "cannot open field file for writing: " + path);
  write_field_csv(os, field);
  if (!os) throw Error(ErrorCode::io, "failed writing field file: " + path);
}

}  // namespace imcf
