#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "imcf/hypersurface.hpp"

namespace imcf {

/// One row of a flow trajectory. Shared by the smooth and the weak flow.
struct FlowSample {
  double t = 0.0;
  double area = 0.0;
  double int_fH = 0.0;
  double flux = 0.0;
  double Q = 0.0;
  double H_min = 0.0;
  double H_max = 0.0;
  double umbilicity = 0.0;
};

FlowSample make_sample(double t, const Functionals& fn);

struct FlowSeries {
  std::vector<FlowSample> samples;

  bool empty() const { return samples.empty(); }
  const FlowSample& front() const { return samples.front(); }
  const FlowSample& back() const { return samples.back(); }
};

/// CSV with header t,area,int_fH,flux,Q,H_min,H_max,umbilicity; 17
/// significant digits, '.' decimal separator, '\n' line ends.
void write_series_csv(std::ostream& os, const FlowSeries& series);
void write_series_csv(const std::string& path, const FlowSeries& series);

struct FlowOptions {
  double dt_max = 1e-3;
  /// dt <= cfl * dtheta^2 * min_k (rho_k D_k)^2 / (n - 1), D = e^{psi} H.
  double cfl = 0.5;
  int max_halvings = 20;
  /// Largest tolerated |rho_theta / rho| before the run aborts.
  double max_slope = 10.0;
};

struct FlowState {
  double t = 0.0;
  RadialGraph graph;
  SurfaceGeometry geom;
  double dt_last = 0.0;
};

/// Validates strict mean convexity and builds the cached geometry.
FlowState make_flow_state(const RadialGraph& graph, double t = 0.0);

/// Euclidean normal speed 1 / (H-bar + (n-1) d psi . nu-bar) of the flow written in
/// the isotropic chart. Throws FlowBreakdownError when the denominator is not
/// positive at some node.
std::vector<double> normal_speed(const SurfaceGeometry& geom, double t = 0.0);

/// d rho / dt = speed * sqrt(1 + (rho_theta / rho)^2) for the radial graph.
std::vector<double> radial_velocity(const SurfaceGeometry& geom, double t = 0.0);

/// One RK4 step. Halves the step (up to max_halvings times) when a stage or
/// the result loses positive mean curvature; throws FlowBreakdownError when
/// that is exhausted and Error(mesh_quality) when the graph gets too steep.
FlowState step(const FlowState& state, double dt_max, const FlowOptions& options = {});

enum class RunStatus { completed, breakdown, mesh_quality };

std::string to_string(RunStatus status);

struct RunResult {
  FlowSeries series;
  RunStatus status = RunStatus::completed;
  double stop_time = 0.0;
  std::string message;
  RadialGraph final_graph;
};

/// Integrates to t_end, sampling functionals at every multiple of
/// sample_every (and at t_end). Breakdown and mesh-quality aborts end the run
/// early and are reported through RunResult::status.
RunResult run(const RadialGraph& initial, double t_end, double sample_every, const FlowOptions& options = {});
RunResult run(const RoundSphereSurface& initial, int N, double t_end, double sample_every,
              const FlowOptions& options = {});

/// Areal radius of the slice flow, s(t) = s0 e^{t/(n-1)}.
double exact_slice_flow(double s0, const SpaceParams& params, double t);

}  // namespace imcf
