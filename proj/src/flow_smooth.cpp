#include "imcf/flow_smooth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "imcf/error.hpp"

namespace imcf {

FlowSample make_sample(double t, const Functionals& fn) {
  return FlowSample{t, fn.area, fn.int_fH, fn.flux, fn.Q, fn.H_min, fn.H_max, fn.umbilicity};
}

std::vector<double> normal_speed(const SurfaceGeometry& geom, double t) {
  if (!geom.has_schwarzschild) throw Error(ErrorCode::invalid_argument, "normal_speed needs Schwarzschild data");
  std::vector<double> speed(geom.size());
  for (std::size_t k = 0; k < geom.size(); ++k) {
    const double denom = geom.conformal_mean_curvature(k);
    if (!(denom > 0.0)) {
      std::ostringstream os;
      os << "mean curvature is not positive at node " << k << " (theta = " << geom.theta[k] << ", t = " << t << ")";
      throw FlowBreakdownError(t, os.str());
    }
    speed[k] = 1.0 / denom;
  }
  return speed;
}

std::vector<double> radial_velocity(const SurfaceGeometry& geom, double t) {
  std::vector<double> v = normal_speed(geom, t);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] /= geom.normal_radial[k];
  return v;
}

FlowState make_flow_state(const RadialGraph& graph, double t) {
  FlowState state{t, graph, schwarzschild_geometry(graph), 0.0};
  normal_speed(state.geom, t);
  return state;
}

namespace {

double parabolic_step_bound(const SurfaceGeometry& geom, double spacing, double cfl) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < geom.size(); ++k) {
    const double rd = geom.rho[k] * geom.conformal_mean_curvature(k);
    worst = std::min(worst, rd * rd);
  }
  return cfl * spacing * spacing * worst / (geom.params.n - 1.0);
}

void check_mesh_quality(const SurfaceGeometry& geom, double max_slope, double t) {
  for (std::size_t k = 0; k < geom.size(); ++k) {
    if (std::abs(geom.rho_theta[k] / geom.rho[k]) > max_slope) {
      std::ostringstream os;
      os << "radial graph too steep (|rho_theta/rho| > " << max_slope << ") at t = " << t;
      throw Error(ErrorCode::mesh_quality, os.str());
    }
  }
}

std::vector<double> axpy(const std::vector<double>& base, double a, const std::vector<double>& dir) {
  std::vector<double> out(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) out[k] = base[k] + a * dir[k];
  return out;
}

// Returns false when any stage or the result loses positivity.
bool try_rk4(const FlowState& s, double dt, FlowState& out) {
  try {
    const auto rho0 = std::vector<double>(s.graph.rho().begin(), s.graph.rho().end());
    const auto velocity = [&](const std::vector<double>& rho, double t) {
      return radial_velocity(schwarzschild_geometry(s.graph.with_rho(rho)), t);
    };
    const auto k1 = radial_velocity(s.geom, s.t);
    const auto k2 = velocity(axpy(rho0, 0.5 * dt, k1), s.t + 0.5 * dt);
    const auto k3 = velocity(axpy(rho0, 0.5 * dt, k2), s.t + 0.5 * dt);
    const auto k4 = velocity(axpy(rho0, dt, k3), s.t + dt);
    std::vector<double> rho(rho0.size());
    for (std::size_t k = 0; k < rho.size(); ++k)
      rho[k] = rho0[k] + dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    RadialGraph graph = s.graph.with_rho(std::move(rho));
    SurfaceGeometry geom = schwarzschild_geometry(graph);
    normal_speed(geom, s.t + dt);
    out = FlowState{s.t + dt, std::move(graph), std::move(geom), dt};
    return true;
  } catch (const FlowBreakdownError&) {
    return false;
  }
}

}  // namespace

FlowState step(const FlowState& state, double dt_max, const FlowOptions& options) {
  if (!(dt_max > 0.0)) throw Error(ErrorCode::invalid_argument, "step: dt_max must be positive");
  normal_speed(state.geom, state.t);
  check_mesh_quality(state.geom, options.max_slope, state.t);
  double dt = std::min(dt_max, parabolic_step_bound(state.geom, state.graph.spacing(), options.cfl));
  FlowState next{state.t, state.graph, state.geom, 0.0};
  for (int attempt = 0; attempt <= options.max_halvings; ++attempt, dt *= 0.5)
    if (try_rk4(state, dt, next)) return next;
  std::ostringstream os;
  os << "step size underflow after " << options.max_halvings << " halvings at t = " << state.t;
  throw FlowBreakdownError(state.t, os.str());
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::breakdown: return "breakdown";
    case RunStatus::mesh_quality: return "mesh_quality";
  }
  return "unknown";
}

RunResult run(const RadialGraph& initial, double t_end, double sample_every, const FlowOptions& options) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::invalid_argument, "run: t_end must be >= 0");
  if (!(sample_every > 0.0)) throw Error(ErrorCode::invalid_argument, "run: sample_every must be positive");

  FlowState state = make_flow_state(initial);
  RunResult result{FlowSeries{}, RunStatus::completed, 0.0, {}, initial};
  result.series.samples.push_back(make_sample(0.0, functionals(state.geom)));

  long next_index = 1;
  const double snap = 1e-12 * std::max(1.0, t_end);
  while (state.t < t_end - snap) {
    const double target = std::min(next_index * sample_every, t_end);
    try {
      state = step(state, std::min(options.dt_max, target - state.t), options);
    } catch (const FlowBreakdownError& e) {
      result.status = RunStatus::breakdown;
      result.stop_time = e.time();
      result.message = e.what();
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::mesh_quality) throw;
      result.status = RunStatus::mesh_quality;
      result.stop_time = state.t;
      result.message = e.what();
      break;
    }
    if (std::abs(state.t - target) <= snap) {
      state.t = target;
      result.series.samples.push_back(make_sample(state.t, functionals(state.geom)));
      if (target >= next_index * sample_every - snap) ++next_index;
    }
  }
  if (result.status == RunStatus::completed) result.stop_time = state.t;
  result.final_graph = state.graph;
  return result;
}

RunResult run(const RoundSphereSurface& initial, int N, double t_end, double sample_every, const FlowOptions& options) {
  return run(initial.to_graph(N), t_end, sample_every, options);
}

double exact_slice_flow(double s0, const SpaceParams& params, double t) {
  return s0 * std::exp(t / (params.n - 1.0));
}

}  // namespace imcf
