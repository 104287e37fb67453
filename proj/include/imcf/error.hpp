#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace imcf {

enum class ErrorCode {
  invalid_argument,
  domain,
  horizon,
  invalid_surface,
  flow_breakdown,
  mesh_quality,
  nonconvergence,
  extraction,
  config,
  io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when the Schwarzschild mean curvature of an evolving surface stops
/// being positive. Carries the flow time at which positivity failed.
class FlowBreakdownError : public Error {
 public:
  FlowBreakdownError(double time, const std::string& what)
      : Error(ErrorCode::flow_breakdown, what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Newton stagnation in the level-set solver; keeps the last iterate.
class NonconvergenceError : public Error {
 public:
  NonconvergenceError(std::vector<double> last_iterate, double residual, const std::string& what)
      : Error(ErrorCode::nonconvergence, what),
        last_iterate_(std::move(last_iterate)),
        residual_(residual) {}
  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
};

}  // namespace imcf
