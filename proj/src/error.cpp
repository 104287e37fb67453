#include "imcf/error.hpp"

namespace imcf {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::domain: return "domain error";
    case ErrorCode::horizon: return "horizon error";
    case ErrorCode::invalid_surface: return "invalid surface";
    case ErrorCode::flow_breakdown: return "flow breakdown";
    case ErrorCode::mesh_quality: return "mesh quality";
    case ErrorCode::nonconvergence: return "nonconvergence";
    case ErrorCode::extraction: return "extraction error";
    case ErrorCode::config: return "configuration error";
    case ErrorCode::io: return "i/o error";
  }
  return "unknown error";
}

}  // namespace imcf
