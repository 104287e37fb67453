#include "imcf/imcf.h"

#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "imcf/config.hpp"
#include "imcf/error.hpp"
#include "imcf/flow_smooth.hpp"
#include "imcf/lab.hpp"
#include "imcf/levelset.hpp"

struct imcf_config {
  imcf::ExperimentConfig value;
};

struct imcf_surface {
  imcf::RadialGraph value;
};

struct imcf_series {
  imcf::FlowSeries value;
};

struct imcf_field {
  imcf::LevelSetField value;
};

struct imcf_result {
  imcf::LabOutcome outcome;
  // Flattened claims; strings are referenced by imcf_claim.
  struct Row {
    std::string experiment;
    const imcf::Claim* claim;
    std::string kind;
  };
  std::vector<Row> rows;
  std::string summary;
};

namespace {

thread_local std::string last_error;

imcf_status from_code(imcf::ErrorCode code) {
  using imcf::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return IMCF_ERR_INVALID_ARGUMENT;
    case ErrorCode::domain: return IMCF_ERR_DOMAIN;
    case ErrorCode::horizon: return IMCF_ERR_HORIZON;
    case ErrorCode::invalid_surface: return IMCF_ERR_INVALID_SURFACE;
    case ErrorCode::flow_breakdown: return IMCF_ERR_FLOW_BREAKDOWN;
    case ErrorCode::mesh_quality: return IMCF_ERR_MESH_QUALITY;
    case ErrorCode::nonconvergence: return IMCF_ERR_NONCONVERGENCE;
    case ErrorCode::extraction: return IMCF_ERR_EXTRACTION;
    case ErrorCode::config: return IMCF_ERR_CONFIG;
    case ErrorCode::io: return IMCF_ERR_IO;
  }
  return IMCF_ERR_INTERNAL;
}

imcf_status fail(imcf_status status, const char* message) {
  last_error = message;
  return status;
}

template <class Fn>
imcf_status guard(Fn&& fn) {
  try {
    fn();
    return IMCF_OK;
  } catch (const imcf::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(IMCF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(IMCF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(IMCF_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw imcf::Error(imcf::ErrorCode::invalid_argument, what);
}

imcf::LevelSetOptions options_from(const double* eps, size_t eps_count) {
  imcf::LevelSetOptions options;
  if (eps_count > 0) {
    require(eps != nullptr, "eps schedule pointer is null");
    options.eps_schedule.assign(eps, eps + eps_count);
  }
  return options;
}

imcf_sample to_c(const imcf::FlowSample& s) {
  return imcf_sample{s.t, s.area, s.int_fH, s.flux, s.Q, s.H_min, s.H_max, s.umbilicity};
}

}  // namespace

extern "C" {

const char* imcf_version(void) { return "0.1.0"; }

const char* imcf_last_error(void) { return last_error.c_str(); }

const char* imcf_status_string(imcf_status status) {
  switch (status) {
    case IMCF_OK: return "ok";
    case IMCF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case IMCF_ERR_DOMAIN: return "domain error";
    case IMCF_ERR_HORIZON: return "inside horizon";
    case IMCF_ERR_INVALID_SURFACE: return "invalid surface";
    case IMCF_ERR_FLOW_BREAKDOWN: return "flow breakdown";
    case IMCF_ERR_MESH_QUALITY: return "mesh quality";
    case IMCF_ERR_NONCONVERGENCE: return "nonconvergence";
    case IMCF_ERR_EXTRACTION: return "extraction error";
    case IMCF_ERR_CONFIG: return "configuration error";
    case IMCF_ERR_IO: return "i/o error";
    case IMCF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

imcf_status imcf_unit_sphere_area(int n, double* out) {
  return guard([&] {
    require(out, "output pointer is null");
    *out = imcf::unit_sphere_area(n);
  });
}

imcf_status imcf_polar_from_isotropic(int n, double m, double r, double* s) {
  return guard([&] {
    require(s, "output pointer is null");
    *s = imcf::polar_from_isotropic(r, imcf::SpaceParams::make(n, m));
  });
}

imcf_status imcf_isotropic_from_polar(int n, double m, double s, double* r) {
  return guard([&] {
    require(r, "output pointer is null");
    *r = imcf::isotropic_from_polar(s, imcf::SpaceParams::make(n, m));
  });
}

imcf_status imcf_potential(int n, double m, double s, double* f) {
  return guard([&] {
    require(f, "output pointer is null");
    *f = imcf::potential_f(imcf::PolarPoint{s, 0.0}, imcf::SpaceParams::make(n, m));
  });
}

imcf_status imcf_q_limit(int n, double* out) {
  return guard([&] {
    require(out, "output pointer is null");
    *out = imcf::q_limit(imcf::SpaceParams::make(n, 1.0));
  });
}

imcf_status imcf_static_residual(int n, double m, double r, double theta, int central_difference, double h,
                                 double potential_coefficient, double* hessian, double* laplacian) {
  return guard([&] {
    require(hessian && laplacian, "output pointer is null");
    imcf::StaticProbe probe;
    probe.mode = central_difference ? imcf::DerivativeMode::central_difference : imcf::DerivativeMode::analytic;
    probe.h = h;
    probe.potential_coefficient = potential_coefficient;
    const auto res = imcf::static_residual(imcf::IsotropicPoint{r, theta}, imcf::SpaceParams::make(n, m), probe);
    *hessian = res.hessian;
    *laplacian = res.laplacian;
  });
}

imcf_status imcf_config_parse(const char* text, imcf_config** out) {
  return guard([&] {
    require(text && out, "null argument");
    *out = new imcf_config{imcf::parse_config(text)};
  });
}

imcf_status imcf_config_load(const char* path, const char* const* overrides, size_t override_count,
                             imcf_config** out) {
  return guard([&] {
    require(path && out, "null argument");
    require(override_count == 0 || overrides, "override list is null");
    std::vector<std::string> list;
    for (size_t k = 0; k < override_count; ++k) {
      require(overrides[k], "override entry is null");
      list.emplace_back(overrides[k]);
    }
    *out = new imcf_config{imcf::load_config(path, list)};
  });
}

imcf_status imcf_config_to_text(const imcf_config* config, char** text) {
  return guard([&] {
    require(config && text, "null argument");
    const std::string s = imcf::config_to_text(config->value);
    char* buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *text = buf;
  });
}

void imcf_config_free(imcf_config* config) { delete config; }

void imcf_string_free(char* text) { delete[] text; }

imcf_status imcf_surface_from_config(const imcf_config* config, imcf_surface** out) {
  return guard([&] {
    require(config && out, "null argument");
    *out = new imcf_surface{imcf::build_surface(config->value)};
  });
}

imcf_status imcf_surface_from_samples(int n, double m, const double* rho, size_t count, imcf_surface** out) {
  return guard([&] {
    require(rho && out, "null argument");
    *out = new imcf_surface{imcf::RadialGraph(imcf::SpaceParams::make(n, m), std::vector<double>(rho, rho + count))};
  });
}

imcf_status imcf_surface_read(const char* path, imcf_surface** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = new imcf_surface{imcf::read_surface(std::string(path))};
  });
}

imcf_status imcf_surface_write(const imcf_surface* surface, const char* path) {
  return guard([&] {
    require(surface && path, "null argument");
    imcf::write_surface(std::string(path), surface->value);
  });
}

imcf_status imcf_surface_nodes(const imcf_surface* surface, size_t* count) {
  return guard([&] {
    require(surface && count, "null argument");
    *count = surface->value.rho().size();
  });
}

imcf_status imcf_surface_rho(const imcf_surface* surface, double* rho, size_t count) {
  return guard([&] {
    require(surface && rho, "null argument");
    const auto values = surface->value.rho();
    require(count == values.size(), "buffer size does not match the node count");
    std::copy(values.begin(), values.end(), rho);
  });
}

imcf_status imcf_surface_functionals(const imcf_surface* surface, imcf_sample* out) {
  return guard([&] {
    require(surface && out, "null argument");
    *out = to_c(imcf::make_sample(0.0, imcf::functionals(imcf::schwarzschild_geometry(surface->value))));
  });
}

imcf_status imcf_surface_minkowski(const imcf_surface* surface, imcf_minkowski* out) {
  return guard([&] {
    require(surface && out, "null argument");
    const auto r = imcf::minkowski_report(imcf::schwarzschild_geometry(surface->value));
    *out = imcf_minkowski{r.lhs, r.rhs, r.slack};
  });
}

void imcf_surface_free(imcf_surface* surface) { delete surface; }

imcf_status imcf_flow_run(const imcf_surface* initial, double t_end, double sample_every, double dt_max,
                          imcf_series** series, imcf_run_status* run_status, double* stop_time) {
  return guard([&] {
    require(initial && series, "null argument");
    imcf::FlowOptions options;
    options.dt_max = dt_max;
    imcf::RunResult run{{}, imcf::RunStatus::completed, 0.0, {}, initial->value};
    try {
      run = imcf::run(initial->value, t_end, sample_every, options);
    } catch (const imcf::FlowBreakdownError& e) {
      run.status = imcf::RunStatus::breakdown;
      run.stop_time = e.time();
    }
    if (run_status)
      *run_status = run.status == imcf::RunStatus::completed ? IMCF_RUN_COMPLETED
                    : run.status == imcf::RunStatus::breakdown ? IMCF_RUN_BREAKDOWN
                                                               : IMCF_RUN_MESH_QUALITY;
    if (stop_time) *stop_time = run.stop_time;
    *series = new imcf_series{std::move(run.series)};
  });
}

imcf_status imcf_series_length(const imcf_series* series, size_t* length) {
  return guard([&] {
    require(series && length, "null argument");
    *length = series->value.samples.size();
  });
}

imcf_status imcf_series_sample(const imcf_series* series, size_t index, imcf_sample* out) {
  return guard([&] {
    require(series && out, "null argument");
    require(index < series->value.samples.size(), "sample index out of range");
    *out = to_c(series->value.samples[index]);
  });
}

imcf_status imcf_series_write_csv(const imcf_series* series, const char* path) {
  return guard([&] {
    require(series && path, "null argument");
    imcf::write_series_csv(std::string(path), series->value);
  });
}

void imcf_series_free(imcf_series* series) { delete series; }

imcf_status imcf_levelset_solve_radial(int n, double m, double s_inner, int cells, int isotropic_chart,
                                       const double* eps, size_t eps_count, double outer_factor, imcf_field** out) {
  return guard([&] {
    require(out, "null argument");
    const auto params = imcf::SpaceParams::make(n, m);
    const imcf::RadialGridSpec grid{cells, isotropic_chart ? imcf::RadialChart::isotropic : imcf::RadialChart::polar};
    *out = new imcf_field{imcf::solve_radial(params, imcf::RoundSphereSurface{params, s_inner}, grid,
                                             options_from(eps, eps_count), outer_factor)};
  });
}

imcf_status imcf_levelset_solve_surface(const imcf_surface* inner, int radial_cells, const double* eps,
                                        size_t eps_count, double outer_factor, imcf_field** out) {
  return guard([&] {
    require(inner && out, "null argument");
    *out = new imcf_field{imcf::solve_axisymmetric(inner->value, imcf::AxisymmetricGridSpec{radial_cells},
                                                   options_from(eps, eps_count), outer_factor)};
  });
}

imcf_status imcf_field_info(const imcf_field* field, imcf_field_summary* out) {
  return guard([&] {
    require(field && out, "null argument");
    const auto& f = field->value;
    *out = imcf_field_summary{f.radial_cells, f.angular_cells, f.eps, f.outer_value(), f.iterations, f.residual_max};
  });
}

imcf_status imcf_field_extract(const imcf_field* field, double t, imcf_surface** out) {
  return guard([&] {
    require(field && out, "null argument");
    *out = new imcf_surface{imcf::extract_level(field->value, t).graph};
  });
}

imcf_status imcf_field_weak_series(const imcf_field* field, const double* levels, size_t count,
                                   imcf_series** out) {
  return guard([&] {
    require(field && out && (levels || count == 0), "null argument");
    *out = new imcf_series{imcf::weak_Q_series(field->value, std::vector<double>(levels, levels + count))};
  });
}

imcf_status imcf_field_write_csv(const imcf_field* field, const char* path) {
  return guard([&] {
    require(field && path, "null argument");
    imcf::write_field_csv(std::string(path), field->value);
  });
}

void imcf_field_free(imcf_field* field) { delete field; }

imcf_status imcf_lab_run(const imcf_config* config, const char* command, const char* out_dir, imcf_result** out) {
  return guard([&] {
    require(config && command && out_dir && out, "null argument");
    auto result = std::make_unique<imcf_result>();
    result->outcome = imcf::run_command(config->value, imcf::parse_command(command), out_dir);
    for (const auto& report : result->outcome.reports)
      for (const auto& claim : report.claims)
        result->rows.push_back({report.experiment, &claim, imcf::to_string(claim.kind)});
    std::ostringstream os;
    imcf::write_report_text(os, result->outcome.reports);
    result->summary = os.str();
    *out = result.release();
  });
}

imcf_status imcf_result_verdict(const imcf_result* result, imcf_verdict* verdict) {
  return guard([&] {
    require(result && verdict, "null argument");
    switch (result->outcome.status()) {
      case imcf::ReportStatus::pass: *verdict = IMCF_VERDICT_PASS; break;
      case imcf::ReportStatus::fail: *verdict = IMCF_VERDICT_FAIL; break;
      case imcf::ReportStatus::inconclusive: *verdict = IMCF_VERDICT_INCONCLUSIVE; break;
    }
  });
}

imcf_status imcf_result_claim_count(const imcf_result* result, size_t* count) {
  return guard([&] {
    require(result && count, "null argument");
    *count = result->rows.size();
  });
}

imcf_status imcf_result_claim(const imcf_result* result, size_t index, imcf_claim* out) {
  return guard([&] {
    require(result && out, "null argument");
    require(index < result->rows.size(), "claim index out of range");
    const auto& row = result->rows[index];
    const imcf::Claim& c = *row.claim;
    *out = imcf_claim{row.experiment.c_str(), c.id.c_str(),  c.anchor.c_str(), row.kind.c_str(),
                      c.measured,             c.expected,    c.tolerance,      c.pass ? 1 : 0};
  });
}

const char* imcf_result_summary(const imcf_result* result) { return result ? result->summary.c_str() : ""; }

void imcf_result_free(imcf_result* result) { delete result; }

}  // extern "C"
