#ifndef IMCF_IMCF_H
#define IMCF_IMCF_H

/* C interface of the imcf library. Objects are opaque handles released with
 * the matching *_free function. Every fallible call returns an imcf_status;
 * on failure imcf_last_error() describes the cause (thread-local, valid until
 * the next failing call on the same thread). Output pointers are written only
 * on success. */

#include <stddef.h>

#if defined(IMCF_BUILDING_LIBRARY)
#define IMCF_EXPORT __attribute__((visibility("default")))
#else
#define IMCF_EXPORT
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum imcf_status {
  IMCF_OK = 0,
  IMCF_ERR_INVALID_ARGUMENT = 1,
  IMCF_ERR_DOMAIN = 2,
  IMCF_ERR_HORIZON = 3,
  IMCF_ERR_INVALID_SURFACE = 4,
  IMCF_ERR_FLOW_BREAKDOWN = 5,
  IMCF_ERR_MESH_QUALITY = 6,
  IMCF_ERR_NONCONVERGENCE = 7,
  IMCF_ERR_EXTRACTION = 8,
  IMCF_ERR_CONFIG = 9,
  IMCF_ERR_IO = 10,
  IMCF_ERR_INTERNAL = 11
} imcf_status;

typedef enum imcf_run_status {
  IMCF_RUN_COMPLETED = 0,
  IMCF_RUN_BREAKDOWN = 1,
  IMCF_RUN_MESH_QUALITY = 2
} imcf_run_status;

typedef enum imcf_verdict {
  IMCF_VERDICT_PASS = 0,
  IMCF_VERDICT_FAIL = 1,
  IMCF_VERDICT_INCONCLUSIVE = 2
} imcf_verdict;

typedef struct imcf_config imcf_config;
typedef struct imcf_surface imcf_surface;
typedef struct imcf_series imcf_series;
typedef struct imcf_field imcf_field;
typedef struct imcf_result imcf_result;

typedef struct imcf_sample {
  double t;
  double area;
  double int_fH;
  double flux;
  double Q;
  double H_min;
  double H_max;
  double umbilicity;
} imcf_sample;

typedef struct imcf_minkowski {
  double lhs;
  double rhs;
  double slack;
} imcf_minkowski;

/* Strings point into the owning result and live as long as it. */
typedef struct imcf_claim {
  const char* experiment;
  const char* id;
  const char* anchor;
  const char* kind;
  double measured;
  double expected;
  double tolerance;
  int pass;
} imcf_claim;

typedef struct imcf_field_summary {
  int radial_cells;
  int angular_cells; /* 0 for radial fields */
  double eps;
  double outer_value;
  int iterations;
  double residual_max;
} imcf_field_summary;

IMCF_EXPORT const char* imcf_version(void);
IMCF_EXPORT const char* imcf_last_error(void);
IMCF_EXPORT const char* imcf_status_string(imcf_status status);

/* Geometry of the n-dimensional Schwarzschild space. */
IMCF_EXPORT imcf_status imcf_unit_sphere_area(int n, double* out);
IMCF_EXPORT imcf_status imcf_polar_from_isotropic(int n, double m, double r, double* s);
IMCF_EXPORT imcf_status imcf_isotropic_from_polar(int n, double m, double s, double* r);
IMCF_EXPORT imcf_status imcf_potential(int n, double m, double s, double* f);
IMCF_EXPORT imcf_status imcf_q_limit(int n, double* out);
/* Static-equation residuals at isotropic (r, theta). central_difference != 0
 * selects the finite-difference mode with step h. */
IMCF_EXPORT imcf_status imcf_static_residual(int n, double m, double r, double theta, int central_difference,
                                             double h, double potential_coefficient, double* hessian,
                                             double* laplacian);

/* Configuration in the flat key=value format. overrides is a list of
 * "key=value" strings applied after the file (may be NULL when count is 0). */
IMCF_EXPORT imcf_status imcf_config_parse(const char* text, imcf_config** out);
IMCF_EXPORT imcf_status imcf_config_load(const char* path, const char* const* overrides, size_t override_count,
                                         imcf_config** out);
/* Canonical text; the caller frees the string with imcf_string_free. */
IMCF_EXPORT imcf_status imcf_config_to_text(const imcf_config* config, char** text);
IMCF_EXPORT void imcf_config_free(imcf_config* config);
IMCF_EXPORT void imcf_string_free(char* text);

/* Radial graphs r = rho(theta) on the latitude grid theta_k = k pi / N. */
IMCF_EXPORT imcf_status imcf_surface_from_config(const imcf_config* config, imcf_surface** out);
IMCF_EXPORT imcf_status imcf_surface_from_samples(int n, double m, const double* rho, size_t count,
                                                  imcf_surface** out);
IMCF_EXPORT imcf_status imcf_surface_read(const char* path, imcf_surface** out);
IMCF_EXPORT imcf_status imcf_surface_write(const imcf_surface* surface, const char* path);
IMCF_EXPORT imcf_status imcf_surface_nodes(const imcf_surface* surface, size_t* count);
IMCF_EXPORT imcf_status imcf_surface_rho(const imcf_surface* surface, double* rho, size_t count);
IMCF_EXPORT imcf_status imcf_surface_functionals(const imcf_surface* surface, imcf_sample* out);
IMCF_EXPORT imcf_status imcf_surface_minkowski(const imcf_surface* surface, imcf_minkowski* out);
IMCF_EXPORT void imcf_surface_free(imcf_surface* surface);

/* Smooth flow. A breakdown ends the run early and is reported through
 * run_status, not as an error. */
IMCF_EXPORT imcf_status imcf_flow_run(const imcf_surface* initial, double t_end, double sample_every,
                                      double dt_max, imcf_series** series, imcf_run_status* run_status,
                                      double* stop_time);
IMCF_EXPORT imcf_status imcf_series_length(const imcf_series* series, size_t* length);
IMCF_EXPORT imcf_status imcf_series_sample(const imcf_series* series, size_t index, imcf_sample* out);
IMCF_EXPORT imcf_status imcf_series_write_csv(const imcf_series* series, const char* path);
IMCF_EXPORT void imcf_series_free(imcf_series* series);

/* Level-set formulation. eps may be NULL (default schedule) when eps_count is 0. */
IMCF_EXPORT imcf_status imcf_levelset_solve_radial(int n, double m, double s_inner, int cells, int isotropic_chart,
                                                   const double* eps, size_t eps_count, double outer_factor,
                                                   imcf_field** out);
IMCF_EXPORT imcf_status imcf_levelset_solve_surface(const imcf_surface* inner, int radial_cells,
                                                    const double* eps, size_t eps_count, double outer_factor,
                                                    imcf_field** out);
IMCF_EXPORT imcf_status imcf_field_info(const imcf_field* field, imcf_field_summary* out);
IMCF_EXPORT imcf_status imcf_field_extract(const imcf_field* field, double t, imcf_surface** out);
IMCF_EXPORT imcf_status imcf_field_weak_series(const imcf_field* field, const double* levels, size_t count,
                                               imcf_series** out);
IMCF_EXPORT imcf_status imcf_field_write_csv(const imcf_field* field, const char* path);
IMCF_EXPORT void imcf_field_free(imcf_field* field);

/* Verification campaigns. command is one of "geometry-check", "flow",
 * "levelset", "verify", "all"; artifacts are written into out_dir. */
IMCF_EXPORT imcf_status imcf_lab_run(const imcf_config* config, const char* command, const char* out_dir,
                                     imcf_result** out);
IMCF_EXPORT imcf_status imcf_result_verdict(const imcf_result* result, imcf_verdict* verdict);
IMCF_EXPORT imcf_status imcf_result_claim_count(const imcf_result* result, size_t* count);
IMCF_EXPORT imcf_status imcf_result_claim(const imcf_result* result, size_t index, imcf_claim* out);
/* Human-readable report text, owned by the result. */
IMCF_EXPORT const char* imcf_result_summary(const imcf_result* result);
IMCF_EXPORT void imcf_result_free(imcf_result* result);

#ifdef __cplusplus
}
#endif

#endif /* IMCF_IMCF_H */
