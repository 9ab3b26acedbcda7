/*
 * SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef STRETCHSTAB_STRETCHSTAB_H
#define STRETCHSTAB_STRETCHSTAB_H

#include <stddef.h>

#if defined(STRETCHSTAB_BUILDING_LIBRARY)
#define SS_API __attribute__((visibility("default")))
#else
#define SS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/*
 * Static tipping limits and design trade-offs for a two-drive-wheel mobile
 * base with a lift and a lateral telescoping arm.
 *
 * Every call returns an ss_status. On failure a human-readable message is
 * available from ss_last_error() until the next failing call on the same
 * thread. Output pointers are written only on success. Strings returned
 * through char** are heap-allocated and released with ss_string_free().
 * Handles are independent values; distinct handles may be used from
 * different threads concurrently.
 */

typedef enum ss_status {
  SS_OK = 0,
  SS_ERR_INVALID_ARGUMENT = 1,
  SS_ERR_INVALID_SPEC = 2,
  SS_ERR_OUT_OF_LIMITS = 3,
  SS_ERR_OUT_OF_WORKSPACE = 4,
  SS_ERR_UNBOUNDED = 5,
  SS_ERR_INFEASIBLE = 6,
  SS_ERR_UNSUPPORTED = 7,
  SS_ERR_PARSE = 8,
  SS_ERR_IO = 9,
  SS_ERR_INTERNAL = 10
} ss_status;

typedef enum ss_kind {
  SS_KIND_PULL = 0,
  SS_KIND_PUSH = 1,
  SS_KIND_BACKPUSH = 2,
  SS_KIND_PAYLOAD = 3
} ss_kind;

typedef struct ss_spec ss_spec;
typedef struct ss_sweep ss_sweep;
typedef struct ss_problem ss_problem;
typedef struct ss_solution ss_solution;
typedef struct ss_manifest ss_manifest;

SS_API const char* ss_version(void);
SS_API const char* ss_last_error(void);
SS_API const char* ss_status_name(ss_status status);
/* 0 for SS_OK, 2 for parse and I/O failures, 1 for every other failure. */
SS_API int ss_status_exit_code(ss_status status);
SS_API void ss_string_free(char* str);
SS_API ss_status ss_kind_parse(const char* text, ss_kind* out);

/* ---- robot spec (schema robotspec-v1) ---------------------------------- */

SS_API ss_status ss_spec_load(const char* path, ss_spec** out);
SS_API ss_status ss_spec_parse(const char* json_text, ss_spec** out);
SS_API ss_status ss_spec_stretch_re1(ss_spec** out);
SS_API ss_status ss_spec_clone(const ss_spec* spec, ss_spec** out);
SS_API void ss_spec_free(ss_spec* spec);
/* *valid is 1 or 0; *report lists each violated invariant, one per line. */
SS_API ss_status ss_spec_validate(const ss_spec* spec, int* valid, char** report);
SS_API ss_status ss_spec_to_json(const ss_spec* spec, char** json_text);
/* Scalar fields by file key: m_r g w l c t D H m_arm arm_com_travel wheel_half_width. */
SS_API ss_status ss_spec_get(const ss_spec* spec, const char* field, double* value);
SS_API ss_status ss_spec_set(ss_spec* spec, const char* field, double value);

/* ---- statics ------------------------------------------------------------ */

/*
 * Closed-form capability (N for forces, kg for payload). `location` is the
 * height for force kinds (required) or the reach for payload (NULL: full
 * reach D). A diverging limit sets *unbounded = 1 and *value = +inf.
 */
SS_API ss_status ss_analyze(const ss_spec* spec, ss_kind kind, const double* location,
                            double* value, int* unbounded);

/* CSV with header `h_m,force_N` or `reach_m,payload_kg`. */
SS_API ss_status ss_curve_csv(const ss_spec* spec, ss_kind kind, double min, double max,
                              size_t points, char** csv);

/*
 * Tipping analysis on the spec's support triangle with the COM aggregated at
 * joint state q = {q_a, q_m, q_l}. One applied load: force[3] in N at
 * point[3] in m (robot frame), plus an attached mass in kg at the same point.
 * edge_moments (may be NULL) receives `edge_capacity` values at most;
 * *edge_count is always set.
 */
SS_API ss_status ss_tip_margin(const ss_spec* spec, const double q[3], const double force[3],
                               const double point[3], double attached_mass, double* margin,
                               size_t* binding_edge, int* stable, double* edge_moments,
                               size_t edge_capacity, size_t* edge_count);

/* COM (x, y, z) and total mass at joint state q = {q_a, q_m, q_l}. */
SS_API ss_status ss_aggregate_com(const ss_spec* spec, const double q[3], double com[3],
                                  double* mass);

/* Support triangle half angle alpha = atan(w / 2l), rad. */
SS_API ss_status ss_support_alpha(const ss_spec* spec, double* alpha);

/* ---- kinematics --------------------------------------------------------- */

/* q = {q_a, q_m, q_l}; pose = {x_e, y_e, z_e}. */
SS_API ss_status ss_forward_kinematics(const ss_spec* spec, const double q[3], double pose[3]);
SS_API ss_status ss_inverse_kinematics(const ss_spec* spec, const double pose[3], double q[3]);
/* Row-major 3x3. */
SS_API ss_status ss_jacobian(const ss_spec* spec, const double q[3], double jac[9]);
/* *width is -1 when unbounded. */
SS_API ss_status ss_workspace_box(const ss_spec* spec, double* height, double* depth,
                                  double* width);

/* ---- design ------------------------------------------------------------- */

SS_API ss_status ss_extension_gain(double width_increase, int segments, double* gain);

SS_API ss_status ss_sweep_create(const ss_spec* base, ss_sweep** out);
SS_API void ss_sweep_free(ss_sweep* sweep);
SS_API ss_status ss_sweep_add_grid(ss_sweep* sweep, const char* field, double min, double max,
                                   size_t steps);
SS_API ss_status ss_sweep_add_values(ss_sweep* sweep, const char* field, const double* values,
                                     size_t count);
/* `location` as for ss_analyze. */
SS_API ss_status ss_sweep_add_metric(ss_sweep* sweep, ss_kind kind, const double* location);
/* Output bytes do not depend on `threads`. */
SS_API ss_status ss_sweep_run_csv(const ss_sweep* sweep, unsigned threads, char** csv);

/* Schema designproblem-v1. */
SS_API ss_status ss_problem_load(const char* path, ss_problem** out);
SS_API ss_status ss_problem_parse(const char* json_text, const char* base_dir, ss_problem** out);
SS_API void ss_problem_free(ss_problem* problem);
SS_API ss_status ss_solve(const ss_problem* problem, ss_solution** out);
SS_API void ss_solution_free(ss_solution* solution);
SS_API ss_status ss_solution_objective(const ss_solution* solution, double* value);
/* Name of the objective target (field key or "payload"); owned by the solution. */
SS_API const char* ss_solution_objective_target(const ss_solution* solution);
SS_API ss_status ss_solution_csv(const ss_solution* solution, char** csv);
SS_API ss_status ss_solution_spec(const ss_solution* solution, ss_spec** out);

/* ---- feasibility (schema taskreq-v1) ------------------------------------ */

SS_API ss_status ss_manifest_load(const char* path, ss_manifest** out);
SS_API ss_status ss_manifest_parse(const char* json_text, ss_manifest** out);
SS_API void ss_manifest_free(ss_manifest* manifest);
SS_API size_t ss_manifest_size(const ss_manifest* manifest);
/* Per-requirement verdict rows in input order. */
SS_API ss_status ss_check_manifest(const ss_spec* spec, const ss_manifest* manifest, char** csv,
                                   size_t* passed, size_t* failed);

#ifdef __cplusplus
}
#endif

#endif /* STRETCHSTAB_STRETCHSTAB_H */
