/* C interface to the slicing library. All handles are opaque; every call
 * returns an slc_status and leaves a message for slc_last_error() on failure.
 * Strings returned through char** are owned by the caller and released with
 * slc_free_string(). */
#ifndef SLICING_SLICING_H
#define SLICING_SLICING_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SLC_API __declspec(dllexport)
#else
#define SLC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slc_status {
  SLC_OK = 0,
  SLC_ERR_INPUT = 1,
  SLC_ERR_DIMENSION = 2,
  SLC_ERR_UNBOUNDED = 3,
  SLC_ERR_INTERNAL = 4,
  SLC_ERR_NULL = 5
} slc_status;

typedef enum slc_theorem {
  SLC_THM1 = 0, /* real stability */
  SLC_KM = 1,
  SLC_THM2 = 2, /* real slicing */
  SLC_THM3 = 3, /* complex stability */
  SLC_THM4 = 4  /* complex slicing */
} slc_theorem;

typedef enum slc_scheme {
  SLC_SCHEME_AUTO = 0,
  SLC_SCHEME_PRODUCT_GAUSS = 1,
  SLC_SCHEME_CUBED_GAUSS = 2,
  SLC_SCHEME_RANDOMIZED_QMC = 3
} slc_scheme;

typedef struct slc_quad_spec {
  int sphere_nodes;
  int radial_nodes;
  uint64_t seed;
  int scheme; /* slc_scheme */
  double rel_tol;
} slc_quad_spec;

typedef struct slc_search_spec {
  int restarts;
  int evals;
  int search_nodes;
  uint64_t seed;
} slc_search_spec;

typedef struct slc_body slc_body;
typedef struct slc_density slc_density;
typedef struct slc_report slc_report;

SLC_API const char* slc_version(void);
/* Message of the last failed call on this thread ("" if none). */
SLC_API const char* slc_last_error(void);
SLC_API void slc_free_string(char* s);

SLC_API void slc_default_quad_spec(slc_quad_spec* spec);
SLC_API void slc_default_search_spec(slc_search_spec* spec);

/* Constants. */
SLC_API slc_status slc_ball_volume(int n, double* out);
SLC_API slc_status slc_sphere_measure(int n, double* out);
SLC_API slc_status slc_c_nk(int n, int k, double* out);
SLC_API slc_status slc_d_n(int n, double* out);

/* Bodies and densities from JSON documents or shorthand names; dim <= 0
 * means the document must fix the dimension. */
SLC_API slc_status slc_body_from_spec(const char* spec, int dim, slc_body** out);
SLC_API void slc_body_free(slc_body* body);
SLC_API slc_status slc_body_dim(const slc_body* body, int* out);
SLC_API slc_status slc_body_norm(const slc_body* body, const double* x, size_t len, double* out);
SLC_API slc_status slc_body_label(const slc_body* body, char** out);

SLC_API slc_status slc_density_from_spec(const char* spec, int dim, slc_density** out);
SLC_API void slc_density_free(slc_density* density);
SLC_API slc_status slc_density_eval(const slc_density* density, const double* x, size_t len, double* out);

/* Integrals. density may be NULL for f = 1. frame is column-major
 * (n rows, sub_dim columns) with orthonormal columns. */
SLC_API slc_status slc_body_measure(const slc_body* body, const slc_density* density, const slc_quad_spec* spec,
                                    double* value, double* est_error);
SLC_API slc_status slc_section_measure(const slc_body* body, const slc_density* density, const double* frame,
                                       int sub_dim, const slc_quad_spec* spec, double* value, double* est_error);
SLC_API slc_status slc_mc_body_measure(const slc_body* body, const slc_density* density, long samples,
                                       uint64_t seed, double* mean, double* std_error);

/* Theorem checks. k is ignored for SLC_THM3 / SLC_THM4. */
SLC_API slc_status slc_verify(slc_theorem theorem, const slc_body* body, const slc_density* density, int k,
                              const slc_quad_spec* quad, const slc_search_spec* search, slc_report** out);
SLC_API void slc_report_free(slc_report* report);
SLC_API slc_status slc_report_values(const slc_report* report, double* lhs, double* rhs, double* ratio,
                                     double* epsilon, int* pass);
SLC_API slc_status slc_report_json(const slc_report* report, char** out);
SLC_API slc_status slc_report_csv(const slc_report* report, char** out);

/* Runs a full RunConfig JSON document (any command). *out receives the
 * serialized output; *all_pass is 1 iff every instance passed. */
SLC_API slc_status slc_run(const char* config_json, char** out, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif
