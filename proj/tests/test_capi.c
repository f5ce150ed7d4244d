#include <math.h>
#include <stdio.h>
#include <string.h>

#include "slicing/slicing.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static const double kPi = 3.14159265358979323846;

static void test_constants(void) {
  double v = 0.0;
  EXPECT(slc_ball_volume(3, &v) == SLC_OK && fabs(v - 4.0 * kPi / 3.0) < 1e-14);
  EXPECT(slc_sphere_measure(3, &v) == SLC_OK && fabs(v - 4.0 * kPi) < 1e-13);
  EXPECT(slc_c_nk(2, 1, &v) == SLC_OK && fabs(v - sqrt(kPi) / 2.0) < 1e-14);
  EXPECT(slc_d_n(2, &v) == SLC_OK && fabs(v - sqrt(0.5)) < 1e-14);
  EXPECT(slc_c_nk(3, 3, &v) == SLC_ERR_INPUT);
  EXPECT(strlen(slc_last_error()) > 0);
  EXPECT(slc_ball_volume(3, NULL) == SLC_ERR_NULL);
  EXPECT(strlen(slc_version()) > 0);
}

static void test_bodies(void) {
  slc_body* cube = NULL;
  slc_body* bad = NULL;
  double x[3] = {0.2, -0.7, 0.1};
  double v = 0.0, err = 0.0;
  int dim = 0;
  char* label = NULL;
  slc_quad_spec q;
  slc_density* gauss = NULL;

  EXPECT(slc_body_from_spec("cube", 3, &cube) == SLC_OK);
  EXPECT(slc_body_dim(cube, &dim) == SLC_OK && dim == 3);
  EXPECT(slc_body_norm(cube, x, 3, &v) == SLC_OK && fabs(v - 0.7) < 1e-15);
  EXPECT(slc_body_norm(cube, x, 2, &v) == SLC_ERR_DIMENSION);
  EXPECT(slc_body_label(cube, &label) == SLC_OK && strstr(label, "cube") != NULL);
  slc_free_string(label);

  slc_default_quad_spec(&q);
  EXPECT(q.sphere_nodes == 4096 && q.radial_nodes == 64 && q.seed == 42);
  EXPECT(slc_body_measure(cube, NULL, &q, &v, &err) == SLC_OK && fabs(v - 8.0) < 8e-3);

  {
    /* Coordinate plane x3 = 0, column-major 3 x 2 frame. */
    const double frame[6] = {1, 0, 0, 0, 1, 0};
    EXPECT(slc_section_measure(cube, NULL, frame, 2, &q, &v, &err) == SLC_OK && fabs(v - 4.0) < 4e-3);
    const double skew[6] = {1, 0, 0, 1, 1, 0};
    EXPECT(slc_section_measure(cube, NULL, skew, 2, &q, &v, &err) == SLC_ERR_INPUT);
  }

  EXPECT(slc_density_from_spec("gaussian", 0, &gauss) == SLC_OK);
  EXPECT(slc_density_eval(gauss, x, 3, &v) == SLC_OK && fabs(v - exp(-0.5 * (0.04 + 0.49 + 0.01))) < 1e-15);
  {
    double mean = 0.0, sd = 0.0, mean2 = 0.0, sd2 = 0.0;
    EXPECT(slc_mc_body_measure(cube, NULL, 100000, 5, &mean, &sd) == SLC_OK && mean == 8.0 && sd == 0.0);
    EXPECT(slc_mc_body_measure(cube, gauss, 100000, 5, &mean, &sd) == SLC_OK);
    EXPECT(slc_mc_body_measure(cube, gauss, 100000, 5, &mean2, &sd2) == SLC_OK && mean == mean2 && sd == sd2);
  }

  EXPECT(slc_body_from_spec("dodecahedron", 3, &bad) == SLC_ERR_INPUT && bad == NULL);
  EXPECT(slc_body_from_spec("{\"kind\":\"ellipsoid\",\"matrix\":[[1,0],[0,-1]]}", 0, &bad) == SLC_ERR_INPUT);
  EXPECT(slc_body_from_spec("{\"kind\":", 0, &bad) == SLC_ERR_INPUT);
  EXPECT(slc_body_norm(NULL, x, 3, &v) == SLC_ERR_NULL);

  slc_density_free(gauss);
  slc_body_free(cube);
  slc_body_free(NULL);
}

static void test_verify(void) {
  slc_body* ball = NULL;
  slc_body* cube = NULL;
  slc_report* rep = NULL;
  slc_quad_spec q;
  slc_search_spec s;
  double lhs, rhs, ratio, eps;
  int pass = 0;
  char* text = NULL;

  slc_default_quad_spec(&q);
  slc_default_search_spec(&s);
  s.restarts = 4;
  s.evals = 100;
  EXPECT(slc_body_from_spec("ball", 4, &ball) == SLC_OK);
  EXPECT(slc_verify(SLC_THM1, ball, NULL, 1, &q, &s, &rep) == SLC_OK);
  EXPECT(slc_report_values(rep, &lhs, &rhs, &ratio, &eps, &pass) == SLC_OK);
  EXPECT(pass == 1 && fabs(ratio - 1.0) < 1e-10 && fabs(eps) < 1e-12);
  EXPECT(slc_report_json(rep, &text) == SLC_OK && strstr(text, "\"theorem\": \"thm1\"") != NULL);
  slc_free_string(text);
  EXPECT(slc_report_csv(rep, &text) == SLC_OK && strstr(text, "pass\nthm1,4,1,") != NULL);
  slc_free_string(text);
  slc_report_free(rep);
  rep = NULL;

  EXPECT(slc_body_from_spec("cube", 3, &cube) == SLC_OK);
  EXPECT(slc_verify(SLC_THM1, cube, NULL, 1, &q, &s, &rep) == SLC_ERR_INPUT && rep == NULL);
  EXPECT(slc_verify(SLC_THM3, cube, NULL, 1, &q, &s, &rep) == SLC_ERR_DIMENSION);
  q.sphere_nodes = 0;
  EXPECT(slc_verify(SLC_KM, ball, NULL, 1, &q, &s, &rep) == SLC_ERR_INPUT);
  slc_body_free(cube);
  slc_body_free(ball);
}

static void test_run(void) {
  char* out = NULL;
  int all_pass = 0;
  EXPECT(slc_run("{\"command\":\"constants\",\"dims\":[3],\"codims\":[1,2]}", &out, &all_pass) == SLC_OK);
  EXPECT(all_pass == 1);
  EXPECT(out != NULL && strncmp(out, "theorem,n,k,lhs,rhs,ratio,epsilon,est_error,pass", 48) == 0);
  slc_free_string(out);
  out = NULL;
  EXPECT(slc_run("{\"command\":\"verify\",\"theorems\":[\"thm1\"],\"bodies\":[],\"densities\":[\"1\"],\"dims\":[3]}",
                 &out, &all_pass) == SLC_ERR_INPUT);
  EXPECT(strstr(slc_last_error(), "config.bodies") != NULL);
  EXPECT(slc_run("{\"command\":\"verify\",\"bogus\":1}", &out, &all_pass) == SLC_ERR_INPUT);
  EXPECT(slc_run("not json", &out, &all_pass) == SLC_ERR_INPUT);
}

int main(void) {
  test_constants();
  test_bodies();
  test_verify();
  test_run();
  if (failures) {
    fprintf(stderr, "%d C API checks failed\n", failures);
    return 1;
  }
  printf("C API checks passed\n");
  return 0;
}
