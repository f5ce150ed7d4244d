#include "slicing/slicing.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <optional>
#include <string>

#include "constants.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "report.hpp"
#include "run.hpp"
#include "sections.hpp"
#include "spec_io.hpp"
#include "verify.hpp"

struct slc_body {
  slicing::StarBody body;
};

struct slc_density {
  slicing::Density density;
};

struct slc_report {
  slicing::VerificationReport report;
};

namespace {

thread_local std::string g_last_error;

slc_status fail(slc_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <typename Fn>
slc_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return SLC_OK;
  } catch (const slicing::DimensionError& e) {
    return fail(SLC_ERR_DIMENSION, e.what());
  } catch (const slicing::InputError& e) {
    return fail(SLC_ERR_INPUT, e.what());
  } catch (const slicing::UnboundedBodyError& e) {
    return fail(SLC_ERR_UNBOUNDED, e.what());
  } catch (const std::exception& e) {
    return fail(SLC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SLC_ERR_INTERNAL, "unknown exception");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

slicing::QuadratureSpec to_spec(const slc_quad_spec* s) {
  slicing::QuadratureSpec q;
  if (!s) return q;
  q.sphere_nodes = s->sphere_nodes;
  q.radial_nodes = s->radial_nodes;
  q.seed = s->seed;
  switch (s->scheme) {
    case SLC_SCHEME_AUTO: q.scheme = slicing::SphereScheme::Auto; break;
    case SLC_SCHEME_PRODUCT_GAUSS: q.scheme = slicing::SphereScheme::ProductGauss; break;
    case SLC_SCHEME_CUBED_GAUSS: q.scheme = slicing::SphereScheme::CubedGauss; break;
    case SLC_SCHEME_RANDOMIZED_QMC: q.scheme = slicing::SphereScheme::RandomizedQmc; break;
    default: throw slicing::InputError("unknown quadrature scheme " + std::to_string(s->scheme));
  }
  q.rel_tol = s->rel_tol;
  q.validate();
  return q;
}

const slicing::Density& density_or_one(const slc_density* d) {
  static const slicing::Density one = slicing::Density::constant(1.0);
  return d ? d->density : one;
}

std::optional<int> opt_dim(int dim) { return dim > 0 ? std::optional<int>(dim) : std::nullopt; }

#define SLC_REQUIRE(ptr)                                              \
  do {                                                                \
    if (!(ptr)) return fail(SLC_ERR_NULL, #ptr " must not be NULL"); \
  } while (0)

}  // namespace

extern "C" {

const char* slc_version(void) { return "1.0.0"; }

const char* slc_last_error(void) { return g_last_error.c_str(); }

void slc_free_string(char* s) { std::free(s); }

void slc_default_quad_spec(slc_quad_spec* spec) {
  if (!spec) return;
  const slicing::QuadratureSpec q;
  spec->sphere_nodes = q.sphere_nodes;
  spec->radial_nodes = q.radial_nodes;
  spec->seed = q.seed;
  spec->scheme = SLC_SCHEME_AUTO;
  spec->rel_tol = q.rel_tol;
}

void slc_default_search_spec(slc_search_spec* spec) {
  if (!spec) return;
  const slicing::SearchConfig s;
  spec->restarts = s.restarts;
  spec->evals = s.evals;
  spec->search_nodes = s.search_nodes;
  spec->seed = s.seed;
}

slc_status slc_ball_volume(int n, double* out) {
  SLC_REQUIRE(out);
  return guarded([&] {
    if (n < 0) throw slicing::InputError("ball_volume: n must be >= 0");
    *out = slicing::ball_volume(n);
  });
}

slc_status slc_sphere_measure(int n, double* out) {
  SLC_REQUIRE(out);
  return guarded([&] {
    if (n < 1) throw slicing::InputError("sphere_measure: n must be >= 1");
    *out = slicing::sphere_measure(n);
  });
}

slc_status slc_c_nk(int n, int k, double* out) {
  SLC_REQUIRE(out);
  return guarded([&] { *out = slicing::c_nk(n, k); });
}

slc_status slc_d_n(int n, double* out) {
  SLC_REQUIRE(out);
  return guarded([&] { *out = slicing::d_n(n); });
}

slc_status slc_body_from_spec(const char* spec, int dim, slc_body** out) {
  SLC_REQUIRE(spec);
  SLC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new slc_body{slicing::parse_body(slicing::spec_from_string(spec), opt_dim(dim))}; });
}

void slc_body_free(slc_body* body) { delete body; }

slc_status slc_body_dim(const slc_body* body, int* out) {
  SLC_REQUIRE(body);
  SLC_REQUIRE(out);
  *out = body->body.dim();
  return SLC_OK;
}

slc_status slc_body_norm(const slc_body* body, const double* x, size_t len, double* out) {
  SLC_REQUIRE(body);
  SLC_REQUIRE(x);
  SLC_REQUIRE(out);
  return guarded([&] { *out = body->body.norm({x, len}); });
}

slc_status slc_body_label(const slc_body* body, char** out) {
  SLC_REQUIRE(body);
  SLC_REQUIRE(out);
  return guarded([&] { *out = dup_string(body->body.label()); });
}

slc_status slc_density_from_spec(const char* spec, int dim, slc_density** out) {
  SLC_REQUIRE(spec);
  SLC_REQUIRE(out);
  *out = nullptr;
  return guarded(
      [&] { *out = new slc_density{slicing::parse_density(slicing::spec_from_string(spec), opt_dim(dim))}; });
}

void slc_density_free(slc_density* density) { delete density; }

slc_status slc_density_eval(const slc_density* density, const double* x, size_t len, double* out) {
  SLC_REQUIRE(density);
  SLC_REQUIRE(x);
  SLC_REQUIRE(out);
  return guarded([&] { *out = density->density.eval({x, len}); });
}

slc_status slc_body_measure(const slc_body* body, const slc_density* density, const slc_quad_spec* spec,
                            double* value, double* est_error) {
  SLC_REQUIRE(body);
  SLC_REQUIRE(value);
  return guarded([&] {
    const auto r = slicing::body_measure(body->body, density_or_one(density), to_spec(spec));
    *value = r.value;
    if (est_error) *est_error = r.est_error;
  });
}

slc_status slc_section_measure(const slc_body* body, const slc_density* density, const double* frame, int sub_dim,
                               const slc_quad_spec* spec, double* value, double* est_error) {
  SLC_REQUIRE(body);
  SLC_REQUIRE(frame);
  SLC_REQUIRE(value);
  return guarded([&] {
    const int n = body->body.dim();
    if (sub_dim < 1 || sub_dim > n) throw slicing::DimensionError("section: sub_dim out of range");
    const Eigen::MatrixXd f = Eigen::Map<const Eigen::MatrixXd>(frame, n, sub_dim);
    const auto h = slicing::Subspace::from_frame(f);
    const auto r = slicing::section_measure(body->body, density_or_one(density), h, to_spec(spec));
    *value = r.value;
    if (est_error) *est_error = r.est_error;
  });
}

slc_status slc_mc_body_measure(const slc_body* body, const slc_density* density, long samples, uint64_t seed,
                               double* mean, double* std_error) {
  SLC_REQUIRE(body);
  SLC_REQUIRE(mean);
  return guarded([&] {
    const auto e = slicing::mc_body_measure(body->body, density_or_one(density), samples, seed);
    *mean = e.mean;
    if (std_error) *std_error = e.std_error;
  });
}

slc_status slc_verify(slc_theorem theorem, const slc_body* body, const slc_density* density, int k,
                      const slc_quad_spec* quad, const slc_search_spec* search, slc_report** out) {
  SLC_REQUIRE(body);
  SLC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    slicing::VerifyOptions opt;
    opt.quadrature = to_spec(quad);
    if (search) {
      opt.search.restarts = search->restarts;
      opt.search.evals = search->evals;
      opt.search.search_nodes = search->search_nodes;
      opt.search.seed = search->seed;
    }
    if (theorem < SLC_THM1 || theorem > SLC_THM4) throw slicing::InputError("unknown theorem");
    const auto t = static_cast<slicing::Theorem>(static_cast<int>(theorem));
    *out = new slc_report{slicing::verify(t, body->body, density_or_one(density), k, opt)};
  });
}

void slc_report_free(slc_report* report) { delete report; }

slc_status slc_report_values(const slc_report* report, double* lhs, double* rhs, double* ratio, double* epsilon,
                             int* pass) {
  SLC_REQUIRE(report);
  const auto& r = report->report;
  if (lhs) *lhs = r.lhs;
  if (rhs) *rhs = r.rhs;
  if (ratio) *ratio = r.ratio;
  if (epsilon) *epsilon = r.epsilon;
  if (pass) *pass = r.pass ? 1 : 0;
  return SLC_OK;
}

slc_status slc_report_json(const slc_report* report, char** out) {
  SLC_REQUIRE(report);
  SLC_REQUIRE(out);
  return guarded([&] { *out = dup_string(slicing::emit_report(report->report, slicing::OutputFormat::Json)); });
}

slc_status slc_report_csv(const slc_report* report, char** out) {
  SLC_REQUIRE(report);
  SLC_REQUIRE(out);
  return guarded([&] { *out = dup_string(slicing::emit_report(report->report, slicing::OutputFormat::Csv)); });
}

slc_status slc_run(const char* config_json, char** out, int* all_pass) {
  SLC_REQUIRE(config_json);
  SLC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    slicing::Json doc;
    try {
      doc = slicing::Json::parse(config_json);
    } catch (const slicing::Json::parse_error& e) {
      throw slicing::InputError(std::string("config: ") + e.what());
    }
    const auto result = slicing::run(slicing::config_from_json(doc));
    *out = dup_string(result.output);
    if (all_pass) *all_pass = result.all_pass ? 1 : 0;
  });
}

}  // extern "C"
