#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "complex_geom.hpp"
#include "errors.hpp"
#include "john.hpp"
#include "parallel.hpp"
#include "sections.hpp"

namespace slicing {

std::string_view to_string(Theorem t) {
  switch (t) {
    case Theorem::StabilityReal: return "thm1";
    case Theorem::KM: return "km";
    case Theorem::SlicingReal: return "thm2";
    case Theorem::StabilityComplex: return "thm3";
    case Theorem::SlicingComplex: return "thm4";
  }
  return "?";
}

Theorem parse_theorem(std::string_view name) {
  for (Theorem t : {Theorem::StabilityReal, Theorem::KM, Theorem::SlicingReal, Theorem::StabilityComplex,
                    Theorem::SlicingComplex}) {
    if (name == to_string(t)) return t;
  }
  throw InputError("unknown theorem '" + std::string(name) + "' (expected thm1|km|thm2|thm3|thm4)");
}

bool is_complex(Theorem t) { return t == Theorem::StabilityComplex || t == Theorem::SlicingComplex; }

bool certified_real(const StarBody& body) {
  switch (body.kind()) {
    case BodyKind::EuclideanBall:
    case BodyKind::Ellipsoid:
      return true;
    case BodyKind::Scaled:
      return certified_real(body.inner());
    default:
      return false;
  }
}

bool certified_complex(const StarBody& body) {
  if (body.dim() < 4 || body.dim() % 2 != 0) return false;
  switch (body.kind()) {
    case BodyKind::EuclideanBall:
      return true;
    case BodyKind::Ellipsoid:
      return is_rtheta_invariant(body).pass;
    case BodyKind::RThetaSymmetrized:
      return certified_real(body.inner());
    case BodyKind::Scaled:
      return certified_complex(body.inner());
    default:
      return false;
  }
}

bool proof_holds(const VerificationReport& report) {
  return std::all_of(report.proof_steps.begin(), report.proof_steps.end(),
                     [](const ProofStep& s) { return s.holds; });
}

namespace {

constexpr double kRoundingFloor = 1e-12;

std::vector<double> random_unit(int n, Rng& rng) {
  std::vector<double> x(n);
  double len2 = 0.0;
  for (auto& v : x) {
    v = standard_normal(rng);
    len2 += v * v;
  }
  for (auto& v : x) v /= std::sqrt(len2);
  return x;
}

void check_density_dim(const StarBody& body, const Density& d) {
  if (d.dim() != 0 && d.dim() != body.dim()) {
    throw DimensionError("density " + d.label() + " has dimension " + std::to_string(d.dim()) + ", body has " +
                         std::to_string(body.dim()));
  }
}

// Samples f on K (origin, interior points, boundary points) against `floor`.
void check_density_floor(const StarBody& body, const Density& f, double floor, int samples, std::uint64_t seed,
                         const char* what) {
  check_density_dim(body, f);
  const int n = body.dim();
  Rng rng(derive_seed(seed, 0xf100));
  std::vector<double> x(n, 0.0);
  auto test = [&](std::span<const double> p) {
    const double v = f.eval(p);
    if (!(v >= floor)) {
      throw InputError(std::string(what) + ": density " + f.label() + " = " + std::to_string(v) + " below " +
                       std::to_string(floor) + " inside " + body.label());
    }
  };
  test(x);
  for (int i = 0; i < samples; ++i) {
    const auto theta = random_unit(n, rng);
    const double rho = body.radial(theta);
    const double r = (i % 8 == 0) ? rho : rho * std::pow(uniform01(rng), 1.0 / n);
    for (int j = 0; j < n; ++j) x[j] = r * theta[j];
    test(x);
  }
}

void check_codim(int n, int k) {
  if (k < 1 || k >= n) {
    throw DimensionError("codimension k=" + std::to_string(k) + " must satisfy 1 <= k < n=" + std::to_string(n));
  }
}

int complex_dim_of(const StarBody& body) {
  if (body.dim() % 2 != 0 || body.dim() < 4) {
    throw DimensionError("complex theorems need a body in R^{2n} with n >= 2, got dimension " +
                         std::to_string(body.dim()));
  }
  return body.dim() / 2;
}

struct SearchRun {
  MaxSectionResult result;
  double change = 0.0;
  bool stable = false;
  int restarts = 0;
};

// Runs the configured restarts, then doubles the restart count (reusing the
// earlier restarts) until the best value moves by at most rel_tol relative,
// or by less than the quadrature error of the best value (`resolution`).
SearchRun doubling_search(const std::function<MaxSectionResult(const SearchConfig&)>& run,
                          const std::function<double(const Subspace&)>& resolution, const VerifyOptions& opt) {
  SearchConfig cfg = opt.search;
  cfg.validate();
  SearchRun out;
  out.result = run(cfg);
  out.restarts = cfg.restarts;
  for (int d = 0; d < std::max(1, opt.max_doublings); ++d) {
    SearchConfig more = cfg;
    more.restart_offset = cfg.restart_offset + out.restarts;
    more.restarts = out.restarts;
    MaxSectionResult extra = run(more);
    out.change = std::max(0.0, extra.best_value - out.result.best_value);
    out.result.restart_values.insert(out.result.restart_values.end(), extra.restart_values.begin(),
                                     extra.restart_values.end());
    out.result.evaluations += extra.evaluations;
    if (extra.best_value > out.result.best_value) {
      extra.best_restart += out.restarts;
      extra.restart_values = std::move(out.result.restart_values);
      extra.evaluations = out.result.evaluations;
      out.result = std::move(extra);
    }
    out.restarts *= 2;
    out.stable = out.change <= opt.quadrature.rel_tol * std::abs(out.result.best_value) ||
                 out.change <= resolution(out.result.best_subspace);
    if (out.stable) break;
  }
  return out;
}

std::function<double(const Subspace&)> measure_resolution(const StarBody& body, const Density& g,
                                                          const VerifyOptions& opt) {
  return [&body, &g, &opt](const Subspace& h) { return section_measure(body, g, h, opt.quadrature).est_error; };
}

VerificationReport base_report(Theorem t, int n, int k, const StarBody& body, const Density& d,
                               const VerifyOptions& opt) {
  VerificationReport r;
  r.theorem = t;
  r.n = n;
  r.k = k;
  r.seed = opt.search.seed;
  r.body = body.label();
  r.density = d.label();
  return r;
}

void attach_search(VerificationReport& r, const SearchRun& s) {
  r.witness_frame = s.result.best_subspace.frame();
  r.witness_direction = s.result.best_direction;
  r.search_change = s.change;
  r.search_stable = s.stable;
  r.restarts_used = s.restarts;
}

void finish(VerificationReport& r, double e_lhs, double e_rhs) {
  r.ratio = r.lhs / r.rhs;
  const double rel_l = r.lhs != 0.0 ? e_lhs / std::abs(r.lhs) : e_lhs / std::abs(r.rhs);
  r.est_error = std::abs(r.ratio) * (rel_l + e_rhs / std::abs(r.rhs));
  r.margin = r.est_error + kRoundingFloor;
  const bool finite = std::isfinite(r.lhs) && std::isfinite(r.rhs) && std::isfinite(r.ratio) &&
                      std::isfinite(r.est_error) && std::isfinite(r.epsilon);
  if (!finite) throw InternalError("verification produced a non-finite value for " + r.body);
  r.pass = r.ratio <= 1.0 + r.margin && r.search_stable;
}

ProofStep make_step(std::string name, double lhs, double rhs, double tolerance, std::string note = {}) {
  ProofStep s;
  s.name = std::move(name);
  s.lhs = lhs;
  s.rhs = rhs;
  s.tolerance = tolerance + kRoundingFloor * std::max(std::abs(lhs), std::abs(rhs));
  s.holds = lhs <= rhs + s.tolerance;
  s.note = std::move(note);
  return s;
}

ProofStep make_identity(std::string name, double lhs, double rhs, double tolerance, std::string note = {}) {
  ProofStep s = make_step(std::move(name), lhs, rhs, tolerance, std::move(note));
  s.holds = std::abs(lhs - rhs) <= s.tolerance;
  return s;
}

// Quantities of the stability chain on one sphere rule of R^N with sections of
// codimension kr (kr = 2 for the complex chain).
struct ChainValues {
  double a = 0.0;    // int rho^kr int_0^rho r^{N-kr-1} f
  double mu = 0.0;   // int_K f
  double vol = 0.0;  // |K|
  double nu1 = 0.0;  // int rho^kr / |S^{N-kr-1}|
};

ChainValues chain_values(const StarBody& body, const Density& f, int kr, const QuadratureSpec& spec) {
  const int dim = body.dim();
  const auto rule = sphere_rule(dim, spec);
  ChainValues v;
  v.a = polar_integral(*rule, body, &f, dim - kr - 1, spec, [kr](double rho) { return std::pow(rho, kr); });
  v.mu = polar_integral(*rule, body, &f, dim - 1, spec);
  v.vol = polar_integral(*rule, body, nullptr, dim - 1, spec);
  v.nu1 = kr * polar_integral(*rule, body, nullptr, kr - 1, spec) / sphere_measure(dim - kr);
  return v;
}

double spread(double full, double coarse) { return std::abs(full - coarse); }

// Replays the stability proof on the quadrature rule: hypothesis integrated
// against the body's functional, the f >= 1 lower bound, Hoelder for the
// total mass, and the combined bound. e_eps bounds the error of eps.
std::vector<ProofStep> stability_chain(const StarBody& body, const Density& f, int kr, double factor, double eps,
                                       double e_eps, const QuadratureSpec& spec, bool complex_chain) {
  const int dim = body.dim();
  const ChainValues F = chain_values(body, f, kr, spec);
  const ChainValues H = chain_values(body, f, kr, spec.halved(dim));
  const double a = static_cast<double>(kr) / dim;
  std::vector<ProofStep> steps;

  const double top = dim * F.vol / (dim - kr);
  steps.push_back(make_step("hypothesis-integrated", F.a, top + eps * F.nu1,
                            spread(F.a, H.a) + spread(top, dim * H.vol / (dim - kr)) +
                                std::abs(eps) * spread(F.nu1, H.nu1) + e_eps * F.nu1,
                            "inner radial power r^{n-k-1}"));
  if (complex_chain) {
    const int n = dim / 2;
    steps.push_back(make_identity("volume-identity", top, static_cast<double>(n) / (n - 1) * F.vol, 0.0,
                                  "(1/(2n-2)) int rho^{2n} = n/(n-1) |K|"));
  }
  const double low = F.mu + kr * F.vol / (dim - kr);
  steps.push_back(make_step("density-lower-bound", low, F.a,
                            spread(low, H.mu + kr * H.vol / (dim - kr)) + spread(F.a, H.a),
                            "split term equals k|K|/(n-k)"));
  const double holder = factor * std::pow(F.vol, a);
  steps.push_back(make_step("holder-total-mass", F.nu1, holder,
                            spread(F.nu1, H.nu1) + spread(holder, factor * std::pow(H.vol, a)),
                            "epsilon-free bound on the total mass"));
  const double bound = F.vol + holder * eps;
  steps.push_back(make_step("combined", F.mu, bound,
                            spread(F.mu, H.mu) + spread(F.vol, H.vol) +
                                std::abs(eps) * spread(holder, factor * std::pow(H.vol, a)) + holder * e_eps));
  return steps;
}

VerificationReport stability_common(Theorem t, const StarBody& body, const Density& f, int kr,
                                    SlicingConstants constants, const SearchRun& search, const Subspace& witness,
                                    const VerifyOptions& opt) {
  const QuadratureSpec& q = opt.quadrature;
  const bool complex_chain = is_complex(t);
  const int dim = body.dim();
  VerificationReport r = base_report(t, complex_chain ? dim / 2 : dim, complex_chain ? 1 : kr, body, f, opt);
  r.constants = constants;
  attach_search(r, search);

  const IntegralResult mu = body_measure(body, f, q);
  const IntegralResult vol = body_volume(body, q);
  const IntegralResult gap = section_excess(body, f, witness, q);
  const double eps = search.result.best_value;
  const double e_eps = gap.est_error + search.change;
  const double a = static_cast<double>(kr) / dim;
  const double c = constants.factor;

  r.epsilon = eps;
  r.lhs = mu.value;
  r.rhs = vol.value + c * std::pow(vol.value, a) * eps;
  const double e_rhs = vol.est_error * (1.0 + c * a * std::pow(vol.value, a - 1.0) * std::abs(eps)) +
                       c * std::pow(vol.value, a) * e_eps;
  finish(r, mu.est_error, e_rhs);
  if (opt.proof_replay) r.proof_steps = stability_chain(body, f, kr, c, eps, e_eps, q, complex_chain);
  return r;
}

// Slicing-type report: lhs = measure, rhs = factor * M * |L|^a.
VerificationReport slicing_common(Theorem t, int n_report, int k_report, const StarBody& body, const Density& g,
                                  double a, SlicingConstants constants, const SearchRun& search,
                                  const IntegralResult& witness_value, const VerifyOptions& opt) {
  const QuadratureSpec& q = opt.quadrature;
  VerificationReport r = base_report(t, n_report, k_report, body, g, opt);
  r.constants = constants;
  attach_search(r, search);
  const IntegralResult mu = body_measure(body, g, q);
  const IntegralResult vol = body_volume(body, q);
  const double m = search.result.best_value;
  const double e_m = witness_value.est_error + search.change;
  const double c = constants.factor;
  r.epsilon = m;
  r.lhs = mu.value;
  r.rhs = c * m * std::pow(vol.value, a);
  const double e_rhs =
      c * (std::pow(vol.value, a) * e_m + std::abs(m) * a * std::pow(vol.value, a - 1.0) * vol.est_error);
  finish(r, mu.est_error, e_rhs);
  return r;
}

// Sandwich replay shared by the real and complex slicing theorems. `outer` is
// K (or K_c), `bound` the admissible sandwich ratio, `stability_factor` the
// factor of the stability bound applied to f = chi_K + g chi_L, `volume_power`
// the exponent a in |K|^a, and `volume_bound` the constant in
// |K|^a <= volume_bound |L|^a.
std::vector<ProofStep> slicing_chain(const StarBody& body, const Density& g, const StarBody& outer, double ratio,
                                     double ratio_bound, double stability_factor, double volume_power,
                                     double volume_bound, const VerificationReport& r,
                                     const std::function<IntegralResult(const StarBody&, const Density&)>& witness_excess,
                                     const std::function<IntegralResult(const StarBody&, const Density&)>& witness_measure,
                                     const VerifyOptions& opt) {
  const QuadratureSpec& q = opt.quadrature;
  std::vector<ProofStep> steps;
  const SandwichCheck sc = verify_sandwich(body, outer, ratio, 10000, 1e-9, opt.search.seed);
  steps.push_back(make_step("sandwich-containment", sc.max_violation, 1e-9, 0.0, "10^4 sampled directions"));
  steps.push_back(make_step("sandwich-ratio", ratio, ratio_bound, 0.0));

  const Density f = Density::indicator_sum({DensityComponent{outer, 1.0, Density::constant(1.0)},
                                            DensityComponent{body, 1.0, g}});
  const IntegralResult mu_f = body_measure(outer, f, q);
  const IntegralResult vol_k = body_volume(outer, q);
  const IntegralResult mu_l = body_measure(body, g, q);
  const IntegralResult vol_l = body_volume(body, q);
  steps.push_back(make_identity("measure-identity", mu_f.value - vol_k.value, mu_l.value,
                                1e-10 * std::abs(mu_l.value) + mu_f.est_error + vol_k.est_error + mu_l.est_error,
                                "int_K f - |K| = mu(L)"));

  const IntegralResult gap = witness_excess(outer, f);
  const IntegralResult sec = witness_measure(body, g);
  steps.push_back(make_identity("section-identity", gap.value, sec.value,
                                1e-10 * std::abs(sec.value) + gap.est_error + sec.est_error,
                                "excess of f on K cap H = mu(L cap H) at the witness"));

  const double m = r.epsilon;
  const double e_m = sec.est_error + r.search_change;
  const double applied = stability_factor * std::pow(vol_k.value, volume_power) * m;
  steps.push_back(make_step("stability-applied", mu_l.value, applied,
                            mu_l.est_error + stability_factor * std::pow(vol_k.value, volume_power) * e_m +
                                stability_factor * m * volume_power * std::pow(vol_k.value, volume_power - 1.0) *
                                    vol_k.est_error));
  const double lk = std::pow(vol_k.value, volume_power);
  const double ll = volume_bound * std::pow(vol_l.value, volume_power);
  steps.push_back(make_step("volume-ratio", lk, ll,
                            volume_power * (lk * vol_k.est_error / vol_k.value + ll * vol_l.est_error / vol_l.value)));
  steps.push_back(make_step("combined", applied, volume_bound * stability_factor * m * std::pow(vol_l.value, volume_power),
                            volume_bound * stability_factor * m * volume_power *
                                    std::pow(vol_l.value, volume_power - 1.0) * vol_l.est_error +
                                stability_factor * std::pow(vol_k.value, volume_power) * m * volume_power *
                                    vol_k.est_error / vol_k.value));
  return steps;
}

}  // namespace

VerificationReport check_stability_real(const StarBody& body, const Density& f, int k, const VerifyOptions& opt) {
  opt.quadrature.validate();
  const int n = body.dim();
  check_codim(n, k);
  if (!certified_real(body)) {
    throw InputError("thm1: " + body.label() + " is not a certified generalized k-intersection body");
  }
  check_density_floor(body, f, 1.0 - 1e-9, opt.density_samples, opt.search.seed, "thm1");
  const SearchRun s = doubling_search(
      [&](const SearchConfig& c) {
        return maximize_over_grassmannian(
            n, k, [&](const Subspace& h, const QuadratureSpec& q) { return section_excess_value(body, f, h, q); },
            opt.quadrature, c);
      },
      [&](const Subspace& h) { return section_excess(body, f, h, opt.quadrature).est_error; }, opt);
  return stability_common(Theorem::StabilityReal, body, f, k, real_constants(n, k), s, s.result.best_subspace, opt);
}

VerificationReport check_km(const StarBody& body, const Density& g, int k, const VerifyOptions& opt) {
  opt.quadrature.validate();
  const int n = body.dim();
  check_codim(n, k);
  if (!certified_real(body)) {
    throw InputError("km: " + body.label() + " is not a certified generalized k-intersection body");
  }
  check_density_floor(body, g, 0.0, opt.density_samples, opt.search.seed, "km");
  const SearchRun s = doubling_search([&](const SearchConfig& c) { return max_section(body, g, k, opt.quadrature, c); },
                                      measure_resolution(body, g, opt), opt);
  const IntegralResult w = section_measure(body, g, s.result.best_subspace, opt.quadrature);
  return slicing_common(Theorem::KM, n, k, body, g, static_cast<double>(k) / n, real_constants(n, k), s, w, opt);
}

VerificationReport check_slicing_real(const StarBody& body, const Density& g, int k, const VerifyOptions& opt) {
  opt.quadrature.validate();
  const int n = body.dim();
  check_codim(n, k);
  if (!body.is_convex()) throw InputError("thm2: " + body.label() + " is not convex");
  check_density_floor(body, g, 0.0, opt.density_samples, opt.search.seed, "thm2");
  const SearchRun s = doubling_search([&](const SearchConfig& c) { return max_section(body, g, k, opt.quadrature, c); },
                                      measure_resolution(body, g, opt), opt);
  const Subspace& h = s.result.best_subspace;
  const IntegralResult w = section_measure(body, g, h, opt.quadrature);
  SlicingConstants constants = real_constants(n, k);
  const double stability = constants.factor;
  const double lift = std::pow(static_cast<double>(n), 0.5 * k);
  constants.factor *= lift;
  const double a = static_cast<double>(k) / n;
  VerificationReport r = slicing_common(Theorem::SlicingReal, n, k, body, g, a, constants, s, w, opt);
  if (opt.proof_replay) {
    const SandwichEllipsoid e = sandwich_ellipsoid(body);
    r.proof_steps = slicing_chain(
        body, g, e.outer(), e.ratio, std::sqrt(static_cast<double>(n)), stability, a, lift, r,
        [&](const StarBody& outer, const Density& f) { return section_excess(outer, f, h, opt.quadrature); },
        [&](const StarBody& l, const Density& gg) { return section_measure(l, gg, h, opt.quadrature); }, opt);
    if (!e.certified) {
      for (auto& step : r.proof_steps) step.note += step.note.empty() ? "uncertified sandwich" : "; uncertified sandwich";
    }
  }
  return r;
}

VerificationReport check_stability_complex(const StarBody& body, const Density& f, const VerifyOptions& opt) {
  opt.quadrature.validate();
  const int n = complex_dim_of(body);
  if (!certified_complex(body)) {
    throw InputError("thm3: " + body.label() + " is not a certified complex intersection body");
  }
  check_density_floor(body, f, 1.0 - 1e-9, opt.density_samples, opt.search.seed, "thm3");
  const double radius = body.circumradius_bound() > 0 ? body.circumradius_bound() : 1.0;
  const InvarianceCheck inv = is_rtheta_invariant(f, body.dim(), radius);
  if (!inv.pass) {
    throw InputError("thm3: density " + f.label() + " is not R_theta-invariant (deviation " +
                     std::to_string(inv.max_deviation) + ")");
  }
  const SearchRun s = doubling_search(
      [&](const SearchConfig& c) {
        return maximize_over_directions(
            2 * n,
            [&](std::span<const double> xi, const QuadratureSpec& q) {
              return section_excess_value(body, f, complex_hyperplane_frame(xi), q);
            },
            opt.quadrature, c);
      },
      [&](const Subspace& h) { return section_excess(body, f, h, opt.quadrature).est_error; }, opt);
  return stability_common(Theorem::StabilityComplex, body, f, 2, complex_constants(n), s, s.result.best_subspace,
                          opt);
}

VerificationReport check_slicing_complex(const StarBody& body, const Density& g, const VerifyOptions& opt) {
  opt.quadrature.validate();
  const int n = complex_dim_of(body);
  if (!body.is_convex()) throw InputError("thm4: " + body.label() + " is not convex");
  const InvarianceCheck inv = is_rtheta_invariant(body);
  if (!inv.pass) {
    throw InputError("thm4: " + body.label() + " is not R_theta-invariant (deviation " +
                     std::to_string(inv.max_deviation) + ")");
  }
  check_density_floor(body, g, 0.0, opt.density_samples, opt.search.seed, "thm4");
  const SearchRun s =
      doubling_search([&](const SearchConfig& c) { return max_complex_section(body, g, opt.quadrature, c); },
                      measure_resolution(body, g, opt), opt);
  const Subspace& h = s.result.best_subspace;
  const IntegralResult w = section_measure(body, g, h, opt.quadrature);
  SlicingConstants constants = complex_constants(n);
  const double stability = constants.factor;
  const double lift = 2.0 * n;
  constants.factor *= lift;
  const double a = 1.0 / n;
  VerificationReport r = slicing_common(Theorem::SlicingComplex, n, 1, body, g, a, constants, s, w, opt);
  if (opt.proof_replay) {
    const SandwichEllipsoid e = sandwich_ellipsoid(body);
    const StarBody kc = rtheta_symmetrize(e.outer());
    r.proof_steps = slicing_chain(
        body, g, kc, e.ratio, std::sqrt(2.0 * n), stability, a, lift, r,
        [&](const StarBody& outer, const Density& f) { return section_excess(outer, f, h, opt.quadrature); },
        [&](const StarBody& l, const Density& gg) { return section_measure(l, gg, h, opt.quadrature); }, opt);
    if (!e.certified) {
      for (auto& step : r.proof_steps) step.note += step.note.empty() ? "uncertified sandwich" : "; uncertified sandwich";
    }
  }
  return r;
}

VerificationReport verify(Theorem t, const StarBody& body, const Density& density, int k, const VerifyOptions& opt) {
  switch (t) {
    case Theorem::StabilityReal: return check_stability_real(body, density, k, opt);
    case Theorem::KM: return check_km(body, density, k, opt);
    case Theorem::SlicingReal: return check_slicing_real(body, density, k, opt);
    case Theorem::StabilityComplex: return check_stability_complex(body, density, opt);
    case Theorem::SlicingComplex: return check_slicing_complex(body, density, opt);
  }
  throw InternalError("verify: unknown theorem");
}

}  // namespace slicing
