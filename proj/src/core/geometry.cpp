#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "errors.hpp"

namespace slicing {

std::string_view to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::EuclideanBall: return "euclidean-ball";
    case BodyKind::Ellipsoid: return "ellipsoid";
    case BodyKind::LpBall: return "lp-ball";
    case BodyKind::SlabPolytope: return "slab-polytope";
    case BodyKind::ComplexLpBall: return "complex-lp-ball";
    case BodyKind::RThetaSymmetrized: return "rtheta-symmetrized";
    case BodyKind::Scaled: return "scaled";
    case BodyKind::Custom: return "custom";
  }
  return "unknown";
}

std::string_view to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::Constant: return "constant";
    case DensityKind::RadialGaussian: return "radial-gaussian";
    case DensityKind::RadialPolynomial: return "radial-polynomial";
    case DensityKind::IndicatorSum: return "shifted-indicator-sum";
  }
  return "unknown";
}

struct StarBody::Impl {
  BodyKind kind = BodyKind::EuclideanBall;
  int dim = 0;
  bool convex = true;
  std::string label;
  Eigen::MatrixXd matrix;   // ellipsoid shape or slab rows
  Eigen::MatrixXd dual;     // ellipsoid inverse, or A^{-T} for square slabs
  double p = 2.0;
  double q = 2.0;           // conjugate exponent
  double scale = 1.0;
  std::optional<StarBody> inner;
  int theta_nodes = 0;
  std::vector<double> cos_t, sin_t;
  double circumradius = -1.0;
  Functional gauge;
};

namespace {

double lp_norm(const double* v, int n, double p) {
  double m = 0.0;
  for (int i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
  if (m == 0.0) return 0.0;
  if (p == 1.0) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::abs(v[i]);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += (v[i] / m) * (v[i] / m);
    return m * std::sqrt(s);
  }
  if (std::isinf(p)) return m;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::pow(std::abs(v[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double conjugate(double p) {
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

std::string fmt_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

thread_local std::vector<double> scratch;

// For K = {y^T A y <= 1}: x^T R_t^T A R_t x = alpha + beta cos 2t + gamma sin 2t,
// and the mean of 1/(alpha + beta cos 2t + gamma sin 2t) over t is
// (alpha^2 - beta^2 - gamma^2)^{-1/2} = (pq - r^2)^{-1/2}, so
// ||x||_{K_c} = (pq - r^2)^{1/4}.
double exact_rtheta_ellipsoid_norm(const Eigen::MatrixXd& a, const double* x, int n) {
  double p = 0.0, q = 0.0, r = 0.0;
  for (int i = 0; i < n; ++i) {
    double ax = 0.0, ajx = 0.0;
    for (int j = 0; j < n; j += 2) {
      ax += a(i, j) * x[j] + a(i, j + 1) * x[j + 1];
      ajx += -a(i, j) * x[j + 1] + a(i, j + 1) * x[j];
    }
    const double jx_i = (i % 2 == 0) ? -x[i + 1] : x[i - 1];
    p += x[i] * ax;
    r += x[i] * ajx;
    q += jx_i * ajx;
  }
  return std::sqrt(std::sqrt(std::max(0.0, p * q - r * r)));
}

}  // namespace

StarBody StarBody::euclidean_ball(int n) {
  if (n < 1) throw InputError("euclidean-ball: dimension must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = BodyKind::EuclideanBall;
  impl->dim = n;
  impl->circumradius = 1.0;
  impl->label = "euclidean-ball(n=" + std::to_string(n) + ")";
  return StarBody(impl);
}

StarBody StarBody::ellipsoid(const Eigen::MatrixXd& shape) {
  if (shape.rows() < 1 || shape.rows() != shape.cols()) {
    throw InputError("ellipsoid: shape matrix must be square and non-empty");
  }
  const double asym = (shape - shape.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-12 * std::max(1.0, shape.cwiseAbs().maxCoeff()))) {
    throw InputError("ellipsoid: shape matrix must be symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(shape);
  if (llt.info() != Eigen::Success) throw InputError("ellipsoid: shape matrix must be positive definite");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(shape, Eigen::EigenvaluesOnly);
  auto impl = std::make_shared<Impl>();
  impl->kind = BodyKind::Ellipsoid;
  impl->dim = static_cast<int>(shape.rows());
  impl->matrix = 0.5 * (shape + shape.transpose());
  impl->dual = llt.solve(Eigen::MatrixXd::Identity(shape.rows(), shape.cols()));
  impl->circumradius = 1.0 / std::sqrt(eig.eigenvalues().minCoeff());
  const Eigen::MatrixXd off = impl->matrix - Eigen::MatrixXd(impl->matrix.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() == 0.0) {
    std::string diag;
    for (int i = 0; i < impl->dim; ++i) diag += (i ? "," : "") + fmt_num(impl->matrix(i, i));
    impl->label = "ellipsoid(diag=" + diag + ")";
  } else {
    impl->label = "ellipsoid(n=" + std::to_string(impl->dim) + ")";
  }
  return StarBody(impl);
}

StarBody StarBody::lp_ball(int n, double p) {
  if (n < 1) throw InputError("lp-ball: dimension must be >= 1");
  if (!(p >= 1.0)) throw InputError("lp-ball: exponent p must be >= 1, got " + fmt_num(p));
  auto impl = std::make_shared<Impl>();
  impl->kind = BodyKind::LpBall;
  impl->dim = n;
  impl->p = p;
  impl->q = conjugate(p);
  impl->circumradius = p >= 2.0 ? std::pow(static_cast<double>(n), 0.5 - 1.0 / p) : 1.0;
  impl->label = "lp-ball(p=" + fmt_num(p) + ",n=" + std::to_string(n) + ")";
  return StarBody(impl);
}

StarBody StarBody::cube(int n) {
  if (n < 1) throw InputError("cube: dimension must be >= 1");
  StarBody b = slab_polytope(Eigen::MatrixXd::Identity(n, n));
  auto impl = std::make_shared<Impl>(*b.impl_);
  impl->label = "cube(n=" + std::to_string(n) + ")";
  return StarBody(impl);
}

StarBody StarBody::slab_polytope(const Eigen::MatrixXd& rows) {
  const int n = static_cast<int>(rows.cols());
  if (n < 1 || rows.rows() < n) throw InputError("slab-polytope: need at least n rows in R^n");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
  const double smin = svd.singularValues()(n - 1);
  if (!(smin > 1e-12 * std::max(1.0, svd.singularValues()(0)))) {
    throw InputError("slab-polytope: rows must span R^n (body would be unbounded)");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = BodyKind::SlabPolytope;
  impl->dim = n;
  impl->matrix = rows;
  if (rows.rows() == n) impl->dual = rows.transpose().inverse();
  // |x| <= |A x|_2 / s_min <= sqrt(m) |A x|_inf / s_min
  impl->circumradius = std::sqrt(static_cast<double>(rows.rows())) / smin;
  impl->label = "slab-polytope(m=" + std::to_string(rows.rows()) + ",n=" + std::to_string(n) + ")";
  return StarBody(impl);
}

StarBody StarBody::complex_lp_ball(int complex_dim, double p) {
  if (complex_dim < 1) throw InputError("complex-lp-ball: complex dimension must be >= 1");
  if (!(p >= 1.0)) throw InputError("complex-lp-ball: exponent p must be >= 1, got " + fmt_num(p));
  auto impl = std::make_shared<Impl>();
  impl->kind = BodyKind::ComplexLpBall;
  impl->dim = 2 * complex_dim;
  impl->p = p;
  impl->q = conjugate(p);
  impl->circumradius = p >= 2.0 ? std::pow(static_cast<double>(complex_dim), 0.5 - 1.0 / p) : 1.0;
  impl->label = "complex-lp-ball(p=" + fmt_num(p) + ",n=" + std::to_string(complex_dim) + ")";
  return StarBody(impl);
}

StarBody StarBody::scaled(const StarBody& inner, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InputError("scaled: scale must be positive and finite");
  auto impl = std::make_shared<Impl>();
  impl->kind = BodyKind::Scaled;
  impl->dim = inner.dim();
  impl->convex = inner.is_convex();
  impl->scale = scale;
  impl->inner = inner;
  impl->circumradius = inner.circumradius_bound() > 0 ? scale * inner.circumradius_bound() : -1.0;
  impl->label = "scaled(" + inner.label() + "," + fmt_num(scale) + ")";
  return StarBody(impl);
}

StarBody StarBody::rtheta_symmetrized(const StarBody& inner, int theta_nodes) {
  if (inner.dim() % 2 != 0) throw DimensionError("rtheta-symmetrized: ambient dimension must be even");
  const bool exact = theta_nodes == 0;
  if (exact && inner.kind() != BodyKind::Ellipsoid && inner.kind() != BodyKind::EuclideanBall) {
    throw InputError("rtheta-symmetrized: the exact form (theta_nodes = 0) needs an ellipsoid or ball");
  }
  if (!exact && theta_nodes < 4) throw InputError("rtheta-symmetrized: theta_nodes must be >= 4");
  auto impl = std::make_shared<Impl>();
  impl->kind = BodyKind::RThetaSymmetrized;
  impl->dim = inner.dim();
  impl->convex = false;
  impl->inner = inner;
  impl->theta_nodes = theta_nodes;
  if (exact) {
    impl->matrix = inner.kind() == BodyKind::Ellipsoid ? inner.matrix() : Eigen::MatrixXd::Identity(inner.dim(), inner.dim());
  }
  impl->cos_t.resize(theta_nodes);
  impl->sin_t.resize(theta_nodes);
  for (int j = 0; j < theta_nodes; ++j) {
    const double t = 2.0 * std::numbers::pi * j / theta_nodes;
    impl->cos_t[j] = std::cos(t);
    impl->sin_t[j] = std::sin(t);
  }
  // rho_{K_c}^2 is an average of rho_K^2 over rotations.
  impl->circumradius = inner.circumradius_bound();
  impl->label = "rtheta-symmetrized(" + inner.label() + ")";
  return StarBody(impl);
}

StarBody StarBody::custom(int n, Functional gauge, bool convex, std::string label) {
  if (n < 1) throw InputError("custom: dimension must be >= 1");
  if (!gauge) throw InputError("custom: gauge function is empty");
  auto impl = std::make_shared<Impl>();
  impl->kind = BodyKind::Custom;
  impl->dim = n;
  impl->convex = convex;
  impl->gauge = std::move(gauge);
  impl->label = std::move(label);
  return StarBody(impl);
}

int StarBody::dim() const { return impl_->dim; }
BodyKind StarBody::kind() const { return impl_->kind; }
bool StarBody::is_convex() const { return impl_->convex; }
std::string StarBody::label() const { return impl_->label; }
const Eigen::MatrixXd& StarBody::matrix() const { return impl_->matrix; }
double StarBody::exponent() const { return impl_->p; }
double StarBody::scale() const { return impl_->scale; }
int StarBody::theta_nodes() const { return impl_->theta_nodes; }
int StarBody::complex_dim() const { return impl_->dim / 2; }
double StarBody::circumradius_bound() const { return impl_->circumradius; }

const StarBody& StarBody::inner() const {
  if (!impl_->inner) throw InputError("inner(): body has no wrapped body");
  return *impl_->inner;
}

double StarBody::norm(std::span<const double> x) const {
  check_dim(x.size(), static_cast<std::size_t>(impl_->dim), "minkowski_functional");
  return norm_unchecked(x.data());
}

double StarBody::norm_unchecked(const double* x) const {
  const Impl& b = *impl_;
  const int n = b.dim;
  switch (b.kind) {
    case BodyKind::EuclideanBall:
      return lp_norm(x, n, 2.0);
    case BodyKind::Ellipsoid: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += b.matrix(i, j) * x[j];
        s += x[i] * row;
      }
      return std::sqrt(std::max(0.0, s));
    }
    case BodyKind::LpBall:
      return lp_norm(x, n, b.p);
    case BodyKind::SlabPolytope: {
      double m = 0.0;
      for (Eigen::Index i = 0; i < b.matrix.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += b.matrix(i, j) * x[j];
        m = std::max(m, std::abs(s));
      }
      return m;
    }
    case BodyKind::ComplexLpBall: {
      const int nc = n / 2;
      double mod[64] = {};
      std::vector<double> big;
      double* moduli = mod;
      if (nc > 64) {
        big.resize(nc);
        moduli = big.data();
      }
      for (int j = 0; j < nc; ++j) moduli[j] = std::hypot(x[2 * j], x[2 * j + 1]);
      return lp_norm(moduli, nc, b.p);
    }
    case BodyKind::Scaled:
      return b.inner->norm_unchecked(x) / b.scale;
    case BodyKind::RThetaSymmetrized: {
      bool zero = true;
      for (int i = 0; i < n; ++i) zero = zero && x[i] == 0.0;
      if (zero) return 0.0;
      if (b.theta_nodes == 0) return exact_rtheta_ellipsoid_norm(b.matrix, x, n);
      const StarBody& inner = *b.inner;
      double stack[64];
      std::vector<double> big;
      double* rotated = stack;
      if (n > 64) {
        big.resize(n);
        rotated = big.data();
      }
      double acc = 0.0;
      for (int t = 0; t < b.theta_nodes; ++t) {
        const double c = b.cos_t[t], s = b.sin_t[t];
        for (int j = 0; j < n; j += 2) {
          rotated[j] = c * x[j] - s * x[j + 1];
          rotated[j + 1] = s * x[j] + c * x[j + 1];
        }
        const double v = inner.norm_unchecked(rotated);
        acc += 1.0 / (v * v);
      }
      return 1.0 / std::sqrt(acc / b.theta_nodes);
    }
    case BodyKind::Custom:
      return b.gauge(std::span<const double>(x, n));
  }
  return 0.0;
}

double StarBody::radial(std::span<const double> theta) const {
  check_dim(theta.size(), static_cast<std::size_t>(impl_->dim), "radial_function");
  double len2 = 0.0;
  for (double v : theta) len2 += v * v;
  if (len2 == 0.0) throw InputError("radial_function: direction must be non-zero");
  return 1.0 / norm_unchecked(theta.data());
}

bool StarBody::contains(std::span<const double> x, double rel_tol) const {
  return norm(x) <= 1.0 + rel_tol;
}

double StarBody::support_bound(std::span<const double> u) const {
  check_dim(u.size(), static_cast<std::size_t>(impl_->dim), "support_bound");
  const Impl& b = *impl_;
  const int n = b.dim;
  Eigen::Map<const Eigen::VectorXd> v(u.data(), n);
  switch (b.kind) {
    case BodyKind::EuclideanBall:
      return v.norm();
    case BodyKind::Ellipsoid:
      return std::sqrt(std::max(0.0, v.dot(b.dual * v)));
    case BodyKind::LpBall:
      return lp_norm(u.data(), n, b.q);
    case BodyKind::SlabPolytope:
      if (b.dual.size() > 0) return (b.dual * v).cwiseAbs().sum();
      return b.circumradius * v.norm();
    case BodyKind::ComplexLpBall: {
      std::vector<double> moduli(n / 2);
      for (int j = 0; j < n / 2; ++j) moduli[j] = std::hypot(u[2 * j], u[2 * j + 1]);
      return lp_norm(moduli.data(), n / 2, b.q);
    }
    case BodyKind::Scaled:
      return b.scale * b.inner->support_bound(u);
    case BodyKind::RThetaSymmetrized:
    case BodyKind::Custom:
      return b.circumradius > 0 ? b.circumradius * v.norm() : -1.0;
  }
  return -1.0;
}

// ---------------------------------------------------------------------------

struct Density::Impl {
  DensityKind kind = DensityKind::Constant;
  int dim = 0;
  double level = 1.0;
  double sigma = 1.0;
  double base = 0.0;
  double amplitude = 1.0;
  std::vector<double> coefficients;
  std::vector<DensityComponent> components;
};

Density Density::constant(double level) {
  if (!(level >= 0.0) || !std::isfinite(level)) throw InputError("constant density: level must be >= 0");
  auto impl = std::make_shared<Impl>();
  impl->kind = DensityKind::Constant;
  impl->level = level;
  return Density(impl);
}

Density Density::radial_gaussian(double sigma, double base, double amplitude) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InputError("radial-gaussian: sigma must be > 0");
  if (!(base >= 0.0) || !(amplitude >= 0.0)) throw InputError("radial-gaussian: base and amplitude must be >= 0");
  auto impl = std::make_shared<Impl>();
  impl->kind = DensityKind::RadialGaussian;
  impl->sigma = sigma;
  impl->base = base;
  impl->amplitude = amplitude;
  return Density(impl);
}

Density Density::radial_polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) throw InputError("radial-polynomial: need at least one coefficient");
  for (double c : coefficients) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw InputError("radial-polynomial: coefficients must be >= 0");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = DensityKind::RadialPolynomial;
  impl->coefficients = std::move(coefficients);
  return Density(impl);
}

Density Density::indicator_sum(std::vector<DensityComponent> components) {
  if (components.empty()) throw InputError("shifted-indicator-sum: need at least one component");
  const int n = components.front().body.dim();
  for (const auto& c : components) {
    check_dim(static_cast<std::size_t>(c.body.dim()), static_cast<std::size_t>(n), "shifted-indicator-sum body");
    if (c.density.dim() != 0) {
      check_dim(static_cast<std::size_t>(c.density.dim()), static_cast<std::size_t>(n), "shifted-indicator-sum density");
    }
    if (!(c.weight >= 0.0)) throw InputError("shifted-indicator-sum: weights must be >= 0");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = DensityKind::IndicatorSum;
  impl->dim = n;
  impl->components = std::move(components);
  return Density(impl);
}

DensityKind Density::kind() const { return impl_->kind; }
int Density::dim() const { return impl_->dim; }
bool Density::is_radial() const { return impl_->kind != DensityKind::IndicatorSum; }
bool Density::is_constant() const { return impl_->kind == DensityKind::Constant; }
double Density::level() const { return impl_->level; }
double Density::sigma() const { return impl_->sigma; }
double Density::base() const { return impl_->base; }
double Density::amplitude() const { return impl_->amplitude; }
const std::vector<double>& Density::coefficients() const { return impl_->coefficients; }
const std::vector<DensityComponent>& Density::components() const { return impl_->components; }

std::string Density::label() const {
  const Impl& d = *impl_;
  switch (d.kind) {
    case DensityKind::Constant: return "constant(" + fmt_num(d.level) + ")";
    case DensityKind::RadialGaussian:
      return "radial-gaussian(sigma=" + fmt_num(d.sigma) + ",base=" + fmt_num(d.base) +
             ",amplitude=" + fmt_num(d.amplitude) + ")";
    case DensityKind::RadialPolynomial: {
      std::string s = "radial-polynomial(";
      for (std::size_t i = 0; i < d.coefficients.size(); ++i) s += (i ? "," : "") + fmt_num(d.coefficients[i]);
      return s + ")";
    }
    case DensityKind::IndicatorSum: {
      std::string s = "shifted-indicator-sum(";
      for (std::size_t i = 0; i < d.components.size(); ++i) {
        const auto& c = d.components[i];
        s += (i ? "+" : "") + fmt_num(c.weight) + "*" + c.density.label() + "*chi[" + c.body.label() + "]";
      }
      return s + ")";
    }
  }
  return "unknown";
}

double Density::radial_value(double r) const {
  const Impl& d = *impl_;
  switch (d.kind) {
    case DensityKind::Constant: return d.level;
    case DensityKind::RadialGaussian: return d.base + d.amplitude * std::exp(-0.5 * r * r / (d.sigma * d.sigma));
    case DensityKind::RadialPolynomial: {
      double s = 0.0;
      for (auto it = d.coefficients.rbegin(); it != d.coefficients.rend(); ++it) s = s * r + *it;
      return s;
    }
    case DensityKind::IndicatorSum: break;
  }
  throw InputError("radial_value: density is not radial");
}

double Density::eval(std::span<const double> x) const {
  const Impl& d = *impl_;
  if (d.dim != 0) check_dim(x.size(), static_cast<std::size_t>(d.dim), "density_eval");
  if (is_radial()) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return radial_value(std::sqrt(s));
  }
  double total = 0.0;
  for (const auto& c : d.components) {
    if (c.weight == 0.0 || c.body.norm(x) > 1.0) continue;
    total += c.weight * c.density.eval(x);
  }
  return total;
}

RayProfile::RayProfile(const Density& density, std::span<const double> theta)
    : density_(&density), theta_(theta) {
  if (density.is_radial()) return;
  const auto& comps = density.components();
  rhos_.reserve(comps.size());
  for (const auto& c : comps) rhos_.push_back(c.body.radial(theta));
  breakpoints_ = rhos_;
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
}

double RayProfile::operator()(double r) const {
  if (density_->is_radial()) return density_->radial_value(r);
  const auto& comps = density_->components();
  double total = 0.0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    if (c.weight == 0.0 || r > rhos_[i]) continue;
    if (c.density.is_radial()) {
      total += c.weight * c.density.radial_value(r);
    } else {
      scratch.resize(theta_.size());
      for (std::size_t j = 0; j < theta_.size(); ++j) scratch[j] = r * theta_[j];
      total += c.weight * c.density.eval(scratch);
    }
  }
  return total;
}

}  // namespace slicing
