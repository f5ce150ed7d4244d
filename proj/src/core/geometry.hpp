#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slicing {

enum class BodyKind {
  EuclideanBall,
  Ellipsoid,
  LpBall,
  SlabPolytope,
  ComplexLpBall,
  RThetaSymmetrized,
  Scaled,
  Custom,
};

std::string_view to_string(BodyKind kind);

using Functional = std::function<double(std::span<const double>)>;

// Origin-symmetric star body, represented by its Minkowski functional
// ||x||_K = min{a >= 0 : x in aK}. Immutable; copies share state.
class StarBody {
 public:
  static StarBody euclidean_ball(int n);
  // {x : x^T A x <= 1}; A must be symmetric positive definite.
  static StarBody ellipsoid(const Eigen::MatrixXd& shape);
  static StarBody lp_ball(int n, double p);
  // [-1, 1]^n as a slab polytope with identity rows.
  static StarBody cube(int n);
  // {x : max_i |<a_i, x>| <= 1}; rows a_i must span R^n.
  static StarBody slab_polytope(const Eigen::MatrixXd& rows);
  // Unit ball of (sum_j |z_j|^p)^{1/p} on C^n, viewed in R^{2n} with pairs
  // (2j, 2j+1) forming z_j.
  static StarBody complex_lp_ball(int complex_dim, double p);
  // s * K, so ||x||_{sK} = ||x||_K / s.
  static StarBody scaled(const StarBody& inner, double scale);
  // ||x||_{K_c} = (mean_j ||R_{t_j} x||_K^{-2})^{-1/2} over a uniform grid of
  // theta_nodes angles. Prefer rtheta_symmetrize() which picks the grid.
  // theta_nodes = 0 selects the exact average for an ellipsoid or ball.
  static StarBody rtheta_symmetrized(const StarBody& inner, int theta_nodes);
  // User-supplied gauge. Invariants are only checked by sampling.
  static StarBody custom(int n, Functional gauge, bool convex, std::string label = "custom");

  int dim() const;
  BodyKind kind() const;
  bool is_convex() const;
  std::string label() const;

  double norm(std::span<const double> x) const;
  // rho_K(theta) = 1 / ||theta||_K; theta must be a unit vector.
  double radial(std::span<const double> theta) const;
  bool contains(std::span<const double> x, double rel_tol = 1e-9) const;

  // Upper bound on the support function h_K(u) = max_{x in K} <u, x>. Exact
  // for most catalog kinds; used to size rejection-sampling boxes.
  double support_bound(std::span<const double> u) const;
  // Upper bound on max_theta rho_K(theta), or a negative value when unknown.
  double circumradius_bound() const;

  // Kind-specific data.
  const Eigen::MatrixXd& matrix() const;  // ellipsoid shape / slab rows
  double exponent() const;                // p for lp kinds
  double scale() const;                   // Scaled
  const StarBody& inner() const;          // Scaled / RThetaSymmetrized
  int theta_nodes() const;                // RThetaSymmetrized
  int complex_dim() const;                // dim() / 2

  struct Impl;

 private:
  explicit StarBody(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  double norm_unchecked(const double* x) const;

  std::shared_ptr<const Impl> impl_;

  friend struct Impl;
};

enum class DensityKind { Constant, RadialGaussian, RadialPolynomial, IndicatorSum };

std::string_view to_string(DensityKind kind);

class Density;

// One term w * g(x) * chi_B(x) of an indicator-sum density.
struct DensityComponent;

// Even, non-negative density on R^n, evaluated pointwise.
class Density {
 public:
  static Density constant(double level = 1.0);
  // base + amplitude * exp(-|x|^2 / (2 sigma^2)); f(0) = base + amplitude.
  static Density radial_gaussian(double sigma, double base = 0.0, double amplitude = 1.0);
  // sum_j c_j |x|^j with c_j >= 0.
  static Density radial_polynomial(std::vector<double> coefficients);
  // sum_i w_i g_i(x) chi_{B_i}(x); the slicing construction chi_K + g chi_L.
  static Density indicator_sum(std::vector<DensityComponent> components);

  DensityKind kind() const;
  // 0 when the density is defined in every dimension.
  int dim() const;
  bool is_radial() const;
  bool is_constant() const;
  std::string label() const;

  double eval(std::span<const double> x) const;
  // f at |x| = r; radial kinds only.
  double radial_value(double r) const;

  double level() const;  // Constant
  double sigma() const;  // RadialGaussian
  double base() const;
  double amplitude() const;
  const std::vector<double>& coefficients() const;
  const std::vector<DensityComponent>& components() const;

  struct Impl;

 private:
  explicit Density(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct DensityComponent {
  StarBody body;
  double weight = 1.0;
  Density density = Density::constant(1.0);
};

// f(r theta) along one ray, with the radii where f may jump.
class RayProfile {
 public:
  RayProfile(const Density& density, std::span<const double> theta);

  double operator()(double r) const;
  // Sorted, strictly positive jump radii.
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  const Density* density_;
  std::span<const double> theta_;
  std::vector<double> rhos_;
  std::vector<double> breakpoints_;
};

}  // namespace slicing
