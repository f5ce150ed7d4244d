#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace slicing {

// A (sub_dim)-dimensional linear subspace H of R^n, held as an n x sub_dim
// matrix with orthonormal columns.
class Subspace {
 public:
  // Validates orthonormality (Gram deviation <= 1e-10).
  static Subspace from_frame(Eigen::MatrixXd frame);
  // span{e_i : i in indices}.
  static Subspace coordinate(int ambient_dim, const std::vector<int>& indices);

  int ambient_dim() const { return static_cast<int>(frame_.rows()); }
  int sub_dim() const { return static_cast<int>(frame_.cols()); }
  int codim() const { return ambient_dim() - sub_dim(); }
  const Eigen::MatrixXd& frame() const { return frame_; }
  Eigen::MatrixXd projector() const { return frame_ * frame_.transpose(); }
  double gram_deviation() const;

 private:
  explicit Subspace(Eigen::MatrixXd frame) : frame_(std::move(frame)) {}
  Eigen::MatrixXd frame_;
};

// Haar-distributed element of Gr_{n-k}: QR (positive diagonal) of an
// n x (n-k) standard Gaussian matrix drawn from the seeded generator.
Subspace haar_sample(int n, int k, std::uint64_t seed);

// Orthonormalizes the columns of m in place (modified Gram-Schmidt, two
// passes). Columns must be linearly independent.
void orthonormalize(Eigen::MatrixXd& m);

}  // namespace slicing
