#include "subspace.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"

namespace slicing {

double Subspace::gram_deviation() const {
  const Eigen::MatrixXd gram = frame_.transpose() * frame_;
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

Subspace Subspace::from_frame(Eigen::MatrixXd frame) {
  if (frame.cols() < 1 || frame.rows() < frame.cols()) {
    throw InputError("subspace: frame must be n x m with 1 <= m <= n");
  }
  Subspace s(std::move(frame));
  const double dev = s.gram_deviation();
  if (!(dev <= 1e-10)) {
    throw InputError("subspace: frame is not orthonormal (Gram deviation " + std::to_string(dev) + ")");
  }
  return s;
}

Subspace Subspace::coordinate(int ambient_dim, const std::vector<int>& indices) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(ambient_dim, static_cast<Eigen::Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] < 0 || indices[j] >= ambient_dim) throw InputError("subspace: coordinate index out of range");
    f(indices[j], static_cast<Eigen::Index>(j)) = 1.0;
  }
  return from_frame(std::move(f));
}

void orthonormalize(Eigen::MatrixXd& m) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < j; ++i) m.col(j) -= m.col(i).dot(m.col(j)) * m.col(i);
      const double len = m.col(j).norm();
      if (!(len > 1e-300)) throw InputError("orthonormalize: columns are linearly dependent");
      m.col(j) /= len;
    }
  }
}

Subspace haar_sample(int n, int k, std::uint64_t seed) {
  if (n < 2 || k < 1 || k > n - 1) {
    throw InputError("haar_sample: need 1 <= k <= n-1, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  const int m = n - k;
  Rng rng(derive_seed(seed, 0x4a11));
  Eigen::MatrixXd g(n, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = standard_normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return Subspace::from_frame(std::move(q));
}

}  // namespace slicing
