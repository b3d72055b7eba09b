#include "groupoidal/linalg.hpp"

#include <algorithm>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace groupoidal {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Matrix nullspace(const Matrix& m, double tol) {
  const auto n = m.cols();
  if (n == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(n, n);
  auto kernel_of = [&](const auto& svd) -> Matrix {
    const auto& sv = svd.singularValues();
    const double cutoff = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    return svd.matrixV().rightCols(n - rank);
  };
  const Eigen::BDCSVD<Matrix> fast(m, Eigen::ComputeFullV);
  if (fast.singularValues().allFinite() && fast.matrixV().allFinite()) return kernel_of(fast);
  // BDCSVD occasionally returns NaNs on highly degenerate inputs (permutation blocks).
  return kernel_of(Eigen::JacobiSVD<Matrix>(m, Eigen::ComputeFullV));
}

Matrix random_complex(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  Matrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      out(i, j) = Complex(re, normal(rng));
    }
  }
  return out;
}

Vector random_complex_vector(Rng& rng, Eigen::Index n) { return random_complex(rng, n, 1).col(0); }

Vector random_real_vector(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Vector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = normal(rng);
  return out;
}

Matrix random_unitary(Rng& rng, Eigen::Index n) {
  if (n == 0) return Matrix(0, 0);
  Eigen::HouseholderQR<Matrix> qr(random_complex(rng, n, n));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double unitarity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols()));
}

Complex bilinear(const Vector& v, const Matrix& m, const Vector& u) { return (v.transpose() * m * u)(0, 0); }

}  // namespace groupoidal
