#include "liereach/matrix.hpp"

#include <cmath>

namespace liereach {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool is_skew_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = max_abs(m);
  if (scale == 0.0) return true;
  return max_abs(m + m.adjoint()) <= tol * scale;
}

RealVector realify(const ComplexMatrix& m) {
  const Eigen::Index n = m.size();
  RealVector v(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = m.data()[i].real();
    v(n + i) = m.data()[i].imag();
  }
  return v;
}

int numeric_rank(const RealMatrix& columns, double tol) {
  if (columns.cols() == 0 || columns.rows() == 0) return 0;
  // Unit columns make the count independent of how each vector is scaled.
  RealMatrix unit(columns.rows(), columns.cols());
  Eigen::Index kept = 0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    const double n = columns.col(j).norm();
    if (n > 0.0) unit.col(kept++) = columns.col(j) / n;
  }
  if (kept == 0) return 0;
  Eigen::BDCSVD<RealMatrix> svd(unit.leftCols(kept));
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++rank;
  return rank;
}

int realified_rank(const std::vector<ComplexVector>& vectors, double tol) {
  if (vectors.empty()) return 0;
  RealMatrix cols(2 * vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j)
    cols.col(static_cast<Eigen::Index>(j)) = realify(vectors[j]);
  return numeric_rank(cols, tol);
}

int complex_rank(const Eigen::MatrixXcd& columns, double tol) {
  if (columns.cols() == 0 || columns.rows() == 0) return 0;
  Eigen::MatrixXcd unit(columns.rows(), columns.cols());
  Eigen::Index kept = 0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    const double n = columns.col(j).norm();
    if (n > 0.0) unit.col(kept++) = columns.col(j) / n;
  }
  if (kept == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(unit.leftCols(kept));
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++rank;
  return rank;
}

double projection_residual(const RealMatrix& span, const RealVector& x) {
  const double norm = x.norm();
  if (norm == 0.0) return 0.0;
  if (span.cols() == 0) return 1.0;
  Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(span);
  const RealVector coeffs = cod.solve(x);
  return (x - span * coeffs).norm() / norm;
}

}  // namespace liereach
