// matrix.hpp - complex matrix primitives and real-rank utilities.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace liereach {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Default relative tolerances.
inline constexpr double kSkewTol = 1e-10;
inline constexpr double kRankTol = 1e-9;

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

// Largest absolute entry; 0 for an empty matrix.
double max_abs(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

// max |M + M^dagger| <= tol * max|M| (a zero matrix passes).
bool is_skew_hermitian(const ComplexMatrix& m, double tol = kSkewTol);

// Stacks real parts over imaginary parts of the column-major entries.
RealVector realify(const ComplexMatrix& m);

// Number of singular values above tol * sigma_max of the given columns after
// scaling each nonzero column to unit length; 0 when every column is zero.
int numeric_rank(const RealMatrix& columns, double tol = kRankTol);

// Rank over R of the vectors after splitting each into (real || imaginary) parts.
int realified_rank(const std::vector<ComplexVector>& vectors, double tol = kRankTol);

// Rank over C of the given complex columns, relative thresholding as above.
int complex_rank(const Eigen::MatrixXcd& columns, double tol = kRankTol);

// ||x - P x|| / ||x|| where P projects onto the column span (0 when x = 0 and
// 1 when the span is empty).
double projection_residual(const RealMatrix& span, const RealVector& x);

}  // namespace liereach
