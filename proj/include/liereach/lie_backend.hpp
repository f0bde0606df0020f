// lie_backend.hpp - the two concrete Lie bracket realizations.
//
// Matrix backend: elements are n x n complex matrices, [X, Y] = XY - YX.
// Structure backend: elements are coefficient columns over an abstract basis
// e_1..e_d with [e_i, e_j] = sum_k c_ij^k e_k.
//
// Both backends realify elements for rank and membership tests; realification
// is the Frobenius (trace) inner product on real and imaginary parts.

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "liereach/matrix.hpp"
#include "liereach/td_operator.hpp"

namespace liereach {

class LieAlgebraSpec {
 public:
  LieAlgebraSpec() = default;
  explicit LieAlgebraSpec(std::vector<std::string> names);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  // Throws InputError for unknown labels.
  int index_of(const std::string& name) const;

  double c(int i, int j, int k) const { return constants_[flat(i, j, k)]; }
  void set_constant(int i, int j, int k, double value) { constants_[flat(i, j, k)] = value; }

  // Sets [e_i, e_j] = sum value * e_k and [e_j, e_i] to its negative.
  void set_bracket(int i, int j, const std::vector<std::pair<int, double>>& result);
  void set_bracket(const std::string& a, const std::string& b,
                   const std::vector<std::pair<std::string, double>>& result);

  Eigen::VectorXcd unit(int i) const;
  Eigen::VectorXcd unit(const std::string& name) const { return unit(index_of(name)); }

  Eigen::VectorXcd bracket(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;

  // max |c_ij^k + c_ji^k|
  double antisymmetry_residual() const;
  // max over basis triples of |[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]|
  double jacobi_residual() const;

  const std::vector<double>& constants() const { return constants_; }

 private:
  std::size_t flat(int i, int j, int k) const {
    const auto d = static_cast<std::size_t>(dim());
    return (static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)) * d +
           static_cast<std::size_t>(k);
  }

  std::vector<std::string> names_;
  std::vector<double> constants_;
};

class LieBackend {
 public:
  virtual ~LieBackend() = default;

  virtual Backend kind() const = 0;
  virtual ComplexMatrix bracket(const ComplexMatrix& a, const ComplexMatrix& b) const = 0;
  virtual RealVector realify(const ComplexMatrix& a) const = 0;
  virtual ComplexVector complexify(const ComplexMatrix& a) const = 0;
  // Upper bound on the real dimension of any closure.
  virtual int ambient_real_dim() const = 0;
  // Element lies in the real form: skew-Hermitian matrix or real coefficients.
  virtual bool in_real_form(const ComplexMatrix& a, double tol) const = 0;
};

// Commutator backend on n x n matrices. `interior` < n restricts realification
// to the leading interior x interior block, which is how truncated ladder
// representations are compared away from their truncation boundary.
class MatrixBackend final : public LieBackend {
 public:
  explicit MatrixBackend(int dim, int interior = 0);

  int dim() const { return dim_; }
  int interior() const { return interior_; }

  Backend kind() const override { return Backend::matrix; }
  ComplexMatrix bracket(const ComplexMatrix& a, const ComplexMatrix& b) const override {
    return commutator(a, b);
  }
  RealVector realify(const ComplexMatrix& a) const override;
  ComplexVector complexify(const ComplexMatrix& a) const override;
  int ambient_real_dim() const override { return 2 * interior_ * interior_; }
  bool in_real_form(const ComplexMatrix& a, double tol) const override {
    return is_skew_hermitian(a, tol);
  }

  // Leading `interior` entries of a state-sized vector.
  ComplexVector restrict_state(const ComplexVector& v) const { return v.head(interior_); }

 private:
  int dim_;
  int interior_;
};

class StructureBackend final : public LieBackend {
 public:
  explicit StructureBackend(LieAlgebraSpec algebra) : algebra_(std::move(algebra)) {}

  const LieAlgebraSpec& algebra() const { return algebra_; }

  Backend kind() const override { return Backend::structure; }
  ComplexMatrix bracket(const ComplexMatrix& a, const ComplexMatrix& b) const override;
  RealVector realify(const ComplexMatrix& a) const override { return liereach::realify(a); }
  ComplexVector complexify(const ComplexMatrix& a) const override { return a.col(0); }
  int ambient_real_dim() const override { return 2 * algebra_.dim(); }
  bool in_real_form(const ComplexMatrix& a, double tol) const override;

 private:
  LieAlgebraSpec algebra_;
};

// Symbolic bracket of time-dependent operators: [f X, g Y] = f g [X, Y],
// returned in canonical form.
TDOperator bracket(const TDOperator& a, const TDOperator& b, const LieBackend& backend);

}  // namespace liereach
