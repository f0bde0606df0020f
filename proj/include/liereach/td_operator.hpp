// td_operator.hpp - time-dependent operators  H(t) = sum_k f_k(t) X_k.
//
// The constant parts X_k are complex matrices (matrix backend) or complex
// coefficient columns over an abstract Lie algebra basis (structure backend).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liereach/exppoly.hpp"
#include "liereach/matrix.hpp"

namespace liereach {

enum class Backend { matrix, structure };

const char* to_string(Backend b);

struct OperatorTerm {
  ExpPoly coeff;
  ComplexMatrix op;
  // Basis label used for serialization; empty for derived terms.
  std::string label;
};

struct EvaluatedOperator {
  ComplexMatrix value;
  // Skew-Hermitian (matrix backend) or real-valued coefficients (structure backend).
  bool valid = false;
};

class TDOperator {
 public:
  TDOperator() = default;
  // Zero operator of the given shape: dim x dim (matrix) or dim x 1 (structure).
  TDOperator(Backend backend, int dim);

  static TDOperator constant(const ComplexMatrix& op, Backend backend = Backend::matrix,
                             std::string label = {});

  Backend backend() const { return backend_; }
  int dim() const { return dim_; }
  const std::vector<OperatorTerm>& terms() const { return terms_; }
  const std::optional<FormalSignal>& signal() const { return signal_; }

  TDOperator& add_term(ExpPoly coeff, const ComplexMatrix& op, std::string label = {});
  TDOperator& set_signal(std::optional<FormalSignal> signal);

  bool is_zero() const { return terms_.empty(); }
  // Every coefficient is constant in t.
  bool is_time_independent() const;
  bool has_formal() const;

  // Throws RangeError on overflow, PreconditionError on a missing formal signal.
  ComplexMatrix operator()(double t) const;

  TDOperator derivative() const;

  // One term per distinct monomial, unit coefficient, merged constant part;
  // parts with max|X| <= drop_tol * scale are removed, where scale defaults to
  // the largest input part.
  TDOperator canonical(double drop_tol = 1e-13, double scale = -1.0) const;

  TDOperator& operator+=(const TDOperator& other);
  TDOperator& operator*=(Complex s);
  friend TDOperator operator+(TDOperator a, const TDOperator& b) { return a += b; }
  friend TDOperator operator-(TDOperator a, const TDOperator& b) {
    return a += b * Complex{-1.0, 0.0};
  }
  friend TDOperator operator*(TDOperator a, Complex s) { return a *= s; }
  friend TDOperator operator*(Complex s, TDOperator a) { return a *= s; }

 private:
  void check_shape(const ComplexMatrix& op) const;

  Backend backend_ = Backend::matrix;
  int dim_ = 0;
  std::vector<OperatorTerm> terms_;
  std::optional<FormalSignal> signal_;
};

// Sum f_k(t) X_k with a validity flag; throws RangeError on non-finite values.
EvaluatedOperator evaluate(const TDOperator& op, double t, double skew_tol = kSkewTol);

}  // namespace liereach
