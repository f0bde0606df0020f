// jet.hpp - truncated Taylor data of time-dependent operators.

#pragma once

#include <vector>

#include "liereach/lie_backend.hpp"
#include "liereach/td_operator.hpp"

namespace liereach {

// (H(t0), H'(t0), ..., H^(N)(t0)).
struct OperatorJet {
  double anchor = 0.0;
  std::vector<ComplexMatrix> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  const ComplexMatrix& value() const { return coeffs.front(); }

  OperatorJet operator-() const;
  OperatorJet& operator+=(const OperatorJet& other);
};

// Constant jet (X, 0, ..., 0).
OperatorJet constant_jet(const ComplexMatrix& x, double anchor, int order);

// k-th coefficient is the k-th exact exp-poly derivative evaluated at t0.
OperatorJet jet_of(const TDOperator& op, double t0, int order);

// Leibniz rule: k-th coefficient = sum_j C(k,j) [x_j, y_{k-j}]; order = min.
OperatorJet jet_bracket(const OperatorJet& x, const OperatorJet& y, const LieBackend& backend);
OperatorJet jet_bracket(const OperatorJet& x, const OperatorJet& y);

// Drops the value: (x_1, ..., x_N). Throws ExhaustedJetError at order 0.
OperatorJet jet_shift(const OperatorJet& x);

}  // namespace liereach
