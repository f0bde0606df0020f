#include "liereach/jet.hpp"

#include <algorithm>

#include "liereach/errors.hpp"

namespace liereach {

namespace {

void check_compatible(const OperatorJet& x, const OperatorJet& y) {
  if (x.coeffs.empty() || y.coeffs.empty()) throw DimensionError("empty jet");
  if (x.anchor != y.anchor) throw DimensionError("jets anchored at different times");
  if (x.value().rows() != y.value().rows() || x.value().cols() != y.value().cols())
    throw DimensionError("jets of different dimension");
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

ComplexMatrix bracket_with(const ComplexMatrix& a, const ComplexMatrix& b,
                           const LieBackend* backend) {
  return backend ? backend->bracket(a, b) : commutator(a, b);
}

OperatorJet bracket_impl(const OperatorJet& x, const OperatorJet& y, const LieBackend* backend) {
  check_compatible(x, y);
  const int order = std::min(x.order(), y.order());
  OperatorJet out;
  out.anchor = x.anchor;
  out.coeffs.reserve(static_cast<std::size_t>(order) + 1);
  // Terms j and k-j are added pairwise so that swapping x and y negates every
  // coefficient exactly.
  for (int k = 0; k <= order; ++k) {
    ComplexMatrix acc = ComplexMatrix::Zero(x.value().rows(), x.value().cols());
    for (int j = 0; 2 * j <= k; ++j) {
      const double binom = binomial(k, j);
      const auto lo = static_cast<std::size_t>(j);
      const auto hi = static_cast<std::size_t>(k - j);
      if (lo == hi) {
        acc += binom * bracket_with(x.coeffs[lo], y.coeffs[hi], backend);
      } else {
        acc += binom * (bracket_with(x.coeffs[lo], y.coeffs[hi], backend) +
                        bracket_with(x.coeffs[hi], y.coeffs[lo], backend));
      }
    }
    out.coeffs.push_back(std::move(acc));
  }
  return out;
}

}  // namespace

OperatorJet OperatorJet::operator-() const {
  OperatorJet out = *this;
  for (auto& c : out.coeffs) c = -c;
  return out;
}

OperatorJet& OperatorJet::operator+=(const OperatorJet& other) {
  check_compatible(*this, other);
  const auto n = std::min(coeffs.size(), other.coeffs.size());
  coeffs.resize(n);
  for (std::size_t k = 0; k < n; ++k) coeffs[k] += other.coeffs[k];
  return *this;
}

OperatorJet constant_jet(const ComplexMatrix& x, double anchor, int order) {
  if (order < 0) throw PreconditionError("jet order must be non-negative");
  OperatorJet out;
  out.anchor = anchor;
  out.coeffs.assign(static_cast<std::size_t>(order) + 1, ComplexMatrix::Zero(x.rows(), x.cols()));
  out.coeffs.front() = x;
  return out;
}

OperatorJet jet_of(const TDOperator& op, double t0, int order) {
  if (order < 0) throw PreconditionError("jet order must be non-negative");
  if (op.dim() <= 0) throw DimensionError("jet of an operator without shape");
  OperatorJet out;
  out.anchor = t0;
  TDOperator current = op;
  for (int k = 0; k <= order; ++k) {
    out.coeffs.push_back(current(t0));
    if (k < order) current = current.derivative();
  }
  return out;
}

OperatorJet jet_bracket(const OperatorJet& x, const OperatorJet& y, const LieBackend& backend) {
  return bracket_impl(x, y, &backend);
}

OperatorJet jet_bracket(const OperatorJet& x, const OperatorJet& y) {
  return bracket_impl(x, y, nullptr);
}

OperatorJet jet_shift(const OperatorJet& x) {
  if (x.order() < 1)
    throw ExhaustedJetError("jet of order 0 has no derivative left; increase the jet order");
  OperatorJet out;
  out.anchor = x.anchor;
  out.coeffs.assign(x.coeffs.begin() + 1, x.coeffs.end());
  return out;
}

}  // namespace liereach
