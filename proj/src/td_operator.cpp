#include "liereach/td_operator.hpp"

#include <algorithm>
#include <map>

#include "liereach/errors.hpp"

namespace liereach {

const char* to_string(Backend b) { return b == Backend::matrix ? "matrix" : "structure"; }

TDOperator::TDOperator(Backend backend, int dim) : backend_(backend), dim_(dim) {
  if (dim <= 0) throw DimensionError("operator dimension must be positive");
}

TDOperator TDOperator::constant(const ComplexMatrix& op, Backend backend, std::string label) {
  TDOperator out(backend, static_cast<int>(op.rows()));
  out.add_term(ExpPoly::constant(1.0), op, std::move(label));
  return out;
}

void TDOperator::check_shape(const ComplexMatrix& op) const {
  const Eigen::Index cols = backend_ == Backend::matrix ? dim_ : 1;
  if (op.rows() != dim_ || op.cols() != cols)
    throw DimensionError("operator term has shape " + std::to_string(op.rows()) + "x" +
                         std::to_string(op.cols()) + ", expected " + std::to_string(dim_) +
                         "x" + std::to_string(cols));
}

TDOperator& TDOperator::add_term(ExpPoly coeff, const ComplexMatrix& op, std::string label) {
  check_shape(op);
  if (coeff.is_zero()) return *this;
  terms_.push_back({std::move(coeff), op, std::move(label)});
  return *this;
}

TDOperator& TDOperator::set_signal(std::optional<FormalSignal> signal) {
  signal_ = std::move(signal);
  return *this;
}

bool TDOperator::is_time_independent() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const OperatorTerm& t) { return t.coeff.is_constant(); });
}

bool TDOperator::has_formal() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const OperatorTerm& t) { return t.coeff.has_formal(); });
}

ComplexMatrix TDOperator::operator()(double t) const {
  const Eigen::Index cols = backend_ == Backend::matrix ? dim_ : 1;
  ComplexMatrix out = ComplexMatrix::Zero(dim_, cols);
  const FormalSignal* sig = signal_ ? &*signal_ : nullptr;
  for (const auto& term : terms_) out += term.coeff.evaluate(t, sig) * term.op;
  if (!all_finite(out)) throw RangeError("operator evaluation is not finite");
  return out;
}

TDOperator TDOperator::derivative() const {
  TDOperator out(backend_, dim_);
  out.signal_ = signal_;
  for (const auto& term : terms_) out.add_term(term.coeff.derivative(), term.op, term.label);
  return out;
}

TDOperator TDOperator::canonical(double drop_tol, double scale) const {
  std::map<Monomial, ComplexMatrix> parts;
  const bool own_scale = scale < 0.0;
  if (own_scale) scale = 0.0;
  for (const auto& term : terms_) {
    if (own_scale) scale = std::max(scale, max_abs(term.op));
    for (const auto& et : term.coeff.terms()) {
      auto [it, inserted] = parts.try_emplace(et.mono, et.coeff * term.op);
      if (!inserted) it->second += et.coeff * term.op;
    }
  }
  TDOperator out(backend_, dim_);
  out.signal_ = signal_;
  for (auto& [mono, op] : parts) {
    if (max_abs(op) <= drop_tol * scale) continue;
    out.add_term(ExpPoly::term(1.0, mono.power, mono.rate, mono.formal), op);
  }
  return out;
}

TDOperator& TDOperator::operator+=(const TDOperator& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty() && dim_ == 0) {
    *this = other;
    return *this;
  }
  if (other.backend_ != backend_ || other.dim_ != dim_)
    throw DimensionError("adding operators of different backend or dimension");
  if (!signal_) signal_ = other.signal_;
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

TDOperator& TDOperator::operator*=(Complex s) {
  for (auto& term : terms_) term.coeff *= s;
  std::erase_if(terms_, [](const OperatorTerm& t) { return t.coeff.is_zero(); });
  return *this;
}

EvaluatedOperator evaluate(const TDOperator& op, double t, double skew_tol) {
  EvaluatedOperator out;
  out.value = op(t);
  if (op.backend() == Backend::matrix) {
    out.valid = is_skew_hermitian(out.value, skew_tol);
  } else {
    const double scale = max_abs(out.value);
    out.valid = scale == 0.0 || out.value.imag().cwiseAbs().maxCoeff() <= skew_tol * scale;
  }
  return out;
}

}  // namespace liereach
