#include "liereach/closure.hpp"

#include <algorithm>

#include "liereach/errors.hpp"

namespace liereach {

const char* to_string(AlgebraRole role) {
  switch (role) {
    case AlgebraRole::A: return "A";
    case AlgebraRole::B: return "B";
    case AlgebraRole::C: return "C";
    case AlgebraRole::Ahat: return "A_hat";
    case AlgebraRole::Bhat: return "B_hat";
    case AlgebraRole::Chat: return "C_hat";
  }
  return "?";
}

LieElement make_element(const TDOperator& op, double t0, int order, std::string word) {
  return LieElement{jet_of(op, t0, order), op.canonical(), std::move(word), 1};
}

LieElement element_bracket(const LieElement& a, const LieElement& b, const LieBackend& backend) {
  LieElement out;
  out.jet = jet_bracket(a.jet, b.jet, backend);
  if (a.symbolic && b.symbolic) out.symbolic = bracket(*a.symbolic, *b.symbolic, backend);
  out.word = "[" + a.word + "," + b.word + "]";
  out.depth = a.depth + b.depth;
  return out;
}

std::vector<std::string> ClosureBasis::words() const {
  std::vector<std::string> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(e.word);
  return out;
}

RealMatrix realified_columns(const ClosureBasis& basis, const LieBackend& backend) {
  if (basis.elements.empty()) return {};
  const RealVector first = backend.realify(basis.elements.front().jet.value());
  RealMatrix cols(first.size(), basis.size());
  for (int j = 0; j < basis.size(); ++j) {
    RealVector v = backend.realify(basis.elements[static_cast<std::size_t>(j)].jet.value());
    const double n = v.norm();
    cols.col(j) = n > 0.0 ? RealVector(v / n) : v;
  }
  return cols;
}

namespace {

class Admitter {
 public:
  Admitter(ClosureBasis& basis, const LieBackend& backend, const ClosureOptions& options)
      : basis_(basis), backend_(backend), options_(options) {
    const int ambient = backend.ambient_real_dim();
    cap_ = options.max_dim > 0 ? std::min(options.max_dim, ambient) : ambient;
    capped_below_ambient_ = options.max_dim > 0 && options.max_dim < ambient;
    columns_ = realified_columns(basis, backend);
  }

  bool full() const { return basis_.size() >= cap_; }

  // Adds the element iff it raises the realified rank.
  bool offer(LieElement element) {
    const RealVector v = backend_.realify(element.jet.value());
    const double n = v.norm();
    if (n == 0.0) return false;
    RealMatrix trial(v.size(), columns_.cols() + 1);
    if (columns_.cols() > 0) trial.leftCols(columns_.cols()) = columns_;
    trial.col(columns_.cols()) = v / n;
    if (numeric_rank(trial, options_.tol) <= basis_.size()) return false;
    if (element.depth > options_.max_depth || full()) {
      basis_.truncated = true;
      return false;
    }
    columns_ = std::move(trial);
    basis_.elements.push_back(std::move(element));
    if (full() && capped_below_ambient_) basis_.truncated = true;
    return true;
  }

 private:
  ClosureBasis& basis_;
  const LieBackend& backend_;
  const ClosureOptions& options_;
  RealMatrix columns_;
  int cap_ = 0;
  bool capped_below_ambient_ = false;
};

// Brackets every pair with at least one element at index >= frontier, sweep by
// sweep, until a sweep admits nothing or the cap is reached.
void close_from(ClosureBasis& basis, Admitter& admit, int frontier, const LieBackend& backend) {
  while (frontier < basis.size() && !admit.full()) {
    const int n = basis.size();
    for (int j = frontier; j < n && !admit.full(); ++j)
      for (int i = 0; i < j && !admit.full(); ++i)
        admit.offer(element_bracket(basis.elements[static_cast<std::size_t>(i)],
                                    basis.elements[static_cast<std::size_t>(j)], backend));
    frontier = n;
  }
}

}  // namespace

void extend_closure(ClosureBasis& basis, const std::vector<LieElement>& generators,
                    const LieBackend& backend, const ClosureOptions& options) {
  Admitter admit(basis, backend, options);
  const int frontier = basis.size();
  for (const auto& g : generators) {
    if (admit.full()) break;
    admit.offer(g);
  }
  close_from(basis, admit, frontier, backend);
}

ClosureBasis closure(const std::vector<LieElement>& generators, const LieBackend& backend,
                     const ClosureOptions& options, AlgebraRole role) {
  if (options.max_depth < 1) throw PreconditionError("closure max_depth must be at least 1");
  for (const auto& g : generators) {
    if (g.jet.coeffs.empty()) throw DimensionError("generator without a jet");
    if (g.jet.value().rows() != generators.front().jet.value().rows() ||
        g.jet.value().cols() != generators.front().jet.value().cols())
      throw DimensionError("closure generators have different shapes");
    if ((backend.kind() == Backend::structure) != (g.jet.value().cols() == 1))
      throw DimensionError("generator does not match the backend");
  }
  ClosureBasis basis;
  basis.role = role;
  extend_closure(basis, generators, backend, options);
  return basis;
}

double membership(const ComplexMatrix& x, const ClosureBasis& basis, const LieBackend& backend) {
  return projection_residual(realified_columns(basis, backend), backend.realify(x));
}

ClosureBasis structure_closure(const LieAlgebraSpec& algebra,
                               const std::vector<Eigen::VectorXcd>& generators, double tol) {
  StructureBackend backend(algebra);
  std::vector<LieElement> elements;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (generators[g].size() != algebra.dim())
      throw DimensionError("generator length differs from the algebra dimension");
    std::string word = "g" + std::to_string(g);
    for (int i = 0; i < algebra.dim(); ++i)
      if (generators[g] == algebra.unit(i)) word = algebra.names()[static_cast<std::size_t>(i)];
    const ComplexMatrix op = generators[g];
    elements.push_back(make_element(TDOperator::constant(op, Backend::structure), 0.0, 0, word));
  }
  ClosureOptions options;
  options.tol = tol;
  return closure(elements, backend, options, AlgebraRole::B);
}

CGeneration generate_C(const TDOperator& drift, const ClosureBasis& b_basis, double t0,
                       int max_generations, const LieBackend& backend,
                       const ClosureOptions& options, bool time_independent) {
  CGeneration out;
  out.basis = b_basis;
  out.basis.role = AlgebraRole::C;
  if (b_basis.elements.empty()) {
    out.stabilized = true;
    return out;
  }

  int order = 0;
  for (const auto& e : b_basis.elements) order = std::max(order, e.jet.order());
  const bool has_drift = !drift.is_zero();
  const OperatorJet drift_jet =
      has_drift ? jet_of(drift, t0, time_independent ? 0 : order) : OperatorJet{};

  std::vector<LieElement> current = b_basis.elements;
  for (int n = 1; n <= max_generations; ++n) {
    std::vector<LieElement> next;
    next.reserve(current.size());
    for (const auto& e : current) {
      LieElement img;
      img.depth = e.depth + 1;
      img.word = "D(" + e.word + ")";
      if (time_independent) {
        ComplexMatrix v = ComplexMatrix::Zero(e.jet.value().rows(), e.jet.value().cols());
        if (has_drift) v = -backend.bracket(drift_jet.value(), e.jet.value());
        img.jet = constant_jet(v, t0, 0);
        if (e.symbolic && has_drift)
          img.symbolic = bracket(drift, *e.symbolic, backend) * Complex{-1.0, 0.0};
        else if (e.symbolic)
          img.symbolic = TDOperator(e.symbolic->backend(), e.symbolic->dim());
      } else {
        if (e.jet.order() < 1) {
          out.jet_exhausted = true;
          break;
        }
        img.jet = jet_shift(e.jet);
        if (has_drift) img.jet += -jet_bracket(drift_jet, e.jet, backend);
        if (e.symbolic) {
          TDOperator sym = e.symbolic->derivative();
          if (has_drift) sym = sym - bracket(drift, *e.symbolic, backend);
          img.symbolic = sym.canonical();
        }
      }
      next.push_back(std::move(img));
    }
    if (out.jet_exhausted) break;

    const int before = out.basis.size();
    extend_closure(out.basis, next, backend, options);
    out.generations = n;
    if (out.basis.size() == before) {
      out.stabilized = true;
      break;
    }
    current = std::move(next);
  }
  return out;
}

}  // namespace liereach
