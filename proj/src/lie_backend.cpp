#include "liereach/lie_backend.hpp"

#include <algorithm>
#include <cmath>

#include "liereach/errors.hpp"

namespace liereach {

LieAlgebraSpec::LieAlgebraSpec(std::vector<std::string> names)
    : names_(std::move(names)),
      constants_(names_.size() * names_.size() * names_.size(), 0.0) {
  if (names_.empty()) throw DimensionError("Lie algebra must have a positive dimension");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw InputError("names", "duplicate basis label " + names_[i]);
}

int LieAlgebraSpec::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InputError("", "unknown basis element '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

void LieAlgebraSpec::set_bracket(int i, int j, const std::vector<std::pair<int, double>>& result) {
  for (int k = 0; k < dim(); ++k) {
    set_constant(i, j, k, 0.0);
    set_constant(j, i, k, 0.0);
  }
  for (auto [k, value] : result) {
    set_constant(i, j, k, c(i, j, k) + value);
    set_constant(j, i, k, -c(i, j, k));
  }
}

void LieAlgebraSpec::set_bracket(const std::string& a, const std::string& b,
                                 const std::vector<std::pair<std::string, double>>& result) {
  std::vector<std::pair<int, double>> indexed;
  indexed.reserve(result.size());
  for (const auto& [name, value] : result) indexed.emplace_back(index_of(name), value);
  set_bracket(index_of(a), index_of(b), indexed);
}

Eigen::VectorXcd LieAlgebraSpec::unit(int i) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim());
  v(i) = 1.0;
  return v;
}

Eigen::VectorXcd LieAlgebraSpec::bracket(const Eigen::VectorXcd& u,
                                         const Eigen::VectorXcd& v) const {
  const int d = dim();
  if (u.size() != d || v.size() != d) throw DimensionError("coefficient vector length mismatch");
  // Pairs i < j with the antisymmetrized product, so swapping u and v negates
  // the result exactly. Constants are antisymmetric by construction or validation.
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const Complex w = u(i) * v(j) - u(j) * v(i);
      if (w == Complex{}) continue;
      for (int k = 0; k < d; ++k) {
        const double ck = c(i, j, k);
        if (ck != 0.0) out(k) += w * ck;
      }
    }
  }
  return out;
}

double LieAlgebraSpec::antisymmetry_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k) worst = std::max(worst, std::abs(c(i, j, k) + c(j, i, k)));
  return worst;
}

double LieAlgebraSpec::jacobi_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k) {
        const auto ei = unit(i), ej = unit(j), ek = unit(k);
        const Eigen::VectorXcd r = bracket(ei, bracket(ej, ek)) + bracket(ej, bracket(ek, ei)) +
                                   bracket(ek, bracket(ei, ej));
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
      }
  return worst;
}

MatrixBackend::MatrixBackend(int dim, int interior)
    : dim_(dim), interior_(interior > 0 ? std::min(interior, dim) : dim) {
  if (dim <= 0) throw DimensionError("matrix backend dimension must be positive");
}

RealVector MatrixBackend::realify(const ComplexMatrix& a) const {
  if (interior_ == dim_) return liereach::realify(a);
  return liereach::realify(a.topLeftCorner(interior_, interior_));
}

ComplexVector MatrixBackend::complexify(const ComplexMatrix& a) const {
  const ComplexMatrix block = a.topLeftCorner(interior_, interior_);
  return Eigen::Map<const ComplexVector>(block.data(), block.size());
}

ComplexMatrix StructureBackend::bracket(const ComplexMatrix& a, const ComplexMatrix& b) const {
  return algebra_.bracket(a.col(0), b.col(0));
}

bool StructureBackend::in_real_form(const ComplexMatrix& a, double tol) const {
  const double scale = max_abs(a);
  return scale == 0.0 || a.imag().cwiseAbs().maxCoeff() <= tol * scale;
}

TDOperator bracket(const TDOperator& a, const TDOperator& b, const LieBackend& backend) {
  if (a.is_zero() || b.is_zero()) {
    const TDOperator& shape = a.dim() > 0 ? a : b;
    TDOperator zero(shape.backend(), shape.dim() > 0 ? shape.dim() : 1);
    return zero;
  }
  if (a.dim() != b.dim() || a.backend() != b.backend())
    throw DimensionError("bracket of operators with different shapes");
  TDOperator out(a.backend(), a.dim());
  out.set_signal(a.signal() ? a.signal() : b.signal());
  double scale = 0.0;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      out.add_term(x.coeff * y.coeff, backend.bracket(x.op, y.op));
      scale = std::max(scale, max_abs(x.op) * max_abs(y.op));
    }
  return out.canonical(1e-13, scale);
}

}  // namespace liereach
