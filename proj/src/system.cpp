#include "liereach/system.hpp"

#include <algorithm>
#include <cmath>

#include "liereach/errors.hpp"

namespace liereach {

bool SystemSpec::time_independent() const {
  return drift.is_time_independent() &&
         std::all_of(controls.begin(), controls.end(),
                     [](const TDOperator& op) { return op.is_time_independent(); });
}

const ComplexMatrix& SystemSpec::basis_matrix(const std::string& name) const {
  for (const auto& b : basis)
    if (b.name == name) return b.matrix;
  throw InputError("basis", "unknown operator '" + name + "'");
}

TDOperator SystemSpec::term(const std::string& basis_name, const ExpPoly& coeff) const {
  TDOperator out(backend, dim);
  if (backend == Backend::matrix) {
    out.add_term(coeff, basis_matrix(basis_name), basis_name);
  } else {
    if (!algebra) throw PreconditionError("structure system without an algebra");
    out.add_term(coeff, algebra->unit(basis_name), basis_name);
  }
  out.set_signal(formal_signal);
  return out;
}

std::unique_ptr<LieBackend> SystemSpec::make_backend() const {
  if (backend == Backend::matrix) return std::make_unique<MatrixBackend>(dim, interior_dim);
  if (!algebra) throw PreconditionError("structure system without an algebra");
  return std::make_unique<StructureBackend>(*algebra);
}

ComplexMatrix SystemSpec::generator(double t, std::span<const double> controls_u,
                                    double drift_scale) const {
  if (static_cast<int>(controls_u.size()) != num_controls())
    throw DimensionError("expected " + std::to_string(num_controls()) + " control amplitudes");
  const Eigen::Index cols = backend == Backend::matrix ? dim : 1;
  ComplexMatrix h = ComplexMatrix::Zero(dim, cols);
  if (drift_scale != 0.0 && !drift.is_zero()) h += drift_scale * drift(t);
  for (std::size_t l = 0; l < controls.size(); ++l)
    if (controls_u[l] != 0.0) h += controls_u[l] * controls[l](t);
  return h;
}

void SystemSpec::validate(double skew_tol) const {
  if (dim <= 0) throw InputError("dimension", "must be positive");
  if (controls.empty()) throw InputError("controls", "at least one control operator is required");
  if (backend == Backend::structure) {
    if (!algebra) throw InputError("structure_constants", "missing for the structure backend");
    if (algebra->dim() != dim) throw InputError("dimension", "differs from the algebra dimension");
    if (algebra->antisymmetry_residual() > 1e-12)
      throw InputError("structure_constants", "not antisymmetric in the first two indices");
  }

  auto labels = [](const TDOperator& op) {
    std::string out;
    for (const auto& term : op.terms())
      if (!term.label.empty() && out.find(term.label) == std::string::npos)
        out += (out.empty() ? "" : ", ") + term.label;
    return out.empty() ? out : " (" + out + ")";
  };
  auto check_operator = [&](const TDOperator& op, const std::string& path) {
    if (op.dim() != dim || op.backend() != backend)
      throw InputError(path, "operator shape or backend differs from the system");
    if (op.is_zero()) return;
    std::vector<double> times = sample_times;
    times.push_back(t0);
    for (double t : times) {
      EvaluatedOperator ev;
      try {
        ev = evaluate(op, t, skew_tol);
      } catch (const Error& e) {
        throw InputError(path, e.what());
      }
      if (!ev.valid && !(backend == Backend::matrix && allow_non_skew))
        throw InputError(path + labels(op), backend == Backend::matrix
                                   ? "operator is not skew-Hermitian at t = " + std::to_string(t)
                                   : "operator has complex coefficients at t = " +
                                         std::to_string(t));
    }
  };
  check_operator(drift, "drift");
  for (std::size_t l = 0; l < controls.size(); ++l)
    check_operator(controls[l], "controls[" + std::to_string(l) + "]");

  if (backend == Backend::matrix) {
    if (initial_state.size() != dim)
      throw InputError("initial_state", "length differs from the dimension");
    // Non-unitary realizations carry affine or unnormalized states.
    if (!allow_non_skew && std::abs(initial_state.norm() - 1.0) > 1e-12)
      throw InputError("initial_state", "not a unit vector");
  }
  if (orbit_dim && *orbit_dim < 0) throw InputError("orbit_dim", "must be non-negative");
  if (interior_dim < 0 || interior_dim > dim)
    throw InputError("interior_dim", "must lie in [0, dimension]");
}

AugmentedSystem::AugmentedSystem(SystemSpec base) : base_(std::move(base)) {
  if (base_.backend != Backend::matrix)
    throw PreconditionError("augmentation needs a concrete state (matrix backend)");
}

AugmentedState AugmentedSystem::drift_field(const AugmentedState& xi) const {
  const ComplexVector v = base_.drift.is_zero() ? ComplexVector::Zero(xi.psi.size())
                                                : ComplexVector(base_.drift(xi.time) * xi.psi);
  return {1.0, v};
}

AugmentedState AugmentedSystem::control_field(int l, const AugmentedState& xi) const {
  if (l < 0 || l >= base_.num_controls()) throw DimensionError("control index out of range");
  return {0.0, base_.controls[static_cast<std::size_t>(l)](xi.time) * xi.psi};
}

AugmentedState AugmentedSystem::field(const AugmentedState& xi, std::span<const double> u,
                                      double u0) const {
  return {u0, base_.generator(xi.time, u, u0) * xi.psi};
}

AugmentedSystem augment(const SystemSpec& sys) { return AugmentedSystem(sys); }

}  // namespace liereach
