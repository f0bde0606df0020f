// system.hpp - bilinear control systems  dpsi/dt = [H0(t) + sum_l u_l H_l(t)] psi
// and their time-augmented reformulation xi = (t + t0, psi).

#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liereach/exppoly.hpp"
#include "liereach/lie_backend.hpp"
#include "liereach/td_operator.hpp"

namespace liereach {

struct NamedMatrix {
  std::string name;
  ComplexMatrix matrix;
};

struct SystemSpec {
  std::string name;
  Backend backend = Backend::matrix;
  // Matrix size (matrix backend) or algebra dimension (structure backend).
  int dim = 0;
  // Matrix backend: the named constant matrices operator terms refer to.
  std::vector<NamedMatrix> basis;
  // Structure backend: the abstract algebra.
  std::optional<LieAlgebraSpec> algebra;

  TDOperator drift;
  std::vector<TDOperator> controls;

  // Unit vector; empty for the structure backend.
  ComplexVector initial_state;
  double t0 = 0.0;
  std::vector<double> sample_times;
  std::optional<int> orbit_dim;
  std::optional<FormalSignal> formal_signal;
  // Admits operators that are not skew-Hermitian (non-unitary realizations).
  bool allow_non_skew = false;
  // Leading levels used for rank tests of truncated representations; 0 = all.
  int interior_dim = 0;

  int num_controls() const { return static_cast<int>(controls.size()); }
  bool time_independent() const;

  // Single-term operator  coeff * basis[name].
  TDOperator term(const std::string& basis_name, const ExpPoly& coeff) const;
  const ComplexMatrix& basis_matrix(const std::string& name) const;

  std::unique_ptr<LieBackend> make_backend() const;

  // H0(t) * drift_scale + sum_l u_l H_l(t).
  ComplexMatrix generator(double t, std::span<const double> controls_u,
                          double drift_scale = 1.0) const;

  // Checks the structural invariants; throws InputError naming the offending key.
  void validate(double skew_tol = kSkewTol) const;
};

struct AugmentedState {
  double time = 0.0;
  ComplexVector psi;
};

// Time-independent reformulation on N = R x M with fields
//   W0(xi) = (1, H0(s) psi),  W_l(xi) = (0, H_l(s) psi),  s = first component.
class AugmentedSystem {
 public:
  explicit AugmentedSystem(SystemSpec base);

  const SystemSpec& base() const { return base_; }
  // eta = (t0, psi0)
  AugmentedState initial() const { return {base_.t0, base_.initial_state}; }

  AugmentedState drift_field(const AugmentedState& xi) const;
  AugmentedState control_field(int l, const AugmentedState& xi) const;

  // u0 * W0 + sum_l u_l W_l at xi.
  AugmentedState field(const AugmentedState& xi, std::span<const double> u, double u0 = 1.0) const;

  static const ComplexVector& project(const AugmentedState& xi) { return xi.psi; }

 private:
  SystemSpec base_;
};

// Throws PreconditionError for the structure backend.
AugmentedSystem augment(const SystemSpec& sys);

}  // namespace liereach
