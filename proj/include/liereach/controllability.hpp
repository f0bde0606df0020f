// controllability.hpp - sufficient strong-controllability checks and their reports.
//
// Per sample time t the checker builds
//   B(t) = L{H_1..H_r},  C = L{B, B_1, B_2, ...},  A(t) = L{H_0..H_r}
// and tests  dim C(t)psi = m  and  [B, C](t) subset B(t). Failing either
// condition gives conditionFailed, never a negative controllability claim.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liereach/closure.hpp"
#include "liereach/system.hpp"

namespace liereach {

enum class Verdict { strongly_controllable, condition_failed, inconclusive };
enum class CheckKind { full, time_invariant, b_full };
enum class VerificationMode { symbolic, sampled };

const char* to_string(Verdict v);
const char* to_string(CheckKind k);
const char* to_string(VerificationMode m);

struct AnalysisOptions {
  int jet_order = 8;
  int max_generations = 8;
  double tol = kRankTol;
  int max_depth = 12;
  // 0 means the backend's ambient dimension.
  int max_dim = 0;

  ClosureOptions closure_options() const { return {tol, max_dim, max_depth}; }
};

struct IdealPair {
  std::string b;
  std::string c;
  double residual = 0.0;
};

struct SampleReport {
  double time = 0.0;
  int dim_B = 0;
  std::optional<int> dim_C;
  int dim_A = 0;
  int orbit_B = 0;
  std::optional<int> orbit_C;
  int orbit_A = 0;
  double ideal_residual_max = 0.0;
  std::vector<IdealPair> ideal_pairs;
  int generations = 0;
  bool stabilized = true;
  std::vector<std::string> words_B;
  std::vector<std::string> words_C;
  std::vector<std::string> words_A;
};

struct ControllabilityReport {
  std::string system;
  CheckKind check = CheckKind::full;
  Verdict verdict = Verdict::inconclusive;
  int m = 0;
  bool m_declared = false;
  // "state": orbit dimensions at psi0; "algebra": no state, orbit = algebra.
  std::string orbit_mode = "state";
  VerificationMode mode = VerificationMode::sampled;
  // jet-exhausted, closure-truncated, generations-exhausted (force inconclusive);
  // hierarchy-violated (informational).
  std::vector<std::string> flags;
  std::vector<SampleReport> samples;
  AnalysisOptions options;

  bool has_flag(const std::string& f) const;
};

ControllabilityReport check_sufficient_conditions(const SystemSpec& sys, const AnalysisOptions& options = {});

// Constant operators only; B_n reduce to ad-chains of H0 and no jets are used.
ControllabilityReport check_time_invariant(const SystemSpec& sys,
                                                     const AnalysisOptions& options = {});

// Verdict from dim B(t)psi = m alone.
ControllabilityReport check_b_full(const SystemSpec& sys,
                                             const AnalysisOptions& options = {});

// Realified rank of {X psi : X in basis} using order-0 values. For a matrix
// backend with an interior block the vectors are restricted to it.
int orbit_dimension(const ClosureBasis& basis, const ComplexVector& psi, const LieBackend& backend,
                    double tol = kRankTol);
int orbit_dimension(const ClosureBasis& basis, const ComplexVector& psi, double tol = kRankTol);

// Augmented vector field (a, A(s) psi) on R x M, carried as a jet of A in s.
struct AugmentedField {
  double a = 0.0;
  OperatorJet jet;
};

// [X, Y] = (0, (a B' - b A' - [A, B]) psi) as a jet one order shorter when a
// or b is nonzero.
AugmentedField field_bracket(const AugmentedField& x, const AugmentedField& y);

// Rank of the second components of C_hat = L{B_hat, [W0, B_hat], ...} applied
// to psi at the anchor, with B_hat = L{W_1..W_r}; computed purely from
// augmented-field brackets.
int augmented_C_orbit_rank(const SystemSpec& sys, double anchor, const ComplexVector& psi,
                           const AnalysisOptions& options = {});

}  // namespace liereach
