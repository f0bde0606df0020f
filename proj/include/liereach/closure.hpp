// closure.hpp - Lie-bracket closures, membership tests and the C-algebra recursion.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liereach/jet.hpp"
#include "liereach/lie_backend.hpp"
#include "liereach/td_operator.hpp"

namespace liereach {

enum class AlgebraRole { A, B, C, Ahat, Bhat, Chat };

const char* to_string(AlgebraRole role);

// One basis element: its jet at the anchor, its symbolic form when it was
// derived from exp-poly operators, and the bracket word that produced it.
struct LieElement {
  OperatorJet jet;
  std::optional<TDOperator> symbolic;
  std::string word;
  int depth = 1;
};

LieElement make_element(const TDOperator& op, double t0, int order, std::string word);
LieElement element_bracket(const LieElement& a, const LieElement& b, const LieBackend& backend);

struct ClosureOptions {
  double tol = kRankTol;
  // 0 means the backend's ambient real dimension.
  int max_dim = 0;
  // Longest bracket word (in generator letters) that may be admitted.
  int max_depth = 12;
};

struct ClosureBasis {
  AlgebraRole role = AlgebraRole::B;
  std::vector<LieElement> elements;
  bool truncated = false;

  int size() const { return static_cast<int>(elements.size()); }
  std::vector<std::string> words() const;
};

// Smallest real Lie algebra containing the generators, built by admitting
// brackets that raise the realified rank of the order-0 values.
ClosureBasis closure(const std::vector<LieElement>& generators, const LieBackend& backend,
                     const ClosureOptions& options = {}, AlgebraRole role = AlgebraRole::B);

// Adds generators to an existing closure and re-closes it.
void extend_closure(ClosureBasis& basis, const std::vector<LieElement>& generators,
                    const LieBackend& backend, const ClosureOptions& options);

// Normalized least-squares residual of x against the real span of the basis values.
double membership(const ComplexMatrix& x, const ClosureBasis& basis, const LieBackend& backend);

// Realified columns of the basis values, each normalized to unit length.
RealMatrix realified_columns(const ClosureBasis& basis, const LieBackend& backend);

ClosureBasis structure_closure(const LieAlgebraSpec& algebra,
                               const std::vector<Eigen::VectorXcd>& generators,
                               double tol = kRankTol);

struct CGeneration {
  ClosureBasis basis;
  // Generations whose images were computed.
  int generations = 0;
  bool stabilized = false;
  bool jet_exhausted = false;
};

// C = L{B, B_1, B_2, ...} with B_n = -[H0, B_{n-1}] + d/dt B_{n-1}, computed on
// jets anchored at t0. In time-independent mode the derivative term is dropped
// and only jet values are used.
CGeneration generate_C(const TDOperator& drift, const ClosureBasis& b_basis, double t0,
                       int max_generations, const LieBackend& backend,
                       const ClosureOptions& options = {}, bool time_independent = false);

}  // namespace liereach
