// case_studies.hpp - bundled systems with their expected analysis results.
//
//   example1  degenerate parametric oscillator on su(1,1) (ladder truncation
//             and exact structure constants)
//   example2  nine-dimensional algebra generated by L1, L2, L3, P1, J
//   example3  position-dependent effective mass with time-dependent A(t)
//   drift2d   planar affine system (x' = u0, y' = u) in homogeneous coordinates

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "liereach/controllability.hpp"
#include "liereach/steering.hpp"

namespace liereach {

struct ExpectedReport {
  int dim_B = 0;
  int dim_C = 0;
  int dim_A = 0;
  int m = 0;
  Verdict verdict = Verdict::strongly_controllable;
};

struct CaseStudy {
  std::string name;
  std::optional<SystemSpec> matrix;
  std::optional<SystemSpec> structure;
  std::optional<ExpectedReport> expected;
  // Auxiliary word for the product-approximation demonstration.
  std::vector<WordArc> word;
  std::vector<std::string> notes;
};

// Ladder representation of su(1,1) truncated to `cutoff` levels:
// K0 = diag(k + m), K+|m> = sqrt((m+1)(m+2k)) |m+1>, K- = K+^dagger.
struct LadderOperators {
  ComplexMatrix k0;
  ComplexMatrix kp;
  ComplexMatrix km;
};
LadderOperators su11_ladder(int cutoff, double k);

// su(1,1) in the basis E0 = -iK0, E1 = -(i/2)(K+ + K-), E2 = (1/2)(K+ - K-):
// [E0,E1] = -E2, [E0,E2] = E1, [E1,E2] = E0.
LieAlgebraSpec su11_algebra();

// L1 L2 L3 P1 P2 B1 B2 J E.
LieAlgebraSpec example2_algebra();

// I0, X = -i I0 I-, Id with [I0, X] = -X and Id central.
LieAlgebraSpec example3_algebra();

CaseStudy build_example1(int cutoff = 12, double k = 0.25, double omega = 1.0);
CaseStudy build_example2();
using AmplitudeFamily = std::variant<ExpPoly, FormalSignal>;
CaseStudy build_example3(double b_const = 1.0, double c_const = 1.0,
                         const AmplitudeFamily& family = FormalSignal{});
CaseStudy build_drift2d(double x0 = 0.0, double y0 = 0.0);

// Qubit with drift -i(omega/2) sigma_z and controls -i sigma_x (and -i sigma_y
// when both_controls is set); psi0 = |0>.
SystemSpec qubit_system(double omega = 1.0, bool both_controls = false);

const std::vector<std::string>& case_study_names();
// Throws InputError for unknown names.
CaseStudy build_case(const std::string& name);

}  // namespace liereach
