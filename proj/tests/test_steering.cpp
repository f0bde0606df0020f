#include <gtest/gtest.h>

#include "liereach/case_studies.hpp"
#include "liereach/errors.hpp"
#include "liereach/steering.hpp"
#include "test_support.hpp"

using namespace liereach;
using namespace liereach::testing;

TEST(Fidelity, Examples) {
  const ComplexVector plus = (ket(2, 0) + ket(2, 1)) / std::sqrt(2.0);
  EXPECT_NEAR(fidelity(plus, plus), 1.0, 1e-15);
  EXPECT_EQ(fidelity(ket(2, 0), ket(2, 1)), 0.0);
  EXPECT_NEAR(fidelity(ket(2, 0), plus), 0.5, 1e-15);
}

TEST(Fidelity, PhaseInvariantWhileOverlapIsNot) {
  const ComplexVector plus = (ket(2, 0) + ket(2, 1)) / std::sqrt(2.0);
  const Complex phase = std::polar(1.0, 0.9);
  EXPECT_NEAR(fidelity(plus, phase * plus), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(overlap(plus, phase * plus) - phase), 0.0, 1e-15);
}

TEST(Fidelity, DimensionMismatch) {
  EXPECT_THROW(fidelity(ket(2, 0), ket(3, 0)), DimensionError);
}

TEST(Steer, TargetEqualToInitialStateOnDriftFreeSystem) {
  SystemSpec sys = qubit_system(1.0, true);
  sys.drift = TDOperator(Backend::matrix, 2);
  const SteeringResult r = steer(sys, sys.initial_state, 1.0, 3, 100, 1);
  EXPECT_EQ(r.fidelity, 1.0);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.evaluations, 1);
  for (const auto& seg : r.schedule.segments)
    for (double u : seg.controls) EXPECT_EQ(u, 0.0);
}

TEST(Steer, QubitFlipWithinBudget) {
  const SystemSpec sys = qubit_system(1.0, true);
  const SteeringResult r = steer(sys, ket(2, 1), M_PI, 8, 10000, 3);
  EXPECT_GE(r.fidelity, 0.999);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.evaluations, 10000);
  EXPECT_LE(r.fidelity, 1.0 + 1e-12);
  const double recomputed = fidelity(ket(2, 1), propagate_endpoint(sys, r.schedule));
  EXPECT_NEAR(recomputed, r.fidelity, 1e-9);
}

TEST(Steer, SingleSegmentCannotReachUnreachableDirection) {
  // A lone diagonal control only changes phases, so |1> stays out of reach.
  SystemSpec sys = qubit_system(1.0, false);
  sys.controls[0] = sys.term("Z", ExpPoly::constant(1.0));
  const SteeringResult r = steer(sys, ket(2, 1), 1.0, 1, 300, 5);
  EXPECT_FALSE(r.converged);
  EXPECT_LT(r.fidelity, 0.999);
}

TEST(Steer, ReproducibleForFixedSeed) {
  const SystemSpec sys = qubit_system(1.0, true);
  const ComplexVector target = (ket(2, 0) - kI * ket(2, 1)) / std::sqrt(2.0);
  const SteeringResult a = steer(sys, target, 1.0, 4, 2000, 11);
  const SteeringResult b = steer(sys, target, 1.0, 4, 2000, 11);
  EXPECT_EQ(a.fidelity, b.fidelity);
  EXPECT_EQ(a.evaluations, b.evaluations);
  ASSERT_EQ(a.schedule.segments.size(), b.schedule.segments.size());
  for (std::size_t i = 0; i < a.schedule.segments.size(); ++i)
    EXPECT_EQ(a.schedule.segments[i].controls, b.schedule.segments[i].controls);
}

TEST(ProductApproximation, Drift2dIsExact) {
  const CaseStudy cs = build_drift2d(0.5, -1.0);
  for (const auto& row : product_convergence(*cs.matrix, cs.word, {1, 10, 100}))
    EXPECT_LE(row.error, 1e-12) << "n = " << row.n;
}

TEST(ProductApproximation, Drift2dClosedFormEndpoints) {
  const double x0 = 0.5, y0 = -1.0;
  const CaseStudy cs = build_drift2d(x0, y0);
  const ComplexVector end = propagate_endpoint(*cs.matrix, auxiliary_schedule(*cs.matrix, cs.word));
  EXPECT_NEAR(end(0).real(), x0 + 2.0, 1e-12);
  EXPECT_NEAR(end(1).real(), y0 + 0.7 - 0.4, 1e-12);

  ControlSchedule drift_only;
  drift_only.segments = {{2.0, {0.0}, 1.0}};
  const ComplexVector still = propagate_endpoint(*cs.matrix, drift_only);
  EXPECT_NEAR(still(0).real(), x0 + 2.0, 1e-12);
  EXPECT_NEAR(still(1).real(), y0, 1e-12);
}

TEST(ProductApproximation, CommutingGeneratorsAreExact) {
  SystemSpec sys = qubit_system(1.0, false);
  sys.controls[0] = sys.term("Z", ExpPoly::constant(0.7));
  const std::vector<WordArc> word{WordArc::pulse(0, 1.0, 0.4), WordArc::drift(0.3),
                                  WordArc::pulse(0, -2.0, 0.2), WordArc::drift(1.0)};
  for (const auto& row : product_convergence(sys, word, {1, 4, 16})) EXPECT_LE(row.error, 1e-12);
}

TEST(ProductApproximation, QubitErrorHalvesWithN) {
  const SystemSpec sys = qubit_system(1.0, false);
  const std::vector<WordArc> word{WordArc::drift(0.3), WordArc::pulse(0, 0.8, 0.5), WordArc::drift(1.2)};
  const auto rows = product_convergence(sys, word, {8, 16, 32, 64, 128});
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double ratio = rows[i + 1].error / rows[i].error;
    EXPECT_GE(ratio, 0.3);
    EXPECT_LE(ratio, 0.7);
    EXPECT_LE(rows[i + 1].error, rows[i].error + 1e-10);
  }
}

TEST(ProductApproximation, InfeasibleWords) {
  const SystemSpec sys = qubit_system();
  const std::vector<WordArc> short_drift{WordArc::pulse(0, 1.0, 2.0), WordArc::drift(0.5)};
  EXPECT_THROW(product_convergence(sys, short_drift, {1}), InfeasibleWordError);
  EXPECT_NO_THROW(product_convergence(sys, short_drift, {4}));
  const std::vector<WordArc> no_drift{WordArc::pulse(0, 1.0, 0.5)};
  EXPECT_THROW(product_convergence(sys, no_drift, {4}), InfeasibleWordError);
}

TEST(ProductApproximation, ApproximantCompensatesFinalDrift) {
  const SystemSpec sys = qubit_system();
  const std::vector<WordArc> word{WordArc::pulse(0, 0.5, 0.6), WordArc::drift(1.0)};
  const ControlSchedule s = approximant_schedule(sys, word, 3);
  ASSERT_EQ(s.segments.size(), 2u);
  EXPECT_NEAR(s.segments[0].duration, 0.2, 1e-15);
  EXPECT_NEAR(s.segments[0].controls[0], 1.5, 1e-15);
  EXPECT_EQ(s.segments[0].drift_scale, 1.0);
  EXPECT_NEAR(s.segments[1].duration, 0.8, 1e-15);
}

TEST(Rescaling, AmplitudeTimeTradeOnDriftFreeSystem) {
  SystemSpec sys = qubit_system(1.0, false);
  sys.drift = TDOperator(Backend::matrix, 2);
  for (int n : {2, 7, 30}) {
    ControlSchedule fast, slow;
    fast.segments = {{0.25, {n * -0.9}, 1.0}};
    slow.segments = {{n * 0.25, {-0.9}, 1.0}};
    EXPECT_LE((propagate_endpoint(sys, fast) - propagate_endpoint(sys, slow)).norm(), 1e-10);
  }
}
