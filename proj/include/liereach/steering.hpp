// steering.hpp - numerical witnesses: state steering with piecewise-constant
// controls, and the drift-absorbing product approximation of control arcs.

#pragma once

#include <cstdint>
#include <vector>

#include "liereach/propagator.hpp"

namespace liereach {

// |<a, b>|^2; throws DimensionError on a size mismatch.
double fidelity(const ComplexVector& a, const ComplexVector& b);
// <a, b>, sensitive to global phase.
Complex overlap(const ComplexVector& a, const ComplexVector& b);

struct SteeringOptions {
  double goal = 0.999;
  // Restarts draw amplitudes uniformly from [-amplitude_scale, amplitude_scale].
  double amplitude_scale = 1.5;
  double fd_step = 1e-6;
  double dt_max = 0.0;
};

struct SteeringResult {
  ControlSchedule schedule;
  double fidelity = 0.0;
  Complex overlap{0.0, 0.0};
  int evaluations = 0;
  int restarts = 0;
  bool converged = false;
};

// Multi-start finite-difference gradient ascent with Armijo backtracking over
// the amplitudes of `segments` equal-length segments on [0, T]. The first start
// is the zero schedule; later starts are seeded random amplitudes.
SteeringResult steer(const SystemSpec& sys, const ComplexVector& target, double T, int segments,
                     int budget, std::uint64_t seed, const SteeringOptions& options = {});

// One arc of an auxiliary word: the drift alone (u0 = 1, u = 0) or a single
// control alone (u0 = 0, u_l = amplitude).
struct WordArc {
  enum class Kind { drift, control };
  Kind kind = Kind::drift;
  int control = 0;
  double amplitude = 0.0;
  double duration = 0.0;

  static WordArc drift(double duration) { return {Kind::drift, 0, 0.0, duration}; }
  static WordArc pulse(int control, double amplitude, double duration) {
    return {Kind::control, control, amplitude, duration};
  }
};

struct ConvergenceRow {
  int n = 0;
  // Distance between augmented endpoints (s, psi).
  double error = 0.0;
};

// Schedule of the auxiliary word itself (drift switched off during control arcs).
ControlSchedule auxiliary_schedule(const SystemSpec& sys, const std::vector<WordArc>& word);

// Schedule of the n-th approximant: each control arc (tau, c) becomes
// (u0 = 1, u_l = n c) for tau / n, and the last arc, which must be a drift
// arc, is shortened by the sum of tau / n. Throws InfeasibleWordError when
// that would make it negative.
ControlSchedule approximant_schedule(const SystemSpec& sys, const std::vector<WordArc>& word,
                                     int n);

std::vector<ConvergenceRow> product_convergence(const SystemSpec& sys,
                                                const std::vector<WordArc>& word,
                                                const std::vector<int>& n_list,
                                                double dt_max = 1e-3);

}  // namespace liereach
