// propagator.hpp - piecewise-constant control propagation with the exponential
// midpoint rule  psi <- exp(dt * H(t_mid)) psi.

#pragma once

#include <cstdint>
#include <vector>

#include "liereach/system.hpp"

namespace liereach {

struct Segment {
  double duration = 0.0;
  std::vector<double> controls;
  // Multiplier on the drift (u0); 1 for the plain system.
  double drift_scale = 1.0;
};

struct ControlSchedule {
  std::vector<Segment> segments;

  double total_duration() const;
  // Positive finite durations, finite amplitudes, r amplitudes per segment.
  void validate(int num_controls) const;
};

struct Trajectory {
  // Base-system times starting at t0 (plain propagation) or augmented times
  // starting at 0 (augmented propagation).
  std::vector<double> times;
  std::vector<ComplexVector> states;
  // Leading real component s of the augmented state; empty otherwise.
  std::vector<double> time_component;
  ControlSchedule schedule;
  // max | ||psi|| - 1 | over the recorded states.
  double norm_drift = 0.0;

  const ComplexVector& endpoint() const { return states.back(); }
};

// exp(a): eigendecomposition for skew-Hermitian input, scaling and squaring otherwise.
ComplexMatrix expm(const ComplexMatrix& a);

// dt_max <= 0 selects total_duration / 1000.
Trajectory propagate(const SystemSpec& sys, const ControlSchedule& sched, double dt_max = 0.0);

// Endpoint only; time-independent systems use one exponential per segment.
ComplexVector propagate_endpoint(const SystemSpec& sys, const ControlSchedule& sched,
                                 double dt_max = 0.0);
ComplexVector propagate_endpoint(const SystemSpec& sys, const ComplexVector& psi0,
                                 const ControlSchedule& sched, double dt_max = 0.0);

// Integrates d xi/dt = u0 W0 + sum u_l W_l; the leading component advances as
// s = t0 + integral of u0.
Trajectory propagate_augmented(const AugmentedSystem& aug, const ControlSchedule& sched,
                               double dt_max = 0.0);

// Endpoints of n_schedules random schedules on [0, T]: 1..max_segments uniform
// splits and amplitudes uniform in [-bound, bound]. Schedule i draws from its
// own stream seeded by (seed, i), so the cloud does not depend on threading.
std::vector<ComplexVector> reachable_sample(const SystemSpec& sys, double T, int n_schedules,
                                            int max_segments, double amplitude_bound,
                                            std::uint64_t seed);

}  // namespace liereach
