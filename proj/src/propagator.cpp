#include "liereach/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "liereach/errors.hpp"
#include "liereach/parallel.hpp"

namespace liereach {

double ControlSchedule::total_duration() const {
  double total = 0.0;
  for (const auto& s : segments) total += s.duration;
  return total;
}

void ControlSchedule::validate(int num_controls) const {
  if (segments.empty()) throw InputError("segments", "schedule has no segments");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    const std::string path = "segments[" + std::to_string(i) + "]";
    if (!(s.duration > 0.0) || !std::isfinite(s.duration))
      throw InputError(path + ".duration", "must be positive and finite");
    if (static_cast<int>(s.controls.size()) != num_controls)
      throw InputError(path + ".controls", "expected " + std::to_string(num_controls) + " values");
    for (double u : s.controls)
      if (!std::isfinite(u)) throw InputError(path + ".controls", "non-finite amplitude");
    if (!std::isfinite(s.drift_scale)) throw InputError(path + ".drift_scale", "non-finite");
  }
}

ComplexMatrix expm(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("expm of a non-square matrix");
  if (a.size() == 0) return a;
  if (max_abs(a) == 0.0) return ComplexMatrix::Identity(a.rows(), a.cols());
  if (is_skew_hermitian(a, kSkewTol)) {
    // a = -i h with h Hermitian; symmetrize to keep the result unitary.
    const ComplexMatrix h = Complex{0.0, 0.5} * (a - a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
    const auto& v = eig.eigenvectors();
    ComplexVector phases(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      phases(i) = std::exp(Complex{0.0, -eig.eigenvalues()(i)});
    return v * phases.asDiagonal() * v.adjoint();
  }
  return a.exp();
}

namespace {

double default_dt(const ControlSchedule& sched, double dt_max) {
  return dt_max > 0.0 ? dt_max : sched.total_duration() / 1000.0;
}

void require_matrix(const SystemSpec& sys) {
  if (sys.backend != Backend::matrix)
    throw PreconditionError("propagation needs the matrix backend");
}

void check_finite(const ComplexVector& psi, std::size_t segment, double t) {
  if (!all_finite(psi))
    throw RangeError("state became non-finite in segment " + std::to_string(segment) +
                     " at t = " + std::to_string(t));
}

double norm_defect(const ComplexVector& psi) { return std::abs(psi.norm() - 1.0); }

// Integrates one schedule; the clock passed to H advances at rate `clock_rate(seg)`.
template <class Record>
ComplexVector integrate(const SystemSpec& sys, const ComplexVector& psi0,
                        const ControlSchedule& sched, double dt_max, bool augmented_clock,
                        Record&& record) {
  ComplexVector psi = psi0;
  double elapsed = 0.0;
  double clock = sys.t0;
  for (std::size_t i = 0; i < sched.segments.size(); ++i) {
    const auto& seg = sched.segments[i];
    const int steps = std::max(1, static_cast<int>(std::ceil(seg.duration / dt_max - 1e-12)));
    const double dt = seg.duration / steps;
    const double rate = augmented_clock ? seg.drift_scale : 1.0;
    const double seg_start_elapsed = elapsed;
    const double seg_start_clock = clock;
    for (int k = 0; k < steps; ++k) {
      const double mid = seg_start_clock + rate * (k + 0.5) * dt;
      psi = expm(dt * sys.generator(mid, seg.controls, seg.drift_scale)) * psi;
      elapsed = seg_start_elapsed + (k + 1) * dt;
      clock = seg_start_clock + rate * (k + 1) * dt;
      check_finite(psi, i, clock);
      record(elapsed, clock, psi);
    }
    elapsed = seg_start_elapsed + seg.duration;
    clock = seg_start_clock + rate * seg.duration;
  }
  return psi;
}

}  // namespace

Trajectory propagate(const SystemSpec& sys, const ControlSchedule& sched, double dt_max) {
  require_matrix(sys);
  sched.validate(sys.num_controls());
  Trajectory traj;
  traj.schedule = sched;
  traj.times.push_back(sys.t0);
  traj.states.push_back(sys.initial_state);
  traj.norm_drift = norm_defect(sys.initial_state);
  integrate(sys, sys.initial_state, sched, default_dt(sched, dt_max), false,
            [&](double elapsed, double, const ComplexVector& psi) {
              traj.times.push_back(sys.t0 + elapsed);
              traj.states.push_back(psi);
              traj.norm_drift = std::max(traj.norm_drift, norm_defect(psi));
            });
  return traj;
}

ComplexVector propagate_endpoint(const SystemSpec& sys, const ComplexVector& psi0,
                                 const ControlSchedule& sched, double dt_max) {
  require_matrix(sys);
  sched.validate(sys.num_controls());
  if (psi0.size() != sys.dim) throw DimensionError("state length differs from the dimension");
  if (sys.time_independent()) {
    ComplexVector psi = psi0;
    for (std::size_t i = 0; i < sched.segments.size(); ++i) {
      const auto& seg = sched.segments[i];
      psi = expm(seg.duration * sys.generator(sys.t0, seg.controls, seg.drift_scale)) * psi;
      check_finite(psi, i, seg.duration);
    }
    return psi;
  }
  return integrate(sys, psi0, sched, default_dt(sched, dt_max), false,
                   [](double, double, const ComplexVector&) {});
}

ComplexVector propagate_endpoint(const SystemSpec& sys, const ControlSchedule& sched,
                                 double dt_max) {
  return propagate_endpoint(sys, sys.initial_state, sched, dt_max);
}

Trajectory propagate_augmented(const AugmentedSystem& aug, const ControlSchedule& sched,
                               double dt_max) {
  const SystemSpec& sys = aug.base();
  sched.validate(sys.num_controls());
  Trajectory traj;
  traj.schedule = sched;
  const AugmentedState eta = aug.initial();
  traj.times.push_back(0.0);
  traj.time_component.push_back(eta.time);
  traj.states.push_back(eta.psi);
  traj.norm_drift = norm_defect(eta.psi);
  integrate(sys, eta.psi, sched, default_dt(sched, dt_max), true,
            [&](double elapsed, double clock, const ComplexVector& psi) {
              traj.times.push_back(elapsed);
              traj.time_component.push_back(clock);
              traj.states.push_back(psi);
              traj.norm_drift = std::max(traj.norm_drift, norm_defect(psi));
            });
  return traj;
}

std::vector<ComplexVector> reachable_sample(const SystemSpec& sys, double T, int n_schedules,
                                            int max_segments, double amplitude_bound,
                                            std::uint64_t seed) {
  require_matrix(sys);
  if (n_schedules < 1) throw PreconditionError("n_schedules must be at least 1");
  if (max_segments < 1) throw PreconditionError("max_segments must be at least 1");
  if (!(T > 0.0)) throw PreconditionError("T must be positive");
  if (amplitude_bound < 0.0) throw PreconditionError("amplitude bound must be non-negative");

  std::vector<ComplexVector> cloud(static_cast<std::size_t>(n_schedules));
  parallel_for(cloud.size(), [&](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> count(1, max_segments);
    std::uniform_real_distribution<double> cut(0.0, T);
    std::uniform_real_distribution<double> amp(-amplitude_bound, amplitude_bound);

    std::vector<double> cuts{0.0, T};
    for (int c = count(rng) - 1; c > 0; --c) cuts.push_back(cut(rng));
    std::sort(cuts.begin(), cuts.end());
    ControlSchedule sched;
    for (std::size_t k = 1; k < cuts.size(); ++k) {
      Segment seg;
      seg.duration = cuts[k] - cuts[k - 1];
      for (int l = 0; l < sys.num_controls(); ++l)
        seg.controls.push_back(amplitude_bound > 0.0 ? amp(rng) : 0.0);
      if (seg.duration > 0.0) sched.segments.push_back(std::move(seg));
    }
    cloud[i] = propagate_endpoint(sys, sched, T / 1000.0);
  });
  return cloud;
}

}  // namespace liereach
