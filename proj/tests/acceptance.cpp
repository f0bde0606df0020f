// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "liereach/case_studies.hpp"
#include "liereach/closure.hpp"
#include "liereach/controllability.hpp"
#include "liereach/errors.hpp"
#include "liereach/jet.hpp"
#include "liereach/propagator.hpp"
#include "liereach/steering.hpp"
#include "test_support.hpp"

using namespace liereach;
using namespace liereach::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1
Outcome example2_closure() {
  Outcome out;
  const LieAlgebraSpec alg = example2_algebra();
  const auto start = std::chrono::steady_clock::now();
  const ClosureBasis basis = structure_closure(
      alg, {alg.unit("L2"), alg.unit("L1"), alg.unit("L3"), alg.unit("P1"), alg.unit("J")});
  const double secs = seconds_since(start);
  out.require(basis.size() == 9, "closure dimension " + std::to_string(basis.size()) + " != 9");
  out.require(!basis.truncated, "closure truncated");
  out.require(secs < 1.0, "runtime " + num(secs) + " s >= 1 s");
  out.note("dim " + std::to_string(basis.size()) + " in " + num(secs) + " s");
  return out;
}

// 2
Outcome example1_verdict() {
  Outcome out;
  const CaseStudy cs = build_example1(12, 0.25, 1.0);
  const ControllabilityReport r = check_sufficient_conditions(*cs.structure);
  for (const auto& s : r.samples)
    out.require(s.dim_B == 3 && s.dim_C == 3 && s.dim_A == 3,
                "dims at t = " + num(s.time) + ": " + std::to_string(s.dim_B) + "/" +
                    std::to_string(s.dim_C.value_or(-1)) + "/" + std::to_string(s.dim_A));
  out.require(r.verdict == Verdict::strongly_controllable,
              std::string("verdict ") + to_string(r.verdict));

  const LadderOperators lad = su11_ladder(12, 0.25);
  const ComplexMatrix resid = commutator(lad.kp, lad.km) + 2.0 * lad.k0;
  const double interior = resid.topLeftCorner(10, 10).cwiseAbs().maxCoeff();
  out.require(interior <= 1e-10, "interior residual " + num(interior));
  out.note("dims 3/3/3 at " + std::to_string(r.samples.size()) + " samples, verdict " +
           to_string(r.verdict) + ", interior residual " + num(interior));
  return out;
}

// 3
Outcome example3_verdict() {
  Outcome out;
  const double b = 1.3, c = 0.7;
  const CaseStudy cs = build_example3(b, c, FormalSignal{});
  const SystemSpec& sys = *cs.structure;
  const ControllabilityReport r = check_sufficient_conditions(sys);
  for (const auto& s : r.samples) {
    out.require(s.dim_C == 1, "dim C at t = " + num(s.time));
    out.require(s.ideal_residual_max == 0.0, "ideal residual " + num(s.ideal_residual_max));
  }
  out.require(r.mode == VerificationMode::symbolic, "verification mode is not symbolic");
  out.require(r.m == 1, "m = " + std::to_string(r.m));
  out.require(r.verdict == Verdict::strongly_controllable,
              std::string("verdict ") + to_string(r.verdict));

  const StructureBackend backend(*sys.algebra);
  const TDOperator rel = bracket(sys.drift, sys.controls[0], backend) + sys.controls[0] * Complex{b, 0.0};
  out.require(rel.canonical(0.0).is_zero(), "[H0,H1] + B H1 is not identically zero");
  for (double t : {0.0, 0.3, 2.2}) {
    const ComplexMatrix v = backend.bracket(sys.drift(t), sys.controls[0](t)) + b * sys.controls[0](t);
    out.require(v.cwiseAbs().maxCoeff() == 0.0, "[H0,H1] + B H1 nonzero at t = " + num(t));
  }
  out.note("dim C 1, residual 0 (symbolic), m 1, verdict " + std::string(to_string(r.verdict)));
  return out;
}

// 4
Outcome sufficiency_boundary() {
  Outcome out;
  const SystemSpec sys = qubit_system(1.0, false);
  const ControllabilityReport r = check_sufficient_conditions(sys);
  double resid = 0.0;
  for (const auto& s : r.samples) {
    out.require(s.orbit_C == 3, "dim C psi at t = " + num(s.time));
    resid = std::max(resid, s.ideal_residual_max);
  }
  out.require(std::abs(resid - 1.0) <= 1e-6, "ideal residual " + num(resid) + " is not ~1");
  out.require(r.verdict == Verdict::condition_failed,
              std::string("verdict ") + to_string(r.verdict));
  out.note("dim C psi 3, ideal residual " + num(resid) + ", verdict " + to_string(r.verdict));
  return out;
}

ControlSchedule ten_second_schedule(int controls) {
  ControlSchedule s;
  const double amps[5][2] = {{0.8, -0.3}, {-0.5, 0.9}, {1.2, 0.1}, {0.0, -0.7}, {-0.9, 0.4}};
  for (const auto& a : amps) s.segments.push_back({2.0, std::vector<double>(a, a + controls), 1.0});
  return s;
}

// 5
Outcome augmentation_equivalence() {
  Outcome out;
  SystemSpec ex1 = *build_example1().matrix;
  SystemSpec qubit = qubit_system(1.0, false);
  ex1.t0 = 0.5;
  qubit.t0 = 0.5;
  double worst_state = 0.0, worst_clock = 0.0;
  for (const SystemSpec* sys : {&ex1, &qubit}) {
    const ControlSchedule sched = ten_second_schedule(sys->num_controls());
    const Trajectory plain = propagate(*sys, sched);
    const Trajectory aug = propagate_augmented(augment(*sys), sched);
    worst_state = std::max(worst_state, (plain.endpoint() - aug.endpoint()).norm());
    for (std::size_t i = 0; i < aug.times.size(); ++i)
      worst_clock = std::max(worst_clock, std::abs(aug.time_component[i] - (aug.times[i] + sys->t0)));
    out.require(std::abs(aug.times.back() - 10.0) <= 1e-12, "total time is not 10");
  }
  out.require(worst_state <= 1e-9, "endpoint distance " + num(worst_state));
  out.require(worst_clock <= 1e-12, "leading component error " + num(worst_clock));
  out.note("endpoint distance " + num(worst_state) + ", leading component error " + num(worst_clock));
  return out;
}

std::vector<SystemSpec> bundled_systems() {
  std::vector<SystemSpec> out;
  for (const auto& name : case_study_names()) {
    const CaseStudy cs = build_case(name);
    if (cs.structure) out.push_back(*cs.structure);
    if (cs.matrix) out.push_back(*cs.matrix);
  }
  out.push_back(qubit_system(1.0, false));
  out.push_back(qubit_system(1.0, true));
  return out;
}

// 6
Outcome hierarchy_and_chat() {
  Outcome out;
  int checked = 0, anchors = 0;
  for (const auto& sys : bundled_systems()) {
    const ControllabilityReport r = check_sufficient_conditions(sys);
    for (const auto& s : r.samples) {
      ++checked;
      out.require(s.dim_B <= *s.dim_C && *s.dim_C <= s.dim_A,
                  sys.name + " algebra chain at t = " + num(s.time));
      out.require(s.orbit_B <= *s.orbit_C && *s.orbit_C <= s.orbit_A,
                  sys.name + " orbit chain at t = " + num(s.time));
      if (sys.backend == Backend::matrix) {
        ++anchors;
        const int chat = augmented_C_orbit_rank(sys, s.time, sys.initial_state);
        out.require(chat == *s.orbit_C, sys.name + " C_hat rank " + std::to_string(chat) +
                                            " != dim C psi " + std::to_string(*s.orbit_C));
      }
    }
  }
  out.note(std::to_string(checked) + " samples, " + std::to_string(anchors) + " C_hat anchors");
  return out;
}

// 7
Outcome propagator_quality() {
  Outcome out;
  double worst_drift = 0.0;
  std::vector<SystemSpec> unitary;
  for (const auto& sys : bundled_systems())
    if (sys.backend == Backend::matrix && !sys.allow_non_skew) unitary.push_back(sys);
  for (const auto& sys : unitary) {
    const ControlSchedule sched = ten_second_schedule(sys.num_controls());
    const Trajectory traj = propagate(sys, sched, 10.0 / 1000.0);
    out.require(traj.times.size() == 1001, sys.name + " did not take 1000 steps");
    worst_drift = std::max(worst_drift, traj.norm_drift);
  }
  out.require(worst_drift <= 1e-10, "norm drift " + num(worst_drift));

  const SystemSpec ex1 = *build_example1().matrix;
  ControlSchedule sched;
  sched.segments = {{1.0, {0.6, 0.8}, 1.0}, {1.0, {-0.4, 1.1}, 1.0}};
  const ComplexVector ref = propagate_endpoint(ex1, sched, 0.05 / 256.0);
  const double e1 = (propagate_endpoint(ex1, sched, 0.05) - ref).norm();
  const double e2 = (propagate_endpoint(ex1, sched, 0.025) - ref).norm();
  const double ratio = e1 / e2;
  out.require(ratio >= 3.5 && ratio <= 4.5, "halving ratio " + num(ratio));
  out.note(std::to_string(unitary.size()) + " unitary systems, norm drift " + num(worst_drift) +
           ", halving ratio " + num(ratio));
  return out;
}

// 8
Outcome product_approximation() {
  Outcome out;
  const CaseStudy d2 = build_drift2d(0.3, -0.2);
  double worst = 0.0;
  for (const auto& row : product_convergence(*d2.matrix, d2.word, {1, 10, 100}))
    worst = std::max(worst, row.error);
  out.require(worst <= 1e-12, "drift2d error " + num(worst));

  const SystemSpec qubit = qubit_system(1.0, false);
  const std::vector<WordArc> word{WordArc::drift(0.5), WordArc::pulse(0, 1.0, 0.6),
                                  WordArc::drift(0.4), WordArc::pulse(0, -0.7, 0.5),
                                  WordArc::drift(1.5)};
  const auto rows = product_convergence(qubit, word, {8, 16, 32, 64, 128});
  std::string ratios;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double q = rows[i + 1].error / rows[i].error;
    ratios += (ratios.empty() ? "" : ",") + num(q);
    out.require(q >= 0.3 && q <= 0.7, "ratio at n = " + std::to_string(rows[i].n) + " is " + num(q));
  }

  SystemSpec free = qubit;
  free.drift = TDOperator(Backend::matrix, 2);
  const int n = 5;
  const double tau = 0.3, c = 0.7;
  ControlSchedule fast, slow;
  fast.segments = {{tau, {n * c}, 1.0}};
  slow.segments = {{n * tau, {c}, 1.0}};
  const double rescale = (propagate_endpoint(free, fast) - propagate_endpoint(free, slow)).norm();
  out.require(rescale <= 1e-10, "rescaling identity " + num(rescale));
  out.note("drift2d max error " + num(worst) + ", qubit ratios " + ratios + ", rescaling " +
           num(rescale));
  return out;
}

// 9
Outcome steering_witness() {
  Outcome out;
  const SystemSpec sys = qubit_system(1.0, true);
  const auto start = std::chrono::steady_clock::now();
  const SteeringResult r = steer(sys, ket(2, 1), M_PI, 8, 10000, 2024);
  const double secs = seconds_since(start);
  out.require(r.fidelity >= 0.999, "fidelity " + num(r.fidelity));
  out.require(r.evaluations <= 10000, "budget exceeded");
  out.require(secs < 10.0, "runtime " + num(secs) + " s");
  out.note("fidelity " + std::to_string(r.fidelity) + " after " + std::to_string(r.evaluations) +
           " evaluations in " + num(secs) + " s");
  return out;
}

// 10
Outcome engine_properties() {
  Outcome out;
  std::mt19937_64 rng(20240917);
  const int trials = 1000;
  const MatrixBackend mb(3);
  const LieAlgebraSpec ex2 = example2_algebra();
  const StructureBackend sb(ex2);

  double worst_leibniz = 0.0, worst_jacobi = 0.0;
  int antisym_fail = 0, idempotence_fail = 0, permutation_fail = 0;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 3);

  for (int trial = 0; trial < trials; ++trial) {
    // Jet Leibniz rule against finite differences of t -> [X(t), Y(t)].
    TDOperator x(Backend::matrix, 3), y(Backend::matrix, 3);
    x.add_term(random_exppoly(rng), random_skew(3, rng));
    x.add_term(random_exppoly(rng), random_skew(3, rng));
    y.add_term(random_exppoly(rng), random_skew(3, rng));
    const double t0 = u(rng);
    const OperatorJet jb = jet_bracket(jet_of(x, t0, 2), jet_of(y, t0, 2));
    auto f = [&](double t) { return ComplexMatrix(commutator(x(t), y(t))); };
    for (int k = 1; k <= 2; ++k) {
      const ComplexMatrix fd = fd_derivative(f, t0, k, 1e-3);
      const double scale = std::max(1.0, fd.cwiseAbs().maxCoeff());
      worst_leibniz = std::max(worst_leibniz,
                               (jb.coeffs[static_cast<std::size_t>(k)] - fd).cwiseAbs().maxCoeff() / scale);
    }

    // Exact antisymmetry on jets and on structure constants.
    const OperatorJet jx = jet_of(x, t0, 2), jy = jet_of(y, t0, 2);
    const OperatorJet ab = jet_bracket(jx, jy), ba = jet_bracket(jy, jx);
    for (std::size_t k = 0; k < ab.coeffs.size(); ++k)
      if (ab.coeffs[k] != -ba.coeffs[k]) ++antisym_fail;
    Eigen::VectorXcd p(9), q(9), r(9);
    for (int i = 0; i < 9; ++i) {
      p(i) = u(rng);
      q(i) = u(rng);
      r(i) = u(rng);
    }
    if (ex2.bracket(p, q) != -ex2.bracket(q, p)) ++antisym_fail;

    // Jacobi residual relative to the product of magnitudes.
    const ComplexMatrix a = random_complex(4, rng), b = random_complex(4, rng),
                        c = random_complex(4, rng);
    const ComplexMatrix jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                              commutator(c, commutator(a, b));
    const double scale = a.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff() * c.cwiseAbs().maxCoeff();
    worst_jacobi = std::max(worst_jacobi, jac.cwiseAbs().maxCoeff() / scale);
    const Eigen::VectorXcd sj = ex2.bracket(p, ex2.bracket(q, r)) + ex2.bracket(q, ex2.bracket(r, p)) +
                                ex2.bracket(r, ex2.bracket(p, q));
    const double sscale = p.cwiseAbs().maxCoeff() * q.cwiseAbs().maxCoeff() * r.cwiseAbs().maxCoeff();
    worst_jacobi = std::max(worst_jacobi, sj.cwiseAbs().maxCoeff() / sscale);

    // Closure idempotence and generator-order invariance on mixed generator sets.
    std::vector<LieElement> gens;
    const int n_gens = 2 + pick(rng) % 2;
    for (int g = 0; g < n_gens; ++g) {
      ComplexMatrix m;
      switch (pick(rng)) {
        case 0: m = random_skew(3, rng); break;
        case 1: {
          m = ComplexMatrix::Zero(3, 3);
          for (int i = 0; i < 3; ++i) m(i, i) = kI * u(rng);
          break;
        }
        case 2: {
          m = ComplexMatrix::Zero(3, 3);
          m.topLeftCorner(2, 2) = random_skew(2, rng);
          break;
        }
        default: m = random_skew(3, rng) * 1e-3;
      }
      gens.push_back(make_element(TDOperator::constant(m), 0.0, 0, "g" + std::to_string(g)));
    }
    const ClosureBasis once = closure(gens, mb);
    const ClosureBasis twice = closure(once.elements, mb);
    if (twice.size() != once.size()) ++idempotence_fail;
    std::vector<LieElement> shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    if (closure(shuffled, mb).size() != once.size()) ++permutation_fail;
  }
  out.require(worst_leibniz <= 1e-7, "Leibniz error " + num(worst_leibniz));
  out.require(antisym_fail == 0, std::to_string(antisym_fail) + " antisymmetry failures");
  out.require(worst_jacobi <= 1e-12, "Jacobi residual " + num(worst_jacobi));
  out.require(idempotence_fail == 0, std::to_string(idempotence_fail) + " idempotence failures");
  out.require(permutation_fail == 0, std::to_string(permutation_fail) + " permutation failures");
  out.note(std::to_string(trials) + " trials: Leibniz " + num(worst_leibniz) + ", Jacobi " +
           num(worst_jacobi) + ", antisymmetry exact, closure idempotent and order-invariant");
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"example2 closure dimension", example2_closure},
      {"example1 verdict and ladder residual", example1_verdict},
      {"example3 verdict and bracket relation", example3_verdict},
      {"sufficiency boundary on the qubit", sufficiency_boundary},
      {"augmentation equivalence", augmentation_equivalence},
      {"algebra hierarchy and C_hat identity", hierarchy_and_chat},
      {"propagator norm drift and order", propagator_quality},
      {"product approximation demonstrations", product_approximation},
      {"steering witness", steering_witness},
      {"algebra engine properties", engine_properties},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(start);
    if (!o.pass) ++failures;
    std::printf("%s  [%2zu] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures),
              criteria.size());
  return failures == 0 ? 0 : 1;
}
