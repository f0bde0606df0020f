#include "liereach/steering.hpp"

#include <cmath>
#include <random>

#include "liereach/errors.hpp"

namespace liereach {

Complex overlap(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw DimensionError("fidelity of vectors of different length");
  return a.dot(b);
}

double fidelity(const ComplexVector& a, const ComplexVector& b) {
  return std::norm(overlap(a, b));
}

namespace {

class Objective {
 public:
  Objective(const SystemSpec& sys, const ComplexVector& target, double T, int segments,
            const SteeringOptions& options)
      : sys_(sys), target_(target), segments_(segments), dt_(options.dt_max) {
    base_.segments.assign(static_cast<std::size_t>(segments),
                          Segment{T / segments, std::vector<double>(
                                                    static_cast<std::size_t>(sys.num_controls()),
                                                    0.0),
                                  1.0});
  }

  int size() const { return segments_ * sys_.num_controls(); }
  int evaluations() const { return evaluations_; }

  ControlSchedule schedule(const Eigen::VectorXd& x) const {
    ControlSchedule s = base_;
    const int r = sys_.num_controls();
    for (int k = 0; k < segments_; ++k)
      for (int l = 0; l < r; ++l)
        s.segments[static_cast<std::size_t>(k)].controls[static_cast<std::size_t>(l)] =
            x(k * r + l);
    return s;
  }

  ComplexVector endpoint(const Eigen::VectorXd& x) const {
    return propagate_endpoint(sys_, schedule(x), dt_);
  }

  double operator()(const Eigen::VectorXd& x) {
    ++evaluations_;
    return fidelity(target_, endpoint(x));
  }

 private:
  const SystemSpec& sys_;
  const ComplexVector& target_;
  int segments_;
  double dt_;
  ControlSchedule base_;
  int evaluations_ = 0;
};

}  // namespace

SteeringResult steer(const SystemSpec& sys, const ComplexVector& target, double T, int segments,
                     int budget, std::uint64_t seed, const SteeringOptions& options) {
  if (segments < 1) throw PreconditionError("segments must be at least 1");
  if (budget < 1) throw PreconditionError("budget must be at least 1");
  if (!(T > 0.0)) throw PreconditionError("T must be positive");
  if (target.size() != sys.dim) throw DimensionError("target length differs from the dimension");

  Objective f(sys, target, T, segments, options);
  const int n = f.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(-options.amplitude_scale, options.amplitude_scale);

  Eigen::VectorXd best_x = Eigen::VectorXd::Zero(n);
  double best = -1.0;
  int restarts = 0;
  const double h = options.fd_step;

  while (f.evaluations() < budget && best < options.goal) {
    Eigen::VectorXd x(n);
    if (restarts == 0)
      x.setZero();
    else
      for (int i = 0; i < n; ++i) x(i) = draw(rng);
    ++restarts;
    double fx = f(x);
    double step = 1.0;
    while (fx < options.goal && f.evaluations() + 2 * n + 1 <= budget) {
      Eigen::VectorXd g(n);
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        g(i) = (f(xp) - f(xm)) / (2.0 * h);
      }
      const double g2 = g.squaredNorm();
      if (g2 < 1e-20) break;
      bool accepted = false;
      while (step > 1e-12 && f.evaluations() < budget) {
        const Eigen::VectorXd trial = x + step * g;
        const double ft = f(trial);
        if (ft >= fx + 1e-4 * step * g2) {
          x = trial;
          fx = ft;
          accepted = true;
          step *= 2.0;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
    }
    // Strict improvement keeps the earliest restart on ties.
    if (fx > best) {
      best = fx;
      best_x = x;
    }
  }

  SteeringResult out;
  out.schedule = f.schedule(best_x);
  const ComplexVector end = f.endpoint(best_x);
  out.fidelity = fidelity(target, end);
  out.overlap = overlap(target, end);
  out.evaluations = f.evaluations();
  out.restarts = restarts;
  out.converged = out.fidelity >= options.goal;
  return out;
}

namespace {

void check_word(const SystemSpec& sys, const std::vector<WordArc>& word) {
  if (word.empty()) throw InfeasibleWordError("empty word");
  for (const auto& arc : word) {
    if (!(arc.duration >= 0.0) || !std::isfinite(arc.duration))
      throw InfeasibleWordError("arc durations must be non-negative");
    if (arc.kind == WordArc::Kind::control &&
        (arc.control < 0 || arc.control >= sys.num_controls()))
      throw InfeasibleWordError("control index out of range");
  }
  if (word.back().kind != WordArc::Kind::drift)
    throw InfeasibleWordError("word must end with a drift arc");
}

void push(ControlSchedule& s, double duration, std::vector<double> u, double u0) {
  if (duration > 0.0) s.segments.push_back({duration, std::move(u), u0});
}

}  // namespace

ControlSchedule auxiliary_schedule(const SystemSpec& sys, const std::vector<WordArc>& word) {
  check_word(sys, word);
  ControlSchedule s;
  const auto r = static_cast<std::size_t>(sys.num_controls());
  for (const auto& arc : word) {
    std::vector<double> u(r, 0.0);
    if (arc.kind == WordArc::Kind::control) {
      u[static_cast<std::size_t>(arc.control)] = arc.amplitude;
      push(s, arc.duration, std::move(u), 0.0);
    } else {
      push(s, arc.duration, std::move(u), 1.0);
    }
  }
  return s;
}

ControlSchedule approximant_schedule(const SystemSpec& sys, const std::vector<WordArc>& word,
                                     int n) {
  check_word(sys, word);
  if (n < 1) throw PreconditionError("n must be at least 1");
  double absorbed = 0.0;
  for (const auto& arc : word)
    if (arc.kind == WordArc::Kind::control) absorbed += arc.duration / n;
  const double last = word.back().duration - absorbed;
  if (last < -1e-15)
    throw InfeasibleWordError("final drift arc is shorter than the absorbed control time (n = " +
                              std::to_string(n) + ")");

  ControlSchedule s;
  const auto r = static_cast<std::size_t>(sys.num_controls());
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    const auto& arc = word[i];
    std::vector<double> u(r, 0.0);
    if (arc.kind == WordArc::Kind::control) {
      u[static_cast<std::size_t>(arc.control)] = n * arc.amplitude;
      push(s, arc.duration / n, std::move(u), 1.0);
    } else {
      push(s, arc.duration, std::move(u), 1.0);
    }
  }
  push(s, std::max(last, 0.0), std::vector<double>(r, 0.0), 1.0);
  return s;
}

std::vector<ConvergenceRow> product_convergence(const SystemSpec& sys,
                                                const std::vector<WordArc>& word,
                                                const std::vector<int>& n_list, double dt_max) {
  const AugmentedSystem aug = augment(sys);
  const Trajectory exact = propagate_augmented(aug, auxiliary_schedule(sys, word), dt_max);
  std::vector<ConvergenceRow> rows;
  for (int n : n_list) {
    const Trajectory approx = propagate_augmented(aug, approximant_schedule(sys, word, n), dt_max);
    const double ds = approx.time_component.back() - exact.time_component.back();
    const double dpsi = (approx.endpoint() - exact.endpoint()).norm();
    rows.push_back({n, std::sqrt(ds * ds + dpsi * dpsi)});
  }
  return rows;
}

}  // namespace liereach
