#include "liereach/controllability.hpp"

#include <algorithm>

#include "liereach/errors.hpp"
#include "liereach/parallel.hpp"

namespace liereach {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::strongly_controllable: return "stronglyControllable";
    case Verdict::condition_failed: return "conditionFailed";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(CheckKind k) {
  switch (k) {
    case CheckKind::full: return "full";
    case CheckKind::time_invariant: return "time-invariant";
    case CheckKind::b_full: return "b-full";
  }
  return "?";
}

const char* to_string(VerificationMode m) {
  return m == VerificationMode::symbolic ? "symbolic" : "sampled";
}

bool ControllabilityReport::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

int orbit_dimension(const ClosureBasis& basis, const ComplexVector& psi, const LieBackend& backend,
                    double tol) {
  const auto* matrix = dynamic_cast<const MatrixBackend*>(&backend);
  if (!matrix) throw PreconditionError("orbit dimensions need the matrix backend");
  std::vector<ComplexVector> vectors;
  vectors.reserve(basis.elements.size());
  for (const auto& e : basis.elements) {
    if (e.jet.value().cols() != psi.size()) throw DimensionError("state and operator sizes differ");
    vectors.push_back(matrix->restrict_state(e.jet.value() * psi));
  }
  return realified_rank(vectors, tol);
}

int orbit_dimension(const ClosureBasis& basis, const ComplexVector& psi, double tol) {
  if (basis.elements.empty()) return 0;
  return orbit_dimension(basis, psi, MatrixBackend(static_cast<int>(psi.size())), tol);
}

AugmentedField field_bracket(const AugmentedField& x, const AugmentedField& y) {
  AugmentedField out;
  out.a = 0.0;
  out.jet = -jet_bracket(x.jet, y.jet);
  if (x.a != 0.0) {
    OperatorJet d = jet_shift(y.jet);
    for (auto& c : d.coeffs) c *= x.a;
    out.jet += d;
  }
  if (y.a != 0.0) {
    OperatorJet d = jet_shift(x.jet);
    for (auto& c : d.coeffs) c *= -y.a;
    out.jet += d;
  }
  return out;
}

namespace {

// Lie bracket of augmented fields with vanishing first component, which is the
// negated operator commutator; rank tests follow the wrapped matrix backend.
class FieldBackend final : public LieBackend {
 public:
  explicit FieldBackend(const MatrixBackend& base) : base_(base) {}
  Backend kind() const override { return Backend::matrix; }
  ComplexMatrix bracket(const ComplexMatrix& a, const ComplexMatrix& b) const override {
    return -commutator(a, b);
  }
  RealVector realify(const ComplexMatrix& a) const override { return base_.realify(a); }
  ComplexVector complexify(const ComplexMatrix& a) const override { return base_.complexify(a); }
  int ambient_real_dim() const override { return base_.ambient_real_dim(); }
  bool in_real_form(const ComplexMatrix& a, double tol) const override {
    return base_.in_real_form(a, tol);
  }

 private:
  const MatrixBackend& base_;
};

struct SampleOutcome {
  SampleReport report;
  bool jet_exhausted = false;
  bool truncated = false;
  bool generations_exhausted = false;
  bool hierarchy_violated = false;
  bool symbolic = false;
};

// Complex columns of the canonical constant parts of the symbolic elements.
Eigen::MatrixXcd symbolic_directions(const ClosureBasis& basis, const LieBackend& backend) {
  std::vector<ComplexVector> cols;
  for (const auto& e : basis.elements)
    for (const auto& term : e.symbolic->terms()) cols.push_back(backend.complexify(term.op));
  if (cols.empty()) return {};
  Eigen::MatrixXcd out(cols.front().size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = cols[j];
  return out;
}

// [B, C] subset B for every t when each pair's symbolic bracket lies in the
// complex span of B's symbolic directions and that span has the same dimension
// as B at the sample.
bool symbolic_ideal(const ClosureBasis& b, const ClosureBasis& c, const LieBackend& backend,
                    double tol) {
  auto has_symbolic = [](const ClosureBasis& basis) {
    return std::all_of(basis.elements.begin(), basis.elements.end(),
                       [](const LieElement& e) { return e.symbolic.has_value(); });
  };
  if (!has_symbolic(b) || !has_symbolic(c)) return false;
  const Eigen::MatrixXcd dirs = symbolic_directions(b, backend);
  const int rank = complex_rank(dirs, tol);
  if (rank != b.size()) return false;
  for (const auto& x : b.elements) {
    for (const auto& y : c.elements) {
      const TDOperator br = bracket(*x.symbolic, *y.symbolic, backend);
      for (const auto& term : br.terms()) {
        Eigen::MatrixXcd trial(dirs.rows(), dirs.cols() + 1);
        if (dirs.cols() > 0) trial.leftCols(dirs.cols()) = dirs;
        trial.col(dirs.cols()) = backend.complexify(term.op);
        if (complex_rank(trial, tol) > rank) return false;
      }
    }
  }
  return true;
}

SampleOutcome analyze_sample(const SystemSpec& sys, const LieBackend& backend, double t,
                             CheckKind kind, const AnalysisOptions& o) {
  SampleOutcome out;
  SampleReport& rep = out.report;
  rep.time = t;
  const bool time_invariant = kind == CheckKind::time_invariant;
  const int order = time_invariant ? 0 : o.jet_order;
  const ClosureOptions copts = o.closure_options();

  std::vector<LieElement> controls;
  std::vector<LieElement> all;
  all.push_back(make_element(sys.drift, t, 0, "H0"));
  for (int l = 0; l < sys.num_controls(); ++l) {
    const auto& op = sys.controls[static_cast<std::size_t>(l)];
    const std::string word = "H" + std::to_string(l + 1);
    controls.push_back(make_element(op, t, order, word));
    all.push_back(make_element(op, t, 0, word));
  }
  const ClosureBasis b = closure(controls, backend, copts, AlgebraRole::B);
  const ClosureBasis a = closure(all, backend, copts, AlgebraRole::A);
  out.truncated = b.truncated || a.truncated;
  rep.dim_B = b.size();
  rep.dim_A = a.size();
  rep.words_B = b.words();
  rep.words_A = a.words();

  const bool has_state = sys.backend == Backend::matrix;
  rep.orbit_B = has_state ? orbit_dimension(b, sys.initial_state, backend, o.tol) : b.size();
  rep.orbit_A = has_state ? orbit_dimension(a, sys.initial_state, backend, o.tol) : a.size();

  if (kind == CheckKind::b_full) {
    out.hierarchy_violated = rep.dim_B > rep.dim_A || rep.orbit_B > rep.orbit_A;
    return out;
  }

  const CGeneration cg =
      generate_C(sys.drift, b, t, o.max_generations, backend, copts, time_invariant);
  const ClosureBasis& c = cg.basis;
  out.truncated = out.truncated || c.truncated;
  out.jet_exhausted = cg.jet_exhausted && !cg.stabilized;
  out.generations_exhausted = !cg.stabilized && !cg.jet_exhausted;
  rep.generations = cg.generations;
  rep.stabilized = cg.stabilized;
  rep.dim_C = c.size();
  rep.words_C = c.words();
  rep.orbit_C = has_state ? orbit_dimension(c, sys.initial_state, backend, o.tol) : c.size();

  for (const auto& x : b.elements) {
    for (const auto& y : c.elements) {
      const double r = membership(backend.bracket(x.jet.value(), y.jet.value()), b, backend);
      rep.ideal_pairs.push_back({x.word, y.word, r});
      rep.ideal_residual_max = std::max(rep.ideal_residual_max, r);
    }
  }
  out.symbolic = symbolic_ideal(b, c, backend, o.tol);
  out.hierarchy_violated = rep.dim_B > *rep.dim_C || *rep.dim_C > rep.dim_A ||
                           rep.orbit_B > *rep.orbit_C || *rep.orbit_C > rep.orbit_A;
  return out;
}

ControllabilityReport run_check(const SystemSpec& sys, CheckKind kind, const AnalysisOptions& o) {
  if (sys.sample_times.empty()) throw PreconditionError("no sample times");
  if (sys.controls.empty()) throw PreconditionError("no control operators");
  if (o.jet_order < 0 || o.max_generations < 0 || !(o.tol > 0.0))
    throw PreconditionError("invalid analysis options");
  const auto backend = sys.make_backend();

  std::vector<SampleOutcome> outcomes(sys.sample_times.size());
  parallel_for(outcomes.size(), [&](std::size_t i) {
    outcomes[i] = analyze_sample(sys, *backend, sys.sample_times[i], kind, o);
  });

  ControllabilityReport rep;
  rep.system = sys.name;
  rep.check = kind;
  rep.options = o;
  rep.orbit_mode = sys.backend == Backend::matrix ? "state" : "algebra";
  bool jet_exhausted = false, truncated = false, gens = false, hierarchy = false;
  bool symbolic = kind != CheckKind::b_full;
  int inferred = 0;
  for (auto& s : outcomes) {
    jet_exhausted = jet_exhausted || s.jet_exhausted;
    truncated = truncated || s.truncated;
    gens = gens || s.generations_exhausted;
    hierarchy = hierarchy || s.hierarchy_violated;
    symbolic = symbolic && s.symbolic;
    inferred = std::max(inferred, s.report.orbit_A);
    rep.samples.push_back(std::move(s.report));
  }
  rep.m_declared = sys.orbit_dim.has_value();
  rep.m = rep.m_declared ? *sys.orbit_dim : inferred;
  rep.mode = symbolic ? VerificationMode::symbolic : VerificationMode::sampled;
  if (jet_exhausted) rep.flags.push_back("jet-exhausted");
  if (truncated) rep.flags.push_back("closure-truncated");
  if (gens) rep.flags.push_back("generations-exhausted");
  if (hierarchy) rep.flags.push_back("hierarchy-violated");

  if (jet_exhausted || truncated || gens) {
    rep.verdict = Verdict::inconclusive;
    return rep;
  }
  bool ok = true;
  for (const auto& s : rep.samples) {
    if (kind == CheckKind::b_full)
      ok = ok && s.orbit_B == rep.m;
    else
      ok = ok && s.orbit_C == rep.m && s.ideal_residual_max <= o.tol;
  }
  rep.verdict = ok ? Verdict::strongly_controllable : Verdict::condition_failed;
  return rep;
}

}  // namespace

ControllabilityReport check_sufficient_conditions(const SystemSpec& sys, const AnalysisOptions& options) {
  return run_check(sys, CheckKind::full, options);
}

ControllabilityReport check_time_invariant(const SystemSpec& sys,
                                                     const AnalysisOptions& options) {
  if (!sys.time_independent())
    throw PreconditionError("time-invariant check on a system with time-dependent operators");
  return run_check(sys, CheckKind::time_invariant, options);
}

ControllabilityReport check_b_full(const SystemSpec& sys,
                                             const AnalysisOptions& options) {
  return run_check(sys, CheckKind::b_full, options);
}

int augmented_C_orbit_rank(const SystemSpec& sys, double anchor, const ComplexVector& psi,
                           const AnalysisOptions& options) {
  if (sys.backend != Backend::matrix)
    throw PreconditionError("augmented fields need the matrix backend");
  const MatrixBackend base(sys.dim, sys.interior_dim);
  const FieldBackend fields(base);
  const ClosureOptions copts = options.closure_options();
  const int order = options.jet_order;

  const AugmentedField w0{1.0, jet_of(sys.drift, anchor, order)};
  std::vector<LieElement> gens;
  for (int l = 0; l < sys.num_controls(); ++l)
    gens.push_back({jet_of(sys.controls[static_cast<std::size_t>(l)], anchor, order), std::nullopt,
                    "W" + std::to_string(l + 1), 1});
  ClosureBasis c_hat = closure(gens, fields, copts, AlgebraRole::Chat);

  std::vector<LieElement> current = c_hat.elements;
  for (int n = 1; n <= options.max_generations; ++n) {
    std::vector<LieElement> next;
    try {
      for (const auto& e : current) {
        const AugmentedField img = field_bracket(w0, AugmentedField{0.0, e.jet});
        next.push_back({img.jet, std::nullopt, "[W0," + e.word + "]", e.depth + 1});
      }
    } catch (const ExhaustedJetError&) {
      break;
    }
    const int before = c_hat.size();
    extend_closure(c_hat, next, fields, copts);
    if (c_hat.size() == before) break;
    current = std::move(next);
  }
  return orbit_dimension(c_hat, psi, base, options.tol);
}

}  // namespace liereach
