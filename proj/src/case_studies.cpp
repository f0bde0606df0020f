#include "liereach/case_studies.hpp"

#include <cmath>

#include "liereach/errors.hpp"

namespace liereach {

namespace {

constexpr Complex kI{0.0, 1.0};

ExpPoly constant(double c) { return ExpPoly::constant(c); }

// cos(w t) and sin(w t) as exponential polynomials.
ExpPoly cos_poly(double w) {
  return ExpPoly::term(0.5, 0, {0.0, w}) + ExpPoly::term(0.5, 0, {0.0, -w});
}
ExpPoly sin_poly(double w) {
  return ExpPoly::term(Complex{0.0, -0.5}, 0, {0.0, w}) +
         ExpPoly::term(Complex{0.0, 0.5}, 0, {0.0, -w});
}

ComplexVector basis_state(int dim, int index) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

SystemSpec structure_system(std::string name, LieAlgebraSpec algebra) {
  SystemSpec sys;
  sys.name = std::move(name);
  sys.backend = Backend::structure;
  sys.dim = algebra.dim();
  sys.algebra = std::move(algebra);
  sys.drift = TDOperator(Backend::structure, sys.dim);
  return sys;
}

}  // namespace

LadderOperators su11_ladder(int cutoff, double k) {
  LadderOperators out;
  out.k0 = ComplexMatrix::Zero(cutoff, cutoff);
  out.kp = ComplexMatrix::Zero(cutoff, cutoff);
  for (int m = 0; m < cutoff; ++m) {
    out.k0(m, m) = k + m;
    if (m + 1 < cutoff) out.kp(m + 1, m) = std::sqrt((m + 1.0) * (m + 2.0 * k));
  }
  out.km = out.kp.adjoint();
  return out;
}

LieAlgebraSpec su11_algebra() {
  LieAlgebraSpec alg({"E0", "E1", "E2"});
  alg.set_bracket("E0", "E1", {{"E2", -1.0}});
  alg.set_bracket("E0", "E2", {{"E1", 1.0}});
  alg.set_bracket("E1", "E2", {{"E0", 1.0}});
  return alg;
}

LieAlgebraSpec example2_algebra() {
  LieAlgebraSpec alg({"L1", "L2", "L3", "P1", "P2", "B1", "B2", "J", "E"});
  alg.set_bracket("L1", "L2", {{"L3", -2.0}});
  alg.set_bracket("L3", "L1", {{"L2", 2.0}});
  alg.set_bracket("L2", "L3", {{"L1", 2.0}});
  for (const std::string j : {"1", "2"}) {
    const std::string p = "P" + j, b = "B" + j;
    alg.set_bracket("L1", b, {{b, 1.0}});
    alg.set_bracket("L1", p, {{p, -1.0}});
    alg.set_bracket("L2", b, {{p, -1.0}});
    alg.set_bracket("L3", b, {{p, -1.0}});
    // These two signs are fixed by the Jacobi identity on (L2, L3, B_j).
    alg.set_bracket("L2", p, {{b, -1.0}});
    alg.set_bracket("L3", p, {{b, 1.0}});
    alg.set_bracket(p, b, {{"E", 0.5}});
  }
  alg.set_bracket("P1", "J", {{"P2", 1.0}});
  alg.set_bracket("P2", "J", {{"P1", -1.0}});
  alg.set_bracket("B1", "J", {{"B2", 1.0}});
  alg.set_bracket("B2", "J", {{"B1", -1.0}});
  return alg;
}

LieAlgebraSpec example3_algebra() {
  LieAlgebraSpec alg({"I0", "X", "Id"});
  alg.set_bracket("I0", "X", {{"X", -1.0}});
  return alg;
}

CaseStudy build_example1(int cutoff, double k, double omega) {
  if (cutoff < 4) throw PreconditionError("example1 needs cutoff >= 4");
  if (std::abs(k - 0.25) > 1e-12 && std::abs(k - 0.75) > 1e-12)
    throw PreconditionError("example1 Bargmann index must be 1/4 or 3/4");

  CaseStudy cs;
  cs.name = "example1";
  const std::vector<double> samples{0.0, 0.4, 1.3, 2.9};
  // H1(t) = cos(2wt) E1 - sin(2wt) E2, controls {H0 = E0, H1(t)}, no drift.
  const ExpPoly c1 = cos_poly(2.0 * omega);
  const ExpPoly c2 = -sin_poly(2.0 * omega);

  {
    const LadderOperators lad = su11_ladder(cutoff, k);
    SystemSpec sys;
    sys.name = "example1";
    sys.backend = Backend::matrix;
    sys.dim = cutoff;
    sys.basis = {{"E0", -kI * lad.k0},
                 {"E1", -0.5 * kI * (lad.kp + lad.km)},
                 {"E2", 0.5 * (lad.kp - lad.km)}};
    sys.drift = TDOperator(Backend::matrix, cutoff);
    sys.controls.push_back(sys.term("E0", constant(1.0)));
    sys.controls.push_back(sys.term("E1", c1) + sys.term("E2", c2));
    sys.initial_state = basis_state(cutoff, 0);
    sys.sample_times = samples;
    sys.interior_dim = cutoff - 2;
    sys.validate();
    cs.matrix = std::move(sys);
  }
  {
    SystemSpec sys = structure_system("example1", su11_algebra());
    sys.controls.push_back(sys.term("E0", constant(1.0)));
    sys.controls.push_back(sys.term("E1", c1) + sys.term("E2", c2));
    sys.sample_times = samples;
    sys.validate();
    cs.structure = std::move(sys);
  }
  cs.expected = ExpectedReport{3, 3, 3, 3, Verdict::strongly_controllable};
  cs.notes = {
      "K0 = diag(k+m) and K+|m> = sqrt((m+1)(m+2k))|m+1> satisfy [K0,K+-] = +-K+- and "
      "[K+,K-] = -2K0 on every level below cutoff-1; rank tests use the first cutoff-2 levels.",
      "H2(t) = (1/2)[exp(-2iwt)K+ - exp(2iwt)K-] is the normalization giving [H0,H1] = -H2 "
      "exactly; an extra factor 1/2 would break that relation.",
      "K0 = (1/4)(a^dagger a + a a^dagger) for the one-mode realization; (1/2)(...) would double "
      "the [K+,K-] relation.",
      "The eigenvectors of H0 are the ladder states |m>, which span an analytic domain.",
      "Verdicts rest on the exact structure constants; the truncated matrices corroborate them."};
  return cs;
}

CaseStudy build_example2() {
  CaseStudy cs;
  cs.name = "example2";
  SystemSpec sys = structure_system("example2", example2_algebra());
  sys.drift = sys.term("L2", constant(1.0));
  for (const char* name : {"L1", "L3", "P1", "J"}) sys.controls.push_back(sys.term(name, constant(1.0)));
  sys.sample_times = {0.0, 1.0};
  sys.validate();
  cs.structure = std::move(sys);
  cs.expected = ExpectedReport{9, 9, 9, 9, Verdict::strongly_controllable};
  cs.notes = {
      "Structure constants use [L2,P_j] = -B_j and [L3,P_j] = B_j; the opposite signs leave a "
      "Jacobi residual of 4 B_j on (L2, L3, B_j).",
      "No faithful finite matrix representation is bundled; the operators act on an "
      "infinite-dimensional space."};
  return cs;
}

CaseStudy build_example3(double b_const, double c_const, const AmplitudeFamily& family) {
  if (c_const == 0.0) throw PreconditionError("example3 needs a nonzero C");
  const double u2 = -b_const / (2.0 * c_const);

  ExpPoly amplitude;
  std::optional<FormalSignal> signal;
  if (const auto* poly = std::get_if<ExpPoly>(&family)) {
    amplitude = *poly;
  } else {
    amplitude = ExpPoly::formal_symbol(0);
    signal = std::get<FormalSignal>(family);
  }
  if (amplitude.is_zero()) throw PreconditionError("example3 needs a nonvanishing A(t)");

  CaseStudy cs;
  cs.name = "example3";
  const std::vector<double> samples{0.0, 0.7, 1.9};

  {
    SystemSpec sys = structure_system("example3", example3_algebra());
    sys.formal_signal = signal;
    sys.drift = sys.term("I0", constant(b_const)) + sys.term("Id", constant(u2 * c_const));
    sys.controls.push_back(sys.term("X", amplitude));
    sys.sample_times = samples;
    sys.orbit_dim = 1;
    sys.validate();
    cs.structure = std::move(sys);
  }
  {
    // Monomials x^n, n < 6: I0 = x d/dx + 1, I- = -d/dx.
    const int n = 6;
    ComplexMatrix i0 = ComplexMatrix::Zero(n, n), im = ComplexMatrix::Zero(n, n);
    for (int p = 0; p < n; ++p) {
      i0(p, p) = p + 1.0;
      if (p > 0) im(p - 1, p) = -static_cast<double>(p);
    }
    SystemSpec sys;
    sys.name = "example3";
    sys.backend = Backend::matrix;
    sys.dim = n;
    sys.formal_signal = signal;
    sys.basis = {{"I0", i0}, {"X", -kI * i0 * im}, {"Id", ComplexMatrix::Identity(n, n)}};
    sys.drift = sys.term("I0", constant(b_const)) + sys.term("Id", constant(u2 * c_const));
    sys.controls.push_back(sys.term("X", amplitude));
    ComplexVector psi = ComplexVector::Zero(n);
    psi(1) = 1.0;
    psi(2) = 1.0;
    sys.initial_state = psi.normalized();
    sys.sample_times = samples;
    sys.orbit_dim = 1;
    sys.allow_non_skew = true;
    sys.validate();
    cs.matrix = std::move(sys);
  }
  cs.expected = ExpectedReport{1, 1, 2, 1, Verdict::strongly_controllable};
  cs.notes = {
      "H0 = B I0 + u2 C with u2 = -B/(2C); [H0, H1] = -B H1.",
      "A(t) defaults to a formal nonvanishing symbol, sampled as 2 + sin(t) for jets.",
      "ad(H0) has the real eigenvalue -B on X, so no finite skew-Hermitian realization exists; "
      "the monomial truncation is non-unitary and excluded from unitary propagation checks."};
  return cs;
}

CaseStudy build_drift2d(double x0, double y0) {
  CaseStudy cs;
  cs.name = "drift2d";
  ComplexMatrix dx = ComplexMatrix::Zero(3, 3), dy = ComplexMatrix::Zero(3, 3);
  dx(0, 2) = 1.0;
  dy(1, 2) = 1.0;
  SystemSpec sys;
  sys.name = "drift2d";
  sys.backend = Backend::matrix;
  sys.dim = 3;
  sys.basis = {{"Dx", dx}, {"Dy", dy}};
  sys.drift = sys.term("Dx", constant(1.0));
  sys.controls.push_back(sys.term("Dy", constant(1.0)));
  sys.initial_state = ComplexVector::Zero(3);
  sys.initial_state << x0, y0, 1.0;
  sys.sample_times = {0.0};
  sys.allow_non_skew = true;
  sys.validate();
  cs.matrix = std::move(sys);
  // y up for 0.7, y down for 0.4, then drift for 2: endpoint (x0 + 2, y0 + 0.3).
  cs.word = {WordArc::pulse(0, 1.0, 0.7), WordArc::pulse(0, -1.0, 0.4), WordArc::drift(2.0)};
  cs.notes = {"State (x, y, 1) in homogeneous coordinates; the generators commute."};
  return cs;
}

SystemSpec qubit_system(double omega, bool both_controls) {
  ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -kI, kI, 0;
  sz << 1, 0, 0, -1;
  SystemSpec sys;
  sys.name = both_controls ? "qubit-xy" : "qubit-x";
  sys.backend = Backend::matrix;
  sys.dim = 2;
  sys.basis = {{"Z", -kI * sz}, {"X", -kI * sx}, {"Y", -kI * sy}};
  sys.drift = sys.term("Z", constant(omega / 2.0));
  sys.controls.push_back(sys.term("X", constant(1.0)));
  if (both_controls) sys.controls.push_back(sys.term("Y", constant(1.0)));
  sys.initial_state = basis_state(2, 0);
  sys.sample_times = {0.0, 1.0};
  sys.validate();
  return sys;
}

const std::vector<std::string>& case_study_names() {
  static const std::vector<std::string> names{"example1", "example2", "example3", "drift2d"};
  return names;
}

CaseStudy build_case(const std::string& name) {
  if (name == "example1") return build_example1();
  if (name == "example2") return build_example2();
  if (name == "example3") return build_example3();
  if (name == "drift2d") return build_drift2d();
  throw InputError("case", "unknown case study '" + name + "'");
}

}  // namespace liereach
