// exppoly.hpp - scalar coefficient ring of polynomials times complex exponentials.
//
// An ExpPoly is a finite sum  sum_i c_i * t^{p_i} * exp(rate_i * t) * F_i(t),
// where F_i is a product of powers of a single formal signal A(t) and its
// derivatives A'(t), A''(t), ...  The formal factor lets systems carry an
// arbitrary (non exp-poly) scalar function; its derivatives are independent
// ring generators and are only given numeric values through a FormalSignal.

#pragma once

#include <complex>
#include <compare>
#include <vector>

namespace liereach {

using Complex = std::complex<double>;

// Concrete values for the formal symbol A(t) = offset + amplitude*sin(frequency*t + phase).
// Used wherever an ExpPoly carrying formal factors has to be evaluated.
struct FormalSignal {
  double offset = 2.0;
  double amplitude = 1.0;
  double frequency = 1.0;
  double phase = 0.0;

  // k-th time derivative of A at t.
  double derivative(int k, double t) const;

  bool operator==(const FormalSignal&) const = default;
};

// t^power * exp(rate*t) * prod_k (A^{(k)})^{formal[k]}; formal has no trailing zeros.
struct Monomial {
  int power = 0;
  Complex rate{0.0, 0.0};
  std::vector<int> formal;

  bool is_one() const { return power == 0 && rate == Complex{} && formal.empty(); }
  bool has_formal() const { return !formal.empty(); }

  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
};

struct ExpTerm {
  Complex coeff;
  Monomial mono;

  friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

class ExpPoly {
 public:
  ExpPoly() = default;

  static ExpPoly constant(Complex c);
  static ExpPoly term(Complex c, int power, Complex rate, std::vector<int> formal = {});
  // The formal symbol's order-th derivative A^{(order)}(t) with unit coefficient.
  static ExpPoly formal_symbol(int order = 0);

  // Terms in normal form: sorted by monomial, distinct monomials, no zero coefficients.
  const std::vector<ExpTerm>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  // True for c * 1 (including zero).
  bool is_constant() const;
  bool has_formal() const;

  ExpPoly derivative() const;

  // Throws RangeError on non-finite values and PreconditionError when formal
  // factors are present but no signal is supplied.
  Complex evaluate(double t, const FormalSignal* signal = nullptr) const;

  ExpPoly& operator+=(const ExpPoly& other);
  ExpPoly& operator-=(const ExpPoly& other);
  ExpPoly& operator*=(Complex s);

  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(ExpPoly a, Complex s) { return a *= s; }
  friend ExpPoly operator*(Complex s, ExpPoly a) { return a *= s; }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator-(ExpPoly a) { return a *= Complex{-1.0, 0.0}; }

  friend bool operator==(const ExpPoly&, const ExpPoly&) = default;

 private:
  explicit ExpPoly(std::vector<ExpTerm> terms);
  void normalize();

  std::vector<ExpTerm> terms_;
};

inline ExpPoly exppoly_mul(const ExpPoly& a, const ExpPoly& b) { return a * b; }
inline ExpPoly exppoly_deriv(const ExpPoly& a) { return a.derivative(); }

}  // namespace liereach
