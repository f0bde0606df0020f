#include "liereach/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "liereach/errors.hpp"

namespace liereach {

double FormalSignal::derivative(int k, double t) const {
  // d^k/dt^k sin(w t + phi) = w^k sin(w t + phi + k pi/2)
  const double shifted = frequency * t + phase + k * std::numbers::pi / 2.0;
  double value = amplitude * std::pow(frequency, k) * std::sin(shifted);
  if (k == 0) value += offset;
  return value;
}

namespace {

// Largest accepted real part of rate*t. exp(709.8) is the double overflow point;
// the margin leaves room for the polynomial factor and matrix products downstream.
constexpr double kMaxExponent = 690.0;

void trim(std::vector<int>& formal) {
  while (!formal.empty() && formal.back() == 0) formal.pop_back();
}

}  // namespace

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.power = power + other.power;
  out.rate = rate + other.rate;
  out.formal.assign(std::max(formal.size(), other.formal.size()), 0);
  for (std::size_t k = 0; k < formal.size(); ++k) out.formal[k] += formal[k];
  for (std::size_t k = 0; k < other.formal.size(); ++k) out.formal[k] += other.formal[k];
  trim(out.formal);
  return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.power <=> b.power; c != 0) return c;
  auto cmp = [](double x, double y) {
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  };
  if (auto c = cmp(a.rate.real(), b.rate.real()); c != 0) return c;
  if (auto c = cmp(a.rate.imag(), b.rate.imag()); c != 0) return c;
  return a.formal <=> b.formal;
}

ExpPoly::ExpPoly(std::vector<ExpTerm> terms) : terms_(std::move(terms)) { normalize(); }

ExpPoly ExpPoly::constant(Complex c) { return ExpPoly({ExpTerm{c, Monomial{}}}); }

ExpPoly ExpPoly::term(Complex c, int power, Complex rate, std::vector<int> formal) {
  if (power < 0) throw PreconditionError("exp-poly power must be non-negative");
  for (int e : formal)
    if (e < 0) throw PreconditionError("formal exponents must be non-negative");
  trim(formal);
  return ExpPoly({ExpTerm{c, Monomial{power, rate, std::move(formal)}}});
}

ExpPoly ExpPoly::formal_symbol(int order) {
  std::vector<int> formal(static_cast<std::size_t>(order) + 1, 0);
  formal[static_cast<std::size_t>(order)] = 1;
  return term(1.0, 0, 0.0, std::move(formal));
}

void ExpPoly::normalize() {
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const ExpTerm& a, const ExpTerm& b) { return a.mono < b.mono; });
  std::vector<ExpTerm> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().mono == t.mono)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const ExpTerm& t) { return t.coeff == Complex{}; });
  terms_ = std::move(merged);
}

bool ExpPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
}

bool ExpPoly::has_formal() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const ExpTerm& t) { return t.mono.has_formal(); });
}

ExpPoly ExpPoly::derivative() const {
  std::vector<ExpTerm> out;
  for (const auto& t : terms_) {
    if (t.mono.rate != Complex{}) out.push_back({t.coeff * t.mono.rate, t.mono});
    if (t.mono.power > 0) {
      Monomial m = t.mono;
      m.power -= 1;
      out.push_back({t.coeff * static_cast<double>(t.mono.power), m});
    }
    // product rule over the formal factors: d (A^{(k)})^e = e (A^{(k)})^{e-1} A^{(k+1)}
    for (std::size_t k = 0; k < t.mono.formal.size(); ++k) {
      const int e = t.mono.formal[k];
      if (e == 0) continue;
      Monomial m = t.mono;
      m.formal[k] -= 1;
      if (m.formal.size() <= k + 1) m.formal.resize(k + 2, 0);
      m.formal[k + 1] += 1;
      trim(m.formal);
      out.push_back({t.coeff * static_cast<double>(e), m});
    }
  }
  return ExpPoly(std::move(out));
}

Complex ExpPoly::evaluate(double t, const FormalSignal* signal) const {
  Complex sum{};
  for (const auto& term : terms_) {
    const Complex exponent = term.mono.rate * t;
    if (exponent.real() > kMaxExponent)
      throw RangeError("exponential coefficient overflows at t = " + std::to_string(t));
    Complex v = term.coeff * std::exp(exponent);
    if (term.mono.power > 0) v *= std::pow(t, term.mono.power);
    if (term.mono.has_formal()) {
      if (signal == nullptr)
        throw PreconditionError("formal coefficient evaluated without a formal signal");
      for (std::size_t k = 0; k < term.mono.formal.size(); ++k)
        if (term.mono.formal[k] > 0)
          v *= std::pow(signal->derivative(static_cast<int>(k), t), term.mono.formal[k]);
    }
    sum += v;
  }
  if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
    throw RangeError("exp-poly evaluation is not finite at t = " + std::to_string(t));
  return sum;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  normalize();
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& other) { return *this += -other; }

ExpPoly& ExpPoly::operator*=(Complex s) {
  for (auto& t : terms_) t.coeff *= s;
  normalize();
  return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  std::vector<ExpTerm> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) out.push_back({x.coeff * y.coeff, x.mono * y.mono});
  return ExpPoly(std::move(out));
}

}  // namespace liereach
