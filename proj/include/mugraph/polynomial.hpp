#pragma once

#include "mugraph/rational.hpp"

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mugraph {

// Dense univariate polynomial over Rational, coefficients lowest degree first.
// Invariant: no trailing zero coefficients; the zero polynomial is the empty
// vector and has degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Rational> lowest_first) : c_(lowest_first) { normalize(); }
  explicit Polynomial(Rational constant) {
    c_.push_back(std::move(constant));
    normalize();
  }

  static Polynomial zero() { return {}; }
  static Polynomial one() { return Polynomial(Rational(1)); }
  static Polynomial x() { return Polynomial{Rational(0), Rational(1)}; }
  // x - r
  static Polynomial linear(const Rational& r) { return Polynomial{-r, Rational(1)}; }
  static Polynomial from_coefficients(std::vector<Rational> lowest_first) {
    Polynomial p;
    p.c_ = std::move(lowest_first);
    p.normalize();
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
    return c_[static_cast<std::size_t>(k)];
  }
  const Rational& leading() const {
    if (is_zero()) throw std::logic_error("leading coefficient of the zero polynomial");
    return c_.back();
  }

  Rational eval(const Rational& at) const {
    Rational acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * at + c_[k];
    return acc;
  }

  Polynomial derivative() const {
    Polynomial d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.c_.push_back(c_[k] * Rational(static_cast<long>(k)));
    d.normalize();
    return d;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    normalize();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    normalize();
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      c_.clear();
      return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Polynomial p;
    p.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) p.c_[i + j] += a.c_[i] * b.c_[j];
    }
    p.normalize();
    return p;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void normalize() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<Rational> rem(a.coefficients());
  const int db = b.degree();
  const Rational& lead = b.leading();
  if (a.degree() < db) return {Polynomial::zero(), a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db) + 1, Rational(0));
  for (int k = a.degree(); k >= db; --k) {
    const Rational c = rem[static_cast<std::size_t>(k)] / lead;
    if (sgn(c) == 0) continue;
    quot[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeff(j);
  }
  return {Polynomial::from_coefficients(std::move(quot)), Polynomial::from_coefficients(std::move(rem))};
}

inline Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("polynomial division left a remainder");
  return q;
}

inline bool divides(const Polynomial& d, const Polynomial& p) {
  if (d.is_zero()) return p.is_zero();
  return divmod(p, d).second.is_zero();
}

inline Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("monic of the zero polynomial");
  return p * (Rational(1) / p.leading());
}

// Positive scalar multiple of p with coprime integer coefficients.
inline Polynomial primitive_scaled(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den_lcm = 1;
  for (const auto& c : p.coefficients()) den_lcm = lcm(den_lcm, denominator(c));
  Integer num_gcd = 0;
  std::vector<Integer> scaled;
  scaled.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) {
    Integer n = numerator(c) * (den_lcm / denominator(c));
    num_gcd = gcd(num_gcd, n);
    scaled.push_back(std::move(n));
  }
  std::vector<Rational> out;
  out.reserve(scaled.size());
  for (auto& n : scaled) out.emplace_back(n / num_gcd);
  return Polynomial::from_coefficients(std::move(out));
}

// Monic greatest common divisor; gcd(p, 0) = monic(p). Both zero is an error.
inline Polynomial gcd(const Polynomial& a0, const Polynomial& b0) {
  if (a0.is_zero() && b0.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  Polynomial a = a0;
  Polynomial b = b0;
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = primitive_scaled(r);  // positive scaling keeps the gcd
  }
  return monic(a);
}

inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree part of the zero polynomial");
  if (p.degree() == 0) return Polynomial::one();
  return monic(exact_div(p, gcd(p, p.derivative())));
}

inline std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational c = p.coeff(k);
    if (sgn(c) == 0) continue;
    const bool first = out.empty();
    if (first) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    const Rational mag = abs(c);
    const bool unit = mag == 1 && k > 0;
    if (!unit) out += to_string(mag);
    if (k > 0) {
      if (!unit) out += "*";
      out += "x";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace mugraph
