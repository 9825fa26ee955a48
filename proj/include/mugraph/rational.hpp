#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace mugraph {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sgn(const Integer& n) { return n.sign(); }
inline int sgn(const Rational& q) { return q.sign(); }

// boost rejects negative denominators at construction, so normalize the sign first.
inline Rational make_rational(Integer num, Integer den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(std::move(num), std::move(den));
}

inline std::string to_string(const Rational& q) {
  const Integer& n = numerator(q);
  const Integer& d = denominator(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

// Accepts [-+]?digits or [-+]?digits/digits; the denominator literal is unsigned.
inline Rational parse_rational(std::string_view text) {
  const auto fail = [&]() -> void {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  const auto digits = [&](Integer& out) {
    if (i >= text.size() || text[i] < '0' || text[i] > '9') fail();
    out = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      out = out * 10 + (text[i] - '0');
      ++i;
    }
  };
  Integer num;
  digits(num);
  Integer den = 1;
  if (i < text.size() && text[i] == '/') {
    ++i;
    digits(den);
    if (den == 0) fail();
  }
  if (i != text.size()) fail();
  if (negative) num = -num;
  return Rational(std::move(num), std::move(den));
}

inline Integer floor_int(const Rational& q) {
  const Integer& n = numerator(q);
  const Integer& d = denominator(q);
  Integer t = n / d;  // truncates toward zero
  if (n < 0 && t * d != n) --t;
  return t;
}

inline Integer ceil_int(const Rational& q) { return -floor_int(-q); }

// Least s/d >= sqrt(x) on the grid d = ceil(2/tol); overshoot is at most 2/d <= tol.
inline Rational sqrt_upper(const Rational& x, const Rational& tol) {
  if (sgn(x) < 0) throw std::invalid_argument("sqrt_upper of a negative value");
  if (sgn(tol) <= 0) throw std::invalid_argument("sqrt_upper needs a positive tolerance");
  const Integer d = ceil_int(Rational(2) / tol);
  const Integer scaled = ceil_int(x * Rational(d) * Rational(d));
  Integer s = sqrt(scaled);
  if (s * s < scaled) ++s;
  return make_rational(std::move(s), d);
}

}  // namespace mugraph
