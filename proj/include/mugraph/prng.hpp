#pragma once

#include "mugraph/rational.hpp"

#include <cstdint>
#include <stdexcept>

namespace mugraph {

// xorshift64* generator. Fixed algorithm, never seeded from entropy: every
// corpus and CLI draw must be reproducible from the seed alone.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed)
      : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dull;
  }

  // Uniform in [0, m); the modulo bias is irrelevant at our sizes.
  std::uint64_t below(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("below(0)");
    return next() % m;
  }

  // True with probability exactly floor(p * 2^64) / 2^64.
  bool bernoulli(const Rational& p) {
    if (sgn(p) < 0 || p > 1) throw std::invalid_argument("probability out of [0, 1]");
    const Integer two64 = Integer(1) << 64;
    const Integer threshold = floor_int(Rational(p * two64));
    return Integer(next()) < threshold;
  }

  // A rational in [lo, hi] with denominator at most max_den, uniform over a
  // random denominator's grid points inside the interval.
  Rational rational_in(const Rational& lo, const Rational& hi, int max_den) {
    if (lo > hi || max_den < 1) throw std::invalid_argument("bad rational_in parameters");
    for (int attempt = 0; attempt < 256; ++attempt) {
      const Integer den = 1 + Integer(below(static_cast<std::uint64_t>(max_den)));
      const Integer first = ceil_int(Rational(lo * den));
      const Integer last = floor_int(Rational(hi * den));
      if (first > last) continue;
      const Integer count = last - first + 1;
      if (count > 1000000000) throw std::invalid_argument("interval too wide for grid sampling");
      const Integer num = first + Integer(below(count.convert_to<std::uint64_t>()));
      return make_rational(num, den);
    }
    throw std::invalid_argument("interval holds no rational with the given denominator bound");
  }

 private:
  std::uint64_t state_;
};

}  // namespace mugraph
