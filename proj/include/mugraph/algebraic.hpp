#pragma once

#include "mugraph/polynomial.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mugraph {

// Open interval with rational endpoints, lo < hi.
struct Interval {
  Rational lo;
  Rational hi;

  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo >= hi) throw std::invalid_argument("interval endpoints out of order");
  }
  Rational midpoint() const { return (lo + hi) / 2; }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& q) const { return lo < q && q < hi; }
};

// Sturm sequence of p: p, p', then negated euclidean remainders, each scaled to
// a primitive integer form (positive scaling preserves sign variations).
class SturmChain {
 public:
  explicit SturmChain(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("sturm chain of the zero polynomial");
    seq_.push_back(p);
    Polynomial d = p.derivative();
    if (!d.is_zero()) seq_.push_back(primitive_scaled(d));
    while (seq_.size() >= 2 && !seq_.back().is_zero()) {
      Polynomial r = divmod(seq_[seq_.size() - 2], seq_.back()).second;
      if (r.is_zero()) break;
      seq_.push_back(primitive_scaled(-r));
    }
  }

  const std::vector<Polynomial>& sequence() const { return seq_; }

  int variations_at(const Rational& at) const {
    int count = 0;
    int prev = 0;
    for (const auto& s : seq_) {
      const int cur = sgn(s.eval(at));
      if (cur == 0) continue;
      if (prev != 0 && cur != prev) ++count;
      prev = cur;
    }
    return count;
  }

  // Distinct roots of p in the open interval; endpoints must not be roots.
  int count_roots(const Rational& lo, const Rational& hi) const {
    if (lo >= hi) throw std::invalid_argument("interval endpoints out of order");
    if (sgn(seq_.front().eval(lo)) == 0 || sgn(seq_.front().eval(hi)) == 0)
      throw std::invalid_argument("interval endpoint is a root");
    return variations_at(lo) - variations_at(hi);
  }

 private:
  std::vector<Polynomial> seq_;
};

namespace detail {

// Process-wide memo for the theta-independent algebra that sign queries
// repeat verbatim: classifying every root of a graph against every vertex
// pair asks for the same gcds, square-free parts and Sturm chains thousands
// of times. Entries are pure functions of their keys, so a hit changes
// running time, never a result. Single-threaded like the rest of the
// library; flushed wholesale past a size cap to keep memory bounded.
struct AlgebraMemo {
  using Key = std::vector<Rational>;
  static constexpr std::size_t kEntryCap = 4096;

  std::map<Key, Polynomial> squarefree;
  std::map<std::pair<Key, Key>, Polynomial> gcds;
  std::map<Key, std::shared_ptr<const SturmChain>> chains;

  static AlgebraMemo& instance() {
    static AlgebraMemo memo;
    return memo;
  }

  void trim() {
    if (squarefree.size() + gcds.size() + chains.size() > kEntryCap) {
      squarefree.clear();
      gcds.clear();
      chains.clear();
    }
  }
};

inline Polynomial cached_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.degree() < 1 || b.degree() < 1) return gcd(a, b);
  auto& memo = AlgebraMemo::instance();
  auto key = std::make_pair(a.coefficients(), b.coefficients());
  if (key.second < key.first) std::swap(key.first, key.second);  // gcd is symmetric
  const auto it = memo.gcds.find(key);
  if (it != memo.gcds.end()) return it->second;
  memo.trim();
  return memo.gcds.emplace(std::move(key), gcd(a, b)).first->second;
}

inline Polynomial cached_squarefree(const Polynomial& p) {
  if (p.degree() < 2) return squarefree_part(p);
  auto& memo = AlgebraMemo::instance();
  const auto it = memo.squarefree.find(p.coefficients());
  if (it != memo.squarefree.end()) return it->second;
  memo.trim();
  return memo.squarefree.emplace(p.coefficients(), squarefree_part(p)).first->second;
}

inline std::shared_ptr<const SturmChain> cached_chain(const Polynomial& p) {
  auto& memo = AlgebraMemo::instance();
  const auto it = memo.chains.find(p.coefficients());
  if (it != memo.chains.end()) return it->second;
  memo.trim();
  return memo.chains.emplace(p.coefficients(), std::make_shared<const SturmChain>(p)).first->second;
}

}  // namespace detail

inline int count_roots(const Polynomial& p, const Interval& iv) {
  return detail::cached_chain(p)->count_roots(iv.lo, iv.hi);
}

// A real algebraic number: the unique root of a monic square-free witness
// inside an open isolating interval whose endpoints are not roots.
struct AlgebraicNumber {
  Polynomial witness;
  Interval iv;

  static AlgebraicNumber from_rational(const Rational& r) {
    return AlgebraicNumber{Polynomial::linear(r), Interval(r - 1, r + 1)};
  }

  // Exact value when the witness is linear.
  bool is_rational() const { return witness.degree() == 1; }
  Rational rational_value() const {
    if (!is_rational()) throw std::logic_error("algebraic number is not represented as rational");
    return -witness.coeff(0);
  }
};

namespace detail {

// A point in (lo, hi) that is not a root of guard; probes midpoints of
// repeatedly halved left subintervals, which must terminate since guard has
// finitely many roots.
inline Rational interior_nonroot(const Rational& lo, const Rational& hi, const Polynomial& guard) {
  Rational right = hi;
  for (;;) {
    Rational mid = (lo + right) / 2;
    if (sgn(guard.eval(mid)) != 0) return mid;
    right = mid;
  }
}

// Does the (square-free) polynomial g, which has at most one root between the
// endpoints and vanishes at neither, change sign across the interval?
inline bool sign_change(const Polynomial& g, const Interval& iv) {
  return sgn(g.eval(iv.lo)) * sgn(g.eval(iv.hi)) < 0;
}

// Halve the isolating interval, keeping the witness root strictly inside and
// choosing the new endpoint to avoid roots of guard as well.
inline void bisect_once(AlgebraicNumber& t, const Polynomial& guard) {
  const Polynomial fence = t.witness * guard;
  const Rational mid = interior_nonroot(t.iv.lo, t.iv.hi, fence);
  if (sgn(t.witness.eval(t.iv.lo)) * sgn(t.witness.eval(mid)) < 0)
    t.iv = Interval(t.iv.lo, mid);
  else
    t.iv = Interval(mid, t.iv.hi);
}

// Replace any interval endpoint that is a root of guard by a nearby interior
// point on the same side of the witness root.
inline void repair_endpoints(AlgebraicNumber& t, const Polynomial& guard) {
  const Polynomial fence = t.witness * guard;
  if (sgn(guard.eval(t.iv.lo)) == 0) {
    for (;;) {
      const Rational cand = interior_nonroot(t.iv.lo, t.iv.hi, fence);
      if (sgn(t.witness.eval(cand)) * sgn(t.witness.eval(t.iv.hi)) < 0) {
        t.iv = Interval(cand, t.iv.hi);  // root lies right of cand
        break;
      }
      t.iv = Interval(t.iv.lo, cand);  // root left of cand: shrink and retry
    }
  }
  if (sgn(guard.eval(t.iv.hi)) == 0) {
    for (;;) {
      const Rational cand = interior_nonroot(t.iv.lo, t.iv.hi, fence);
      if (sgn(t.witness.eval(t.iv.lo)) * sgn(t.witness.eval(cand)) < 0) {
        t.iv = Interval(t.iv.lo, cand);
        break;
      }
      t.iv = Interval(cand, t.iv.hi);
    }
  }
}

}  // namespace detail

// Shrink theta's isolating interval until the square-free part of avoid has no
// root in the closed interval other than possibly theta itself; the returned
// endpoints are roots of neither witness nor avoid.
inline AlgebraicNumber refine(const AlgebraicNumber& theta, const Polynomial& avoid) {
  if (avoid.is_zero()) throw std::invalid_argument("refine against the zero polynomial");
  const Polynomial a = detail::cached_squarefree(avoid);
  AlgebraicNumber t = theta;
  if (a.degree() == 0) return t;
  detail::repair_endpoints(t, a);
  const auto chain = detail::cached_chain(a);
  const Polynomial shared = detail::cached_gcd(t.witness, a);
  for (;;) {
    const int other = chain->count_roots(t.iv.lo, t.iv.hi);
    if (other == 0) return t;
    if (other == 1 && shared.degree() >= 1 && detail::sign_change(shared, t.iv)) return t;
    detail::bisect_once(t, a);
  }
}

// Sign of p at theta: exact zero detection through the shared factor with the
// witness, otherwise the constant sign of p on a refined punctured interval.
inline int sign_at(const Polynomial& p, const AlgebraicNumber& theta) {
  if (p.is_zero()) throw std::invalid_argument("sign of the zero polynomial");
  if (p.degree() == 0) return sgn(p.coeff(0));
  const Polynomial shared = detail::cached_gcd(p, theta.witness);
  if (shared.degree() >= 1 && detail::sign_change(shared, theta.iv)) return 0;
  const AlgebraicNumber t = refine(theta, p);
  return sgn(p.eval(t.iv.midpoint()));
}

// Multiplicity of theta as a root of p: strip shared factors with the witness
// until the shared factor no longer vanishes at theta.
inline int multiplicity_at(const Polynomial& p, const AlgebraicNumber& theta) {
  if (p.is_zero()) throw std::invalid_argument("multiplicity in the zero polynomial");
  Polynomial q = p;
  int k = 0;
  for (;;) {
    if (q.degree() == 0) return k;
    const Polynomial shared = detail::cached_gcd(q, theta.witness);
    if (shared.degree() < 1 || !detail::sign_change(shared, theta.iv)) return k;
    ++k;
    q = exact_div(q, shared);
  }
}

// Three-way comparison of theta with a rational point: -1, 0, +1.
inline int compare(const AlgebraicNumber& theta, const Rational& r) {
  if (!theta.iv.contains(r)) return theta.iv.hi <= r ? -1 : 1;
  const int at = sgn(theta.witness.eval(r));
  if (at == 0) return 0;  // r inside the isolating interval and a witness root: r is theta
  // theta lies left of r iff the witness changes sign on (lo, r).
  return sgn(theta.witness.eval(theta.iv.lo)) * at < 0 ? -1 : 1;
}

// Three-way comparison of two algebraic numbers; equality is decided by a
// shared witness factor rooted in the overlap of the isolating intervals.
inline int compare(const AlgebraicNumber& a0, const AlgebraicNumber& b0) {
  AlgebraicNumber a = refine(a0, b0.witness);
  AlgebraicNumber b = refine(b0, a0.witness);
  const Polynomial shared = detail::cached_gcd(a.witness, b.witness);
  for (;;) {
    if (a.iv.hi <= b.iv.lo) return -1;
    if (b.iv.hi <= a.iv.lo) return 1;
    if (shared.degree() >= 1) {
      const Rational lo = std::max(a.iv.lo, b.iv.lo);
      const Rational hi = std::min(a.iv.hi, b.iv.hi);
      // Overlap endpoints were refined away from roots of both witnesses.
      if (lo < hi && sgn(shared.eval(lo)) * sgn(shared.eval(hi)) < 0) return 0;
    }
    detail::bisect_once(a, b.witness);
    detail::bisect_once(b, a.witness);
  }
}

inline bool equal(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) == 0; }

namespace detail {

// A rational in [lo, hi] of minimal denominator, by Stern-Brocot descent: the
// recursion follows the shared continued-fraction prefix of the endpoints,
// which is finite.
inline Rational simplest_in(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("empty interval");
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
  if (sgn(hi) < 0) return Rational(-simplest_in(-hi, -lo));
  const Integer fl = floor_int(lo);
  if (lo == fl) return lo;
  if (fl + 1 <= hi) return Rational(fl + 1);
  const Rational inner = simplest_in(1 / (hi - fl), 1 / (lo - fl));
  return Rational(fl + 1 / inner);
}

// Best-effort switch to a linear witness when the isolated root is rational.
// A rational root of a monic witness has denominator dividing the lcm of the
// coefficient denominators; once the interval is narrower than 1/bound^2 it
// contains at most one rational of denominator <= bound, necessarily the
// simplest one, so a single evaluation decides. The bound is capped, so a
// root may stay in irrational representation; nothing downstream depends on
// the representation, only printing and witness size do.
inline void normalize_rational_root(AlgebraicNumber& t) {
  if (t.witness.degree() == 1) return;
  Integer bound = 1;
  for (int k = 0; k <= t.witness.degree(); ++k)
    bound = lcm(bound, denominator(t.witness.coeff(k)));
  if (bound > 1000000) bound = 1000000;
  Rational lo = t.iv.lo;
  Rational hi = t.iv.hi;
  const int slo = sgn(t.witness.eval(lo));
  while ((hi - lo) * bound * bound >= 1) {
    const Rational mid = (lo + hi) / 2;
    const int smid = sgn(t.witness.eval(mid));
    if (smid == 0) {
      t = AlgebraicNumber{Polynomial::linear(mid), Interval(lo, hi)};
      return;
    }
    (smid == slo ? lo : hi) = mid;
  }
  const Rational candidate = simplest_in(lo, hi);
  if (sgn(t.witness.eval(candidate)) == 0)
    t = AlgebraicNumber{Polynomial::linear(candidate), Interval(lo, hi)};
  else
    t.iv = Interval(lo, hi);
}

}  // namespace detail

// Isolating intervals for the distinct real roots of p inside (lo, hi), in
// ascending order; the bracket endpoints must not be roots. Rational roots
// come back with a linear witness when detection succeeds.
inline std::vector<AlgebraicNumber> isolate_roots_in(const Polynomial& p, const Rational& lo,
                                                     const Rational& hi) {
  if (p.is_zero()) throw std::invalid_argument("isolating roots of the zero polynomial");
  const Polynomial sq = detail::cached_squarefree(p);
  if (sq.degree() == 0) return {};
  const auto chain = detail::cached_chain(sq);
  std::vector<AlgebraicNumber> out;
  struct Piece {
    Rational lo, hi;
    int vlo, vhi;
  };
  std::vector<Piece> stack;
  stack.push_back({lo, hi, chain->variations_at(lo), chain->variations_at(hi)});
  if (sgn(sq.eval(lo)) == 0 || sgn(sq.eval(hi)) == 0)
    throw std::invalid_argument("isolation bracket endpoint is a root");
  while (!stack.empty()) {
    Piece piece = stack.back();
    stack.pop_back();
    const int count = piece.vlo - piece.vhi;
    if (count == 0) continue;
    if (count == 1) {
      AlgebraicNumber root{sq, Interval(piece.lo, piece.hi)};
      detail::normalize_rational_root(root);
      out.emplace_back(std::move(root));
      continue;
    }
    const Rational mid = detail::interior_nonroot(piece.lo, piece.hi, sq);
    const int vmid = chain->variations_at(mid);
    stack.push_back({mid, piece.hi, vmid, piece.vhi});
    stack.push_back({piece.lo, mid, piece.vlo, vmid});
  }
  std::sort(out.begin(), out.end(),
            [](const AlgebraicNumber& x, const AlgebraicNumber& y) { return x.iv.lo < y.iv.lo; });
  return out;
}

// Cauchy bound: all real roots of p lie strictly inside (-b, b).
inline Rational root_bound(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("root bound of the zero polynomial");
  Rational m(0);
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coeff(k) / p.leading())));
  return m + 1;
}

inline std::vector<AlgebraicNumber> isolate_roots(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("isolating roots of the zero polynomial");
  if (p.degree() == 0) return {};
  const Rational b = root_bound(p);
  return isolate_roots_in(p, -b, b);
}

// Distinct roots paired with multiplicities, ascending.
inline std::vector<std::pair<AlgebraicNumber, int>> roots_with_multiplicity(const Polynomial& p) {
  std::vector<std::pair<AlgebraicNumber, int>> out;
  for (auto& r : isolate_roots(p)) {
    const int m = multiplicity_at(p, r);
    out.emplace_back(std::move(r), m);
  }
  return out;
}

// Decimal point estimate for display only; all decisions are exact.
inline double approx(const AlgebraicNumber& theta) {
  AlgebraicNumber t = theta;
  const Rational eps = make_rational(1, 1000000000);
  while (t.iv.width() > eps) detail::bisect_once(t, Polynomial::one());
  return t.iv.midpoint().convert_to<double>();
}

}  // namespace mugraph
