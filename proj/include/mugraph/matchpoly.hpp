#pragma once

#include "mugraph/algebraic.hpp"
#include "mugraph/graph.hpp"
#include "mugraph/verdict.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mugraph {

namespace detail {

// mu over the subgraph on `mask`, by deleting the lowest present vertex i:
//   mu(G) = (x - r_i) mu(G\i) + sum_j lambda_ij mu(G\{i,j}).
// Results are memoized in the universe-wide cache; the recursion depth is at
// most the vertex count.
inline Polynomial mu_masked(const WeightedGraph& g, std::uint64_t mask) {
  MuCache& cache = *g.mu_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mtx);
    auto it = cache.map.find(mask);
    if (it != cache.map.end()) return it->second;
  }
  Polynomial result;
  if (mask == 0) {
    result = Polynomial::one();
  } else {
    const int i = __builtin_ctzll(mask);
    const std::uint64_t rest = mask & (mask - 1);
    result = Polynomial::linear(g.offset(i)) * mu_masked(g, rest);
    for (int j : VertexSet::from_bits(rest)) {
      const Rational& lambda = g.weight(i, j);
      if (sgn(lambda) == 0) continue;
      result += lambda * mu_masked(g, rest & ~(std::uint64_t{1} << j));
    }
  }
  std::lock_guard<std::mutex> lock(cache.mtx);
  return cache.map.emplace(mask, std::move(result)).first->second;
}

}  // namespace detail

// Weighted matching polynomial of the present subgraph; mu of the empty graph
// is 1.
inline Polynomial matching_polynomial(const WeightedGraph& g) {
  return detail::mu_masked(g, g.present().bits());
}

// Same recurrence with an explicit pivot order and a private memo. The result
// must not depend on the order; tests rely on this route being independent of
// the shared cache.
inline Polynomial matching_polynomial_with_order(const WeightedGraph& g,
                                                 const std::vector<int>& order) {
  for (int v : g.present())
    if (std::find(order.begin(), order.end(), v) == order.end())
      throw std::invalid_argument("pivot order must cover every present vertex");
  std::unordered_map<std::uint64_t, Polynomial> memo;
  const auto rec = [&](const auto& self, std::uint64_t mask) -> Polynomial {
    if (mask == 0) return Polynomial::one();
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int i = -1;
    for (int v : order)
      if (mask & (std::uint64_t{1} << v)) {
        i = v;
        break;
      }
    const std::uint64_t rest = mask & ~(std::uint64_t{1} << i);
    Polynomial result = Polynomial::linear(g.offset(i)) * self(self, rest);
    for (int j : VertexSet::from_bits(rest)) {
      const Rational& lambda = g.weight(i, j);
      if (sgn(lambda) == 0) continue;
      result += lambda * self(self, rest & ~(std::uint64_t{1} << j));
    }
    return memo.emplace(mask, std::move(result)).first->second;
  };
  return rec(rec, g.present().bits());
}

// Independent oracle route: a direct sum over all matchings,
//   mu(G) = sum_M prod_{i not covered} (x - r_i) prod_{jk in M} lambda_jk.
inline Polynomial matching_polynomial_bruteforce(const WeightedGraph& g) {
  if (g.vertex_count() > 16)
    throw std::invalid_argument("brute-force matching polynomial is limited to 16 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int u : g.present())
    for (int v : g.present())
      if (u < v && g.adjacent(u, v)) edges.emplace_back(u, v);
  Polynomial total;
  const auto rec = [&](const auto& self, std::size_t idx, VertexSet covered,
                       const Rational& weight) -> void {
    if (idx == edges.size()) {
      Polynomial term(weight);
      for (int v : g.present() - covered) term = term * Polynomial::linear(g.offset(v));
      total += term;
      return;
    }
    self(self, idx + 1, covered, weight);
    const auto& [u, v] = edges[idx];
    if (!covered.contains(u) && !covered.contains(v))
      self(self, idx + 1, covered.with(u).with(v), weight * g.weight(u, v));
  };
  rec(rec, 0, VertexSet(), Rational(1));
  return total;
}

// Ratio of matching polynomials; kept unreduced so multiplicities at a point
// stay inspectable, reduced() divides out the gcd.
struct RationalFunction {
  Polynomial num;
  Polynomial den;

  RationalFunction reduced() const {
    if (num.is_zero()) return {Polynomial::zero(), Polynomial::one()};
    const Polynomial g = mugraph::gcd(num, den);
    return {exact_div(num, g), exact_div(den, g)};
  }
};

// alpha_i(G) = mu(G) / mu(G\i).
inline RationalFunction alpha(const WeightedGraph& g, int i) {
  if (!g.has_vertex(i)) throw std::invalid_argument("vertex not present");
  return {matching_polynomial(g), matching_polynomial(g.delete_vertex(i))};
}

// mu(G)' = sum_i mu(G\i) over present vertices.
inline Verdict derivative_identity_check(const WeightedGraph& g) {
  Polynomial rhs;
  for (int v : g.present()) rhs += matching_polynomial(g.delete_vertex(v));
  const Polynomial residual = matching_polynomial(g).derivative() - rhs;
  if (residual.is_zero()) return Verdict::pass();
  return Verdict::fail("derivative identity residual " + to_string(residual));
}

namespace detail {

// sum over i-j paths c of (prod_e -lambda_e) mu(G\c)^2, accumulated per path
// vertex set before squaring (orderings of the same set share the factor).
inline Polynomial path_square_sum(const WeightedGraph& g, int i, int j) {
  std::unordered_map<std::uint64_t, Rational> weight_by_set;
  std::vector<int> stack;
  VertexSet used = VertexSet::single(i);
  const auto dfs = [&](const auto& self, int at, const Rational& w) -> void {
    if (at == j) {
      auto [it, fresh] = weight_by_set.emplace(used.bits(), w);
      if (!fresh) it->second += w;
      return;
    }
    for (int u : g.neighbors(at)) {
      if (used.contains(u)) continue;
      used.insert(u);
      self(self, u, Rational(w * -g.weight(at, u)));
      used.erase(u);
    }
  };
  dfs(dfs, i, Rational(1));
  Polynomial acc;
  for (const auto& [bits, w] : weight_by_set) {
    const Polynomial rest = mu_masked(g, g.present().bits() & ~bits);
    acc += w * (rest * rest);
  }
  return acc;
}

}  // namespace detail

// mu(G\i) mu(G\j) - mu(G\{i,j}) mu(G) = sum_{paths c: i -> j} lambda_c mu(G\c)^2.
inline Verdict christoffel_darboux_check(const WeightedGraph& g, int i, int j) {
  if (!g.has_vertex(i) || !g.has_vertex(j) || i == j)
    throw std::invalid_argument("needs two distinct present vertices");
  const Polynomial lhs = matching_polynomial(g.delete_vertex(i)) *
                             matching_polynomial(g.delete_vertex(j)) -
                         matching_polynomial(g.delete_vertex(i).delete_vertex(j)) *
                             matching_polynomial(g);
  const Polynomial rhs = detail::path_square_sum(g, i, j);
  const Polynomial residual = lhs - rhs;
  if (residual.is_zero()) return Verdict::pass();
  return Verdict::fail("christoffel-darboux residual " + to_string(residual));
}

// lambda_{i~j} = num/den with num = -sum_c lambda_c mu(G\c)^2 and
// den = mu(G\{i,j})^2; a rational function of x, <= 0 wherever defined.
struct ContractionWeight {
  int i = 0;
  int j = 0;
  Polynomial num;
  Polynomial den;
};

enum class ContractionClass { Zero, FiniteNegative, MinusInfinity };

inline const char* to_string(ContractionClass c) {
  switch (c) {
    case ContractionClass::Zero: return "zero";
    case ContractionClass::FiniteNegative: return "finite-negative";
    default: return "minus-infinity";
  }
}

namespace detail {

inline ContractionWeight contraction_weight_unchecked(const WeightedGraph& g, int i, int j) {
  if (!g.has_vertex(i) || !g.has_vertex(j) || i == j)
    throw std::invalid_argument("needs two distinct present vertices");
  const Polynomial mu_ij = matching_polynomial(g.delete_vertex(i).delete_vertex(j));
  return {i, j, -path_square_sum(g, i, j), mu_ij * mu_ij};
}

}  // namespace detail

// Cross-multiplied form of alpha_i(G) = alpha_i(G\j) + lambda_{i~j} / alpha_j(G\i).
inline Verdict contraction_identity_check(const WeightedGraph& g, int i, int j) {
  const ContractionWeight w = detail::contraction_weight_unchecked(g, i, j);
  const Polynomial mu_g = matching_polynomial(g);
  const Polynomial mu_i = matching_polynomial(g.delete_vertex(i));
  const Polynomial mu_j = matching_polynomial(g.delete_vertex(j));
  const Polynomial mu_ij = matching_polynomial(g.delete_vertex(i).delete_vertex(j));
  const Polynomial residual = mu_g * mu_ij * w.den - (mu_j * mu_i * w.den + w.num * (mu_ij * mu_ij));
  if (residual.is_zero()) return Verdict::pass();
  return Verdict::fail("contraction identity residual " + to_string(residual));
}

inline ContractionWeight contraction_weight(const WeightedGraph& g, int i, int j) {
  ContractionWeight w = detail::contraction_weight_unchecked(g, i, j);
  const Verdict v = contraction_identity_check(g, i, j);
  if (!v.ok()) throw std::logic_error(v.detail);
  return w;
}

// Order comparison of num and den multiplicities at theta; num identically
// zero (no i-j path) is the zero function.
inline ContractionClass contraction_class_at(const ContractionWeight& w,
                                             const AlgebraicNumber& theta) {
  if (w.num.is_zero()) return ContractionClass::Zero;
  const int a = multiplicity_at(w.num, theta);
  const int b = multiplicity_at(w.den, theta);
  if (a < b) return ContractionClass::MinusInfinity;
  if (a > b) return ContractionClass::Zero;
  return ContractionClass::FiniteNegative;
}

// Closed interval [lo, hi] certified to contain every root of mu(G):
//   lo = min r - s, hi = max r + s with s a rational upper bound on 2 sqrt(b).
struct HLBound {
  Rational b;
  Rational lo;
  Rational hi;
};

inline HLBound heilmann_lieb_bound(const WeightedGraph& g) {
  const int n = g.vertex_count();
  if (n == 0) return {Rational(0), Rational(0), Rational(0)};
  Rational rmin = g.offset(g.present().min());
  Rational rmax = rmin;
  for (int v : g.present()) {
    rmin = std::min(rmin, g.offset(v));
    rmax = std::max(rmax, g.offset(v));
  }
  Rational b(0);
  if (n == 2) {
    const int u = g.present().min();
    for (int v : g.present())
      if (v != u) b = -g.weight(u, v) / 4;
  } else if (n >= 3) {
    for (int j : g.present()) {
      Rational sum(0);
      Rational smallest;
      bool first = true;
      for (int k : g.present()) {
        if (k == j) continue;
        const Rational val = -g.weight(j, k);
        sum += val;
        if (first || val < smallest) {
          smallest = val;
          first = false;
        }
      }
      b = std::max(b, Rational(sum - smallest));
    }
  }
  Rational s(0);
  if (sgn(b) > 0) s = sqrt_upper(4 * b, make_rational(1, 1000000));
  return {b, rmin - s, rmax + s};
}

// Distinct roots of mu(G) with multiplicities, ascending, isolated inside the
// certified bracket widened by 1 so the endpoints cannot be roots.
inline std::vector<std::pair<AlgebraicNumber, int>> matching_roots(const WeightedGraph& g) {
  if (g.vertex_count() == 0) return {};
  const Polynomial mu = matching_polynomial(g);
  const HLBound hb = heilmann_lieb_bound(g);
  std::vector<std::pair<AlgebraicNumber, int>> out;
  for (auto& r : isolate_roots_in(mu, hb.lo - 1, hb.hi + 1)) {
    const int m = multiplicity_at(mu, r);
    out.emplace_back(std::move(r), m);
  }
  return out;
}

inline std::vector<AlgebraicNumber> distinct_matching_roots(const WeightedGraph& g) {
  std::vector<AlgebraicNumber> out;
  for (auto& [root, mult] : matching_roots(g)) out.push_back(std::move(root));
  return out;
}

// Real-rootedness plus the root bracket: multiplicities over the isolated real
// roots sum to the vertex count and every root lies inside [lo, hi].
inline Verdict real_rooted_bracket_check(const WeightedGraph& g) {
  const auto roots = matching_roots(g);
  const HLBound hb = heilmann_lieb_bound(g);
  int total = 0;
  for (const auto& [root, mult] : roots) {
    total += mult;
    if (compare(root, hb.lo) < 0 || compare(root, hb.hi) > 0)
      return Verdict::fail("root outside the certified bracket [" + to_string(hb.lo) + ", " +
                           to_string(hb.hi) + "]");
  }
  if (total != g.vertex_count())
    return Verdict::fail("root multiplicities sum to " + std::to_string(total) + ", expected " +
                         std::to_string(g.vertex_count()));
  return Verdict::pass();
}

// Between consecutive distinct roots of either polynomial the other has a root
// in the closed gap, and multiplicities at any root differ by at most one.
inline Verdict interlacing_check(const WeightedGraph& g, int i) {
  if (!g.has_vertex(i)) throw std::invalid_argument("vertex not present");
  const Polynomial mu_g = matching_polynomial(g);
  const Polynomial mu_gi = matching_polynomial(g.delete_vertex(i));
  const auto roots_g = isolate_roots(mu_g);
  const auto roots_gi = mu_gi.degree() >= 1 ? isolate_roots(mu_gi) : std::vector<AlgebraicNumber>{};

  const auto closed_gap_has_root = [](const std::vector<AlgebraicNumber>& outer,
                                      const std::vector<AlgebraicNumber>& inner) {
    for (std::size_t k = 0; k + 1 < outer.size(); ++k) {
      bool found = false;
      for (const auto& r : inner)
        if (compare(r, outer[k]) >= 0 && compare(r, outer[k + 1]) <= 0) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  };
  if (!closed_gap_has_root(roots_g, roots_gi))
    return Verdict::fail("gap between roots after deleting vertex " + std::to_string(i));
  if (!closed_gap_has_root(roots_gi, roots_g))
    return Verdict::fail("gap between roots of the deleted graph around vertex " +
                         std::to_string(i));

  const auto mult_gap_ok = [&](const AlgebraicNumber& theta) {
    const int a = multiplicity_at(mu_g, theta);
    const int b = multiplicity_at(mu_gi, theta);
    return a - b <= 1 && b - a <= 1;
  };
  for (const auto& r : roots_g)
    if (!mult_gap_ok(r)) return Verdict::fail("multiplicity jump at a root");
  for (const auto& r : roots_gi)
    if (!mult_gap_ok(r)) return Verdict::fail("multiplicity jump at a deleted-graph root");
  return Verdict::pass();
}

}  // namespace mugraph
