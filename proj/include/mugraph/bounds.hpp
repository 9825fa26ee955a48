#pragma once

#include "mugraph/classify.hpp"

#include <stdexcept>
#include <string>

namespace mugraph {

// Largest root of mu(G) against the largest root of the star kept at the
// max-offset vertex, with the bracket data the comparison rests on.
struct ZeroBounds {
  AlgebraicNumber z_g;
  AlgebraicNumber z_star;
  Rational b;
  Rational r_max;
  Verdict verdict;
};

// At its smallest and largest root a connected graph is critical and the
// root is simple.
inline Verdict extreme_zero_check(const WeightedGraph& g) {
  if (g.vertex_count() == 0 || !is_connected(g))
    throw std::invalid_argument("needs a non-empty connected graph");
  const std::vector<AlgebraicNumber> roots = distinct_matching_roots(g);
  for (const AlgebraicNumber* theta : {&roots.front(), &roots.back()}) {
    const ThetaDecomposition d = decompose(g, *theta);
    if (d.D != g.present())
      return Verdict::fail("extreme root leaves a vertex outside the zero class");
    if (d.m != 1) return Verdict::fail("extreme root has multiplicity " + std::to_string(d.m));
  }
  return Verdict::pass();
}

// Raising one edge weight strictly lowers the largest root.
inline Verdict edge_monotonicity_check(const WeightedGraph& g, int i, int j,
                                       const Rational& lambda_new) {
  if (!is_connected(g) || g.vertex_count() == 0)
    throw std::invalid_argument("needs a non-empty connected graph");
  if (i == j || !g.has_vertex(i) || !g.has_vertex(j))
    throw std::invalid_argument("needs two distinct present vertices");
  if (!(g.weight(i, j) < lambda_new) || sgn(lambda_new) > 0)
    throw std::invalid_argument("new weight must strictly increase and stay nonpositive");
  const AlgebraicNumber z_before = distinct_matching_roots(g).back();
  const AlgebraicNumber z_after = distinct_matching_roots(g.with_weight(i, j, lambda_new)).back();
  if (compare(z_after, z_before) >= 0)
    return Verdict::fail("largest root did not strictly drop when the weight of " +
                         std::to_string(i) + "," + std::to_string(j) + " rose");
  return Verdict::pass();
}

namespace detail {

// Vertex with the largest offset, lowest id on ties.
inline int max_offset_vertex(const WeightedGraph& g) {
  int best = g.present().min();
  for (int v : g.present())
    if (g.offset(v) > g.offset(best)) best = v;
  return best;
}

// mu of the graph that keeps only the edges at i, assembled from offset
// products rather than the matching recurrence.
inline Polynomial star_polynomial(const WeightedGraph& g, int i) {
  Polynomial all = Polynomial::one();
  for (int v : g.present()) all = all * Polynomial::linear(g.offset(v));
  Polynomial out = all;
  for (int j : g.neighbors(i)) {
    Polynomial rest = Polynomial::one();
    for (int k : g.present())
      if (k != i && k != j) rest = rest * Polynomial::linear(g.offset(k));
    out -= rest * (-g.weight(i, j));
  }
  return out;
}

}  // namespace detail

// Two-sided bound for the largest root: with i the max-offset vertex and G'
// the star kept at i, r_max < z_star <= z_G and (z_G - r_max)^2 < 4B. The
// star polynomial is also confirmed against the matching recurrence through
// its fixed-point form, and all-zero offsets add the explicit lower bound
// z_G^2 >= max_j sum_k(-lambda_jk) with z_star^2 equal to the sum at i.
inline ZeroBounds star_bounds_check(const WeightedGraph& g) {
  if (g.vertex_count() < 3 || !is_connected(g))
    throw std::invalid_argument("needs a connected graph on at least three vertices");
  const int i = detail::max_offset_vertex(g);
  const Rational r_max = g.offset(i);
  const Rational b = heilmann_lieb_bound(g).b;

  WeightedGraph star = g;
  const std::vector<int> vs = g.present().to_vector();
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t c = a + 1; c < vs.size(); ++c)
      if (vs[a] != i && vs[c] != i && g.adjacent(vs[a], vs[c]))
        star = star.with_weight(vs[a], vs[c], Rational(0));

  AlgebraicNumber z_g = distinct_matching_roots(g).back();
  AlgebraicNumber z_star = distinct_matching_roots(star).back();

  const auto done = [&](Verdict v) {
    return ZeroBounds{std::move(z_g), std::move(z_star), b, r_max, std::move(v)};
  };

  if (compare(z_star, r_max) <= 0)
    return done(Verdict::fail("largest star root does not exceed the largest offset"));
  if (compare(z_star, z_g) > 0)
    return done(Verdict::fail("largest star root exceeds the largest root of the graph"));
  const Polynomial shift = Polynomial::linear(r_max);
  const Rational four_b = 4 * b;
  if (sign_at(shift * shift - Polynomial(four_b), z_g) != -1)
    return done(Verdict::fail("largest root escapes the bracket of width two root-b"));
  if (multiplicity_at(detail::star_polynomial(g, i), z_star) < 1)
    return done(Verdict::fail("star root does not satisfy the fixed-point equation"));

  bool all_zero = true;
  for (int v : g.present())
    if (!(g.offset(v) == 0)) all_zero = false;
  if (all_zero) {
    Rational best(0);
    for (int j : g.present()) {
      Rational sum(0);
      for (int k : g.neighbors(j)) sum += -g.weight(j, k);
      if (sum > best) best = sum;
    }
    if (sign_at(Polynomial{-best, 0, 1}, z_g) < 0)
      return done(Verdict::fail("largest root squared falls below the weight-sum lower bound"));
    Rational at_i(0);
    for (int k : g.neighbors(i)) at_i += -g.weight(i, k);
    if (sign_at(Polynomial{-at_i, 0, 1}, z_star) != 0)
      return done(Verdict::fail("zero-offset star root squared misses its weight sum"));
  }
  return done(Verdict::pass());
}

}  // namespace mugraph
