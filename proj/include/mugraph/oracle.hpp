#pragma once

#include "mugraph/classify.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mugraph {

// A set of pairwise disjoint present edges, each pair stored low-high.
struct Matching {
  std::vector<std::pair<int, int>> edges;
};

// Every matching of G including the empty one, in a fixed order: edges are
// listed lexicographically and each matching omits or takes them in turn,
// omission first. Exhaustive by design; the oracle trades speed for trust.
inline std::vector<Matching> enumerate_matchings(const WeightedGraph& g) {
  if (g.present().size() > 16)
    throw std::invalid_argument("matching enumeration capped at 16 vertices");
  std::vector<std::pair<int, int>> edges;
  const std::vector<int> vs = g.present().to_vector();
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (g.adjacent(vs[a], vs[b])) edges.emplace_back(vs[a], vs[b]);

  std::vector<Matching> out;
  std::vector<std::pair<int, int>> current;
  VertexSet used;
  const std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == edges.size()) {
      out.push_back(Matching{current});
      return;
    }
    walk(k + 1);
    const auto& [u, v] = edges[k];
    if (!used.contains(u) && !used.contains(v)) {
      used.insert(u);
      used.insert(v);
      current.push_back(edges[k]);
      walk(k + 1);
      current.pop_back();
      used.erase(u);
      used.erase(v);
    }
  };
  walk(0);
  return out;
}

namespace detail {

// Maximum matching sizes over all induced vertex subsets of one graph,
// memoized on the subset mask. Pick the lowest vertex: either it stays
// uncovered or it pairs with a neighbor.
class MatchingTable {
 public:
  explicit MatchingTable(const WeightedGraph& g) : verts_(g.present().to_vector()) {
    if (verts_.size() > 14) throw std::invalid_argument("matching table capped at 14 vertices");
    adj_.assign(verts_.size(), 0);
    for (std::size_t a = 0; a < verts_.size(); ++a)
      for (std::size_t b = 0; b < verts_.size(); ++b)
        if (a != b && g.adjacent(verts_[a], verts_[b])) adj_[a] |= std::uint32_t{1} << b;
    memo_.assign(std::size_t{1} << verts_.size(), -1);
  }

  int max_matching(VertexSet within) const {
    std::uint32_t mask = 0;
    for (std::size_t k = 0; k < verts_.size(); ++k)
      if (within.contains(verts_[k])) mask |= std::uint32_t{1} << k;
    return solve(mask);
  }

 private:
  int solve(std::uint32_t mask) const {
    if (mask == 0) return 0;
    int& entry = memo_[mask];
    if (entry >= 0) return entry;
    const int v = std::countr_zero(mask);
    int best = solve(mask & (mask - 1));
    std::uint32_t cand = adj_[v] & mask;
    while (cand != 0) {
      const int u = std::countr_zero(cand);
      cand &= cand - 1;
      const int with = 1 + solve(mask & ~(std::uint32_t{1} << v) & ~(std::uint32_t{1} << u));
      if (with > best) best = with;
    }
    return entry = best;
  }

  std::vector<int> verts_;
  std::vector<std::uint32_t> adj_;
  mutable std::vector<int> memo_;
};

}  // namespace detail

inline int max_matching_size(const WeightedGraph& g) {
  return detail::MatchingTable(g).max_matching(g.present());
}

// D holds the vertices some maximum matching leaves uncovered, A its
// frontier, C the rest; deficiency counts the uncovered vertices of any
// maximum matching.
struct ClassicalDecomposition {
  VertexSet D;
  VertexSet A;
  VertexSet C;
  int deficiency;
};

inline ClassicalDecomposition classical_decomposition(const WeightedGraph& g) {
  const detail::MatchingTable table(g);
  const int nu = table.max_matching(g.present());
  VertexSet d;
  for (int v : g.present())
    if (table.max_matching(g.present().without(v)) == nu) d.insert(v);
  const VertexSet a = frontier(g, d);
  const VertexSet c = g.present() - d - a;
  const int def = g.present().size() - 2 * nu;
  if (def != static_cast<int>(components(g, d).size()) - a.size())
    throw std::logic_error("deficiency does not equal critical components minus frontier size");
  return ClassicalDecomposition{d, a, c, def};
}

// The classical structure of maximum matchings, verified item by item with
// nothing but enumeration: factor-critical components of D, a perfect
// matching on C, the frontier covering condition, the shape of every
// maximum matching, the deficiency count, and Gallai's lemma on each
// component of D.
inline Verdict ge_structure_check(const WeightedGraph& g) {
  if (g.present().size() > 12)
    throw std::invalid_argument("structure enumeration capped at 12 vertices");
  if (g.present().empty()) throw std::invalid_argument("needs a non-empty graph");
  const detail::MatchingTable table(g);
  const int nu = table.max_matching(g.present());
  VertexSet d;
  for (int v : g.present())
    if (table.max_matching(g.present().without(v)) == nu) d.insert(v);
  const VertexSet a = frontier(g, d);
  const VertexSet c = g.present() - d - a;
  const std::vector<VertexSet> comps = components(g, d);

  for (const VertexSet& h : comps) {
    for (int v : h)
      if (2 * table.max_matching(h.without(v)) != h.size() - 1)
        return Verdict::fail("a zero-class component is not factor-critical at vertex " +
                             std::to_string(v));
    if (h.size() - 2 * table.max_matching(h) != 1)
      return Verdict::fail("a factor-critical component misses more than one vertex");
  }

  if (2 * table.max_matching(c) != c.size())
    return Verdict::fail("the untouched part has no perfect matching");

  if (!detail::components_cover_subsets(g, a, comps))
    return Verdict::fail("a frontier subset reaches too few critical components");

  std::vector<int> comp_of(64, -1);
  for (std::size_t k = 0; k < comps.size(); ++k)
    for (int v : comps[k]) comp_of[v] = static_cast<int>(k);
  for (const Matching& m : enumerate_matchings(g)) {
    if (static_cast<int>(m.edges.size()) != nu) continue;
    VertexSet covered;
    for (const auto& [u, v] : m.edges) {
      covered.insert(u);
      covered.insert(v);
    }
    std::vector<int> inside(comps.size(), 0);
    for (const auto& [u, v] : m.edges)
      if (d.contains(u) && d.contains(v) && comp_of[u] == comp_of[v]) ++inside[comp_of[u]];
    for (std::size_t k = 0; k < comps.size(); ++k)
      if (2 * inside[k] != comps[k].size() - 1)
        return Verdict::fail("a maximum matching is not near-perfect on a critical component");
    for (int v : c) {
      bool inner = false;
      for (const auto& [x, y] : m.edges)
        if ((x == v && c.contains(y)) || (y == v && c.contains(x))) inner = true;
      if (!inner) return Verdict::fail("a maximum matching leaves the untouched part uncovered");
    }
    std::vector<char> hit(comps.size(), 0);
    for (int v : a) {
      int partner = -1;
      for (const auto& [x, y] : m.edges) {
        if (x == v) partner = y;
        if (y == v) partner = x;
      }
      if (partner < 0 || !d.contains(partner))
        return Verdict::fail("a maximum matching does not match the frontier into the zero part");
      const int k = comp_of[partner];
      if (hit[k])
        return Verdict::fail("two frontier vertices were matched into one critical component");
      hit[k] = 1;
    }
  }

  if (g.present().size() - 2 * nu != static_cast<int>(comps.size()) - a.size())
    return Verdict::fail("deficiency does not equal critical components minus frontier size");
  return Verdict::pass();
}

inline bool has_unit_weights(const WeightedGraph& g) {
  for (int v : g.present()) {
    if (!(g.offset(v) == 0)) return false;
    for (int u : g.present())
      if (u > v && g.adjacent(u, v) && !(g.weight(u, v) == Rational(-1))) return false;
  }
  return true;
}

// At theta = 0 with unit weights the refined decomposition must reproduce
// the classical one, multiplicity matching deficiency.
inline Verdict crosscheck_theta_zero(const WeightedGraph& g) {
  if (!has_unit_weights(g)) throw std::invalid_argument("needs unit weights");
  if (g.present().size() > 12 || g.present().empty())
    throw std::invalid_argument("crosscheck capped at 12 vertices");
  const ClassicalDecomposition cl = classical_decomposition(g);
  const ThetaDecomposition d = decompose(g, AlgebraicNumber::from_rational(Rational(0)));
  if (d.D != cl.D) return Verdict::fail("zero classes disagree with the missable vertices");
  if (d.A != cl.A) return Verdict::fail("frontiers disagree");
  if ((d.Nminus | d.Nplus | d.P) != cl.C)
    return Verdict::fail("remaining classes disagree with the untouched part");
  if (d.m != cl.deficiency)
    return Verdict::fail("multiplicity " + std::to_string(d.m) + " against deficiency " +
                         std::to_string(cl.deficiency));
  return Verdict::pass();
}

}  // namespace mugraph
