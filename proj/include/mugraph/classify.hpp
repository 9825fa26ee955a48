#pragma once

#include "mugraph/matchpoly.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mugraph {

// Sign of the graph continued fraction mu(G)/mu(G\i) at theta, limits
// included: a vertex is Zero/Inf when the ratio tends to 0/infinity there.
enum class SignClass { Neg, Zero, Pos, Inf };

inline const char* to_string(SignClass c) {
  switch (c) {
    case SignClass::Neg: return "neg";
    case SignClass::Zero: return "zero";
    case SignClass::Pos: return "pos";
    default: return "inf";
  }
}

// Multiplicity-driven classification: the ratio's zeros and poles are simple,
// so the multiplicity step of mu(G\i) against mu(G) decides 0 and inf; equal
// multiplicities leave a finite nonzero limit whose sign shows just right of
// theta once no other root of either polynomial is in the way.
inline SignClass alpha_class(const WeightedGraph& g, int i, const AlgebraicNumber& theta) {
  if (g.vertex_count() == 0) throw std::invalid_argument("classification needs a non-empty graph");
  if (!g.has_vertex(i)) throw std::invalid_argument("vertex not present");
  const Polynomial mu_g = matching_polynomial(g);
  const Polynomial mu_i = matching_polynomial(g.delete_vertex(i));
  const int m = multiplicity_at(mu_g, theta);
  const int mi = multiplicity_at(mu_i, theta);
  if (mi == m - 1) return SignClass::Zero;
  if (mi == m + 1) return SignClass::Inf;
  if (mi != m) throw std::logic_error("interlacing breach: multiplicity moved by more than one");
  const AlgebraicNumber t = refine(theta, mu_g * mu_i);
  const int s = sgn(mu_g.eval(t.iv.hi)) * sgn(mu_i.eval(t.iv.hi));
  if (s == 0) throw std::logic_error("refined endpoint is still a root");
  return s > 0 ? SignClass::Pos : SignClass::Neg;
}

// The refined decomposition at theta. D holds the Zero class, A its frontier,
// P the Inf class outside A, and the neutral vertices split by sign.
struct ThetaDecomposition {
  AlgebraicNumber theta;
  int m;
  std::map<int, SignClass> classes;
  VertexSet D;
  VertexSet A;
  VertexSet Nminus;
  VertexSet Nplus;
  VertexSet P;
  std::vector<VertexSet> critical_components;
};

namespace detail {

inline nlohmann::json vertex_set_json(VertexSet s) {
  nlohmann::json out = nlohmann::json::array();
  for (int v : s) out.push_back(v);
  return out;
}

}  // namespace detail

inline nlohmann::json to_json(const AlgebraicNumber& theta) {
  nlohmann::json witness = nlohmann::json::array();
  for (int k = 0; k <= theta.witness.degree(); ++k) witness.push_back(to_string(theta.witness.coeff(k)));
  return nlohmann::json{{"witness", witness},
                        {"interval", {to_string(theta.iv.lo), to_string(theta.iv.hi)}}};
}

inline nlohmann::json to_json(const ThetaDecomposition& d) {
  nlohmann::json classes = nlohmann::json::object();
  for (const auto& [v, c] : d.classes) classes[std::to_string(v)] = to_string(c);
  nlohmann::json comps = nlohmann::json::array();
  for (const VertexSet& k : d.critical_components) comps.push_back(detail::vertex_set_json(k));
  return nlohmann::json{{"theta", to_json(d.theta)},
                        {"m", d.m},
                        {"classes", classes},
                        {"D", detail::vertex_set_json(d.D)},
                        {"A", detail::vertex_set_json(d.A)},
                        {"N_minus", detail::vertex_set_json(d.Nminus)},
                        {"N_plus", detail::vertex_set_json(d.Nplus)},
                        {"P", detail::vertex_set_json(d.P)},
                        {"critical_components", comps}};
}

// Classify every vertex and assemble the decomposition. The structural
// invariants are re-asserted before returning: the frontier of D must lie in
// the Inf class, the five parts must partition the vertices, and the
// multiplicity must match the critical component count minus |A|.
inline ThetaDecomposition decompose(const WeightedGraph& g, const AlgebraicNumber& theta) {
  if (g.vertex_count() == 0) throw std::invalid_argument("decomposition needs a non-empty graph");
  const int m = multiplicity_at(matching_polynomial(g), theta);
  std::map<int, SignClass> classes;
  VertexSet d, nminus, nplus, inf;
  for (int v : g.present()) {
    const SignClass c = alpha_class(g, v, theta);
    classes.emplace(v, c);
    switch (c) {
      case SignClass::Zero: d.insert(v); break;
      case SignClass::Neg: nminus.insert(v); break;
      case SignClass::Pos: nplus.insert(v); break;
      case SignClass::Inf: inf.insert(v); break;
    }
  }
  const VertexSet a = frontier(g, d);
  if (!a.subset_of(inf))
    throw std::logic_error("frontier of the zero class leaked outside the infinite class");
  const VertexSet p = inf - a;
  if ((d | a | nminus | nplus | p) != g.present())
    throw std::logic_error("decomposition parts do not partition the vertices");
  std::vector<VertexSet> comps = components(g, d);
  if (m != static_cast<int>(comps.size()) - a.size())
    throw std::logic_error("multiplicity does not equal critical components minus frontier size");
  return ThetaDecomposition{theta, m, std::move(classes), d, a, nminus, nplus, p, std::move(comps)};
}

namespace detail {

// alpha_j(G)(theta) = alpha_j(G\i)(theta) cross-multiplies to the vanishing of
// mu(G\i) mu(G\j) - mu(G\i,j) mu(G) at theta, the Christoffel-Darboux sum.
inline bool cross_difference_vanishes(const WeightedGraph& g, int i, int j,
                                      const AlgebraicNumber& theta) {
  const Polynomial cross = matching_polynomial(g.delete_vertex(i)) *
                               matching_polynomial(g.delete_vertex(j)) -
                           matching_polynomial(g.delete_vertex(i).delete_vertex(j)) *
                               matching_polynomial(g);
  return cross.is_zero() || multiplicity_at(cross, theta) >= 1;
}

}  // namespace detail

// Deleting a frontier vertex freezes the picture: every other vertex keeps its
// class, and finite alpha values are preserved.
inline Verdict stability_check(const WeightedGraph& g, const AlgebraicNumber& theta, int i) {
  const ThetaDecomposition d = decompose(g, theta);
  if (!d.A.contains(i)) throw std::invalid_argument("vertex not in frontier of zero set");
  const WeightedGraph gi = g.delete_vertex(i);
  for (int j : gi.present()) {
    const SignClass before = d.classes.at(j);
    const SignClass after = alpha_class(gi, j, theta);
    if (after != before)
      return Verdict::fail("vertex " + std::to_string(j) + " moved from " + to_string(before) +
                           " to " + to_string(after) + " when the frontier vertex " +
                           std::to_string(i) + " was deleted");
    if (before != SignClass::Inf && !detail::cross_difference_vanishes(g, i, j, theta))
      return Verdict::fail("finite alpha value of vertex " + std::to_string(j) +
                           " not preserved by deleting " + std::to_string(i));
  }
  return Verdict::pass();
}

// Replacement weights for one vertex: a new offset and/or new weights toward
// selected neighbors; anything absent keeps its old value.
struct VertexReweight {
  std::optional<Rational> offset;
  std::map<int, Rational> lambdas;
};

inline WeightedGraph apply_reweight(const WeightedGraph& g, int j, const VertexReweight& w) {
  WeightedGraph out = g;
  if (w.offset) out = out.with_offset(j, *w.offset);
  for (const auto& [k, lambda] : w.lambdas) out = out.with_weight(j, k, lambda);
  return out;
}

namespace detail {

// At least |S|+1 of the given components touch S, for every non-empty subset
// S of a; adjacency is judged in the graph supplied.
inline bool components_cover_subsets(const WeightedGraph& g, VertexSet a,
                                     const std::vector<VertexSet>& comps) {
  const std::vector<int> border = a.to_vector();
  if (border.size() > 20)
    throw std::invalid_argument("frontier too large for exhaustive subset checking");
  for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << border.size()); ++pick) {
    VertexSet s;
    for (std::size_t k = 0; k < border.size(); ++k)
      if (pick & (std::uint64_t{1} << k)) s.insert(border[static_cast<int>(k)]);
    int touched = 0;
    for (const VertexSet& comp : comps) {
      bool adjacent = false;
      for (int u : comp) {
        for (int v : s)
          if (g.adjacent(u, v)) {
            adjacent = true;
            break;
          }
        if (adjacent) break;
      }
      if (adjacent) ++touched;
    }
    if (touched < s.size() + 1) return false;
  }
  return true;
}

}  // namespace detail

// Reweighting a frontier vertex leaves every alpha value at theta unchanged,
// provided the reweighted graph still connects each subset S of the frontier
// to at least |S|+1 original critical components. When that hypothesis fails
// the conclusion is not claimed and the check reports not applicable.
inline Verdict stability2_check(const WeightedGraph& g, const AlgebraicNumber& theta, int j,
                                const VertexReweight& w) {
  const ThetaDecomposition d = decompose(g, theta);
  if (!d.A.contains(j)) throw std::invalid_argument("vertex not in frontier of zero set");
  const WeightedGraph gp = apply_reweight(g, j, w);
  if (!detail::components_cover_subsets(gp, d.A, d.critical_components))
    return Verdict::not_applicable("a frontier subset reaches too few critical components");
  for (int v : g.present()) {
    const SignClass before = d.classes.at(v);
    const SignClass after = alpha_class(gp, v, theta);
    if (after != before)
      return Verdict::fail("vertex " + std::to_string(v) + " moved from " + to_string(before) +
                           " to " + to_string(after) + " under reweighting of " +
                           std::to_string(j));
    if (before != SignClass::Inf) {
      const Polynomial cross =
          matching_polynomial(gp) * matching_polynomial(g.delete_vertex(v)) -
          matching_polynomial(g) * matching_polynomial(gp.delete_vertex(v));
      if (!cross.is_zero() && multiplicity_at(cross, theta) == 0)
        return Verdict::fail("finite alpha value of vertex " + std::to_string(v) +
                             " not preserved under reweighting of " + std::to_string(j));
    }
  }
  return Verdict::pass();
}

// Connected graph with every vertex in the Zero class: theta is a simple root.
inline Verdict gallai_check(const WeightedGraph& g, const AlgebraicNumber& theta) {
  if (g.vertex_count() == 0 || !is_connected(g))
    throw std::invalid_argument("needs a non-empty connected graph");
  const ThetaDecomposition d = decompose(g, theta);
  if (d.D != g.present()) throw std::invalid_argument("graph is not critical at this point");
  if (d.m != 1)
    return Verdict::fail("critical connected graph has multiplicity " + std::to_string(d.m));
  return Verdict::pass();
}

// Independent recomputation of m = c(D) - |A|, bypassing the assertions baked
// into decompose.
inline Verdict multiplicity_formula_check(const WeightedGraph& g, const AlgebraicNumber& theta) {
  if (g.vertex_count() == 0) throw std::invalid_argument("needs a non-empty graph");
  VertexSet d;
  for (int v : g.present())
    if (alpha_class(g, v, theta) == SignClass::Zero) d.insert(v);
  const int comps = static_cast<int>(components(g, d).size());
  const int a = frontier(g, d).size();
  const int m = multiplicity_at(matching_polynomial(g), theta);
  if (m != comps - a)
    return Verdict::fail("multiplicity " + std::to_string(m) + " but " + std::to_string(comps) +
                         " critical components against a frontier of " + std::to_string(a));
  return Verdict::pass();
}

// Hall-type condition: every non-empty frontier subset S touches at least
// |S|+1 critical components of G.
inline Verdict matched_condition_check(const WeightedGraph& g, const AlgebraicNumber& theta) {
  const ThetaDecomposition d = decompose(g, theta);
  if (d.m == 0) throw std::invalid_argument("point is not a root of the matching polynomial");
  if (!detail::components_cover_subsets(g, d.A, d.critical_components))
    return Verdict::fail("a frontier subset reaches too few critical components");
  return Verdict::pass();
}

// Sign comparison of two finite limits of rational functions at theta:
// -1, 0, +1 for lim p1/q1 against lim p2/q2.
inline int ratio_limit_compare(const Polynomial& p1, const Polynomial& q1, const Polynomial& p2,
                               const Polynomial& q2, const AlgebraicNumber& theta) {
  const Polynomial n = p1 * q2 - p2 * q1;
  if (n.is_zero()) return 0;
  const Polynomial den = q1 * q2;
  const int a = multiplicity_at(n, theta);
  const int b = multiplicity_at(den, theta);
  if (a > b) return 0;
  if (a < b) throw std::logic_error("difference of finite limits is unbounded");
  const AlgebraicNumber t = refine(theta, n * den);
  return sgn(n.eval(t.iv.hi)) * sgn(den.eval(t.iv.hi));
}

// The pair rules relating the classes of i and j in G to their classes in
// G\j and G\i, split by the contraction weight's behavior at theta: the
// finite-negative table, the vanishing-weight preservation rule, the
// unbounded-weight collapse rule, and the strict value orderings where the
// hypotheses pair up.
inline Verdict sign_table_check(const WeightedGraph& g, const AlgebraicNumber& theta, int i,
                                int j, const ContractionWeight& w) {
  if (i == j || !g.has_vertex(i) || !g.has_vertex(j))
    throw std::invalid_argument("needs two distinct present vertices");
  const ContractionClass lam = contraction_class_at(w, theta);
  const SignClass ci = alpha_class(g, i, theta);
  const SignClass cj = alpha_class(g, j, theta);
  const SignClass cid = alpha_class(g.delete_vertex(j), i, theta);
  const SignClass cjd = alpha_class(g.delete_vertex(i), j, theta);
  std::string note;

  const auto fail_pair = [&](const std::string& what) {
    return Verdict::fail(what + " [i=" + std::to_string(i) + " " + to_string(ci) + "/" +
                         to_string(cid) + ", j=" + std::to_string(j) + " " + to_string(cj) + "/" +
                         to_string(cjd) + ", weight " + to_string(lam) + "]");
  };

  if (lam == ContractionClass::MinusInfinity) {
    if (cid != SignClass::Inf || cjd != SignClass::Inf)
      return fail_pair("unbounded contraction weight needs both deleted classes infinite");
    if (ci != cj) return fail_pair("unbounded contraction weight forces matching classes");
    return Verdict::pass();
  }

  if (lam == ContractionClass::Zero) {
    if (ci != cid || cj != cjd)
      return fail_pair("vanishing contraction weight preserves both classes");
    if ((ci != SignClass::Inf || cj != SignClass::Inf) &&
        !detail::cross_difference_vanishes(g, i, j, theta))
      return fail_pair("vanishing contraction weight preserves finite alpha values");
    return Verdict::pass();
  }

  // Finite negative weight.
  if (cid == SignClass::Inf || cjd == SignClass::Inf) {
    if (cid == SignClass::Inf) {
      if (ci != SignClass::Inf)
        return fail_pair("infinite class in the deleted graph forces an infinite class");
      if (cj != cjd) return fail_pair("deleting the infinite-class partner must keep the class");
      if (cj != SignClass::Inf && !detail::cross_difference_vanishes(g, i, j, theta))
        return fail_pair("deleting the infinite-class partner must keep the alpha value");
    }
    if (cjd == SignClass::Inf) {
      if (cj != SignClass::Inf)
        return fail_pair("infinite class in the deleted graph forces an infinite class");
      if (ci != cid) return fail_pair("deleting the infinite-class partner must keep the class");
      if (ci != SignClass::Inf && !detail::cross_difference_vanishes(g, i, j, theta))
        return fail_pair("deleting the infinite-class partner must keep the alpha value");
    }
  } else {
    const bool same_sign_pair = (cid == SignClass::Pos && cjd == SignClass::Pos) ||
                                (cid == SignClass::Neg && cjd == SignClass::Neg);
    if (same_sign_pair) {
      if (ci != cj || ci == SignClass::Inf)
        return fail_pair("matching deleted signs force one shared finite class");
    } else if (cid == SignClass::Pos && cjd == SignClass::Neg) {
      if (ci != SignClass::Pos || cj != SignClass::Neg)
        return fail_pair("opposite deleted signs persist");
    } else if (cid == SignClass::Neg && cjd == SignClass::Pos) {
      if (ci != SignClass::Neg || cj != SignClass::Pos)
        return fail_pair("opposite deleted signs persist");
    } else if (cid == SignClass::Zero && cjd == SignClass::Zero) {
      if (ci != SignClass::Inf || cj != SignClass::Inf)
        return fail_pair("two deleted zeros force both classes infinite");
    } else if (cid == SignClass::Zero && cjd == SignClass::Pos) {
      if (ci != SignClass::Neg || cj != SignClass::Inf)
        return fail_pair("deleted zero against positive forces neg and inf");
    } else if (cid == SignClass::Pos && cjd == SignClass::Zero) {
      if (cj != SignClass::Neg || ci != SignClass::Inf)
        return fail_pair("deleted zero against positive forces neg and inf");
    } else if (cid == SignClass::Zero && cjd == SignClass::Neg) {
      if (ci != SignClass::Pos || cj != SignClass::Inf)
        return fail_pair("deleted zero against negative forces pos and inf");
    } else {  // cid == Neg, cjd == Zero
      if (cj != SignClass::Pos || ci != SignClass::Inf)
        return fail_pair("deleted zero against negative forces pos and inf");
    }
  }

  // Strict value orderings where both the graph and deleted-graph classes pair
  // up; alpha_i(G) = mu(G)/mu(G\i) etc.
  const Polynomial mu_g = matching_polynomial(g);
  const Polynomial mu_i = matching_polynomial(g.delete_vertex(i));
  const Polynomial mu_j = matching_polynomial(g.delete_vertex(j));
  const Polynomial mu_ij = matching_polynomial(g.delete_vertex(i).delete_vertex(j));
  const auto all_are = [&](SignClass c) { return ci == c && cid == c && cj == c && cjd == c; };
  if (all_are(SignClass::Pos)) {
    if (ratio_limit_compare(mu_g, mu_i, mu_j, mu_ij, theta) != -1)
      return fail_pair("positive case must order alpha_i(G) below alpha_i(G minus j)");
    if (ratio_limit_compare(mu_g, mu_j, mu_i, mu_ij, theta) != -1)
      return fail_pair("positive case must order alpha_j(G) below alpha_j(G minus i)");
  } else if (all_are(SignClass::Neg)) {
    if (ratio_limit_compare(mu_j, mu_ij, mu_g, mu_i, theta) != -1)
      return fail_pair("negative case must order alpha_i(G minus j) below alpha_i(G)");
    if (ratio_limit_compare(mu_i, mu_ij, mu_g, mu_j, theta) != -1)
      return fail_pair("negative case must order alpha_j(G minus i) below alpha_j(G)");
  } else if (ci == SignClass::Pos && cid == SignClass::Pos && cj == SignClass::Neg &&
             cjd == SignClass::Neg) {
    if (ratio_limit_compare(mu_j, mu_ij, mu_g, mu_i, theta) != -1)
      return fail_pair("mixed case must order alpha_i(G minus j) below alpha_i(G)");
    if (ratio_limit_compare(mu_g, mu_j, mu_i, mu_ij, theta) != -1)
      return fail_pair("mixed case must order alpha_j(G) below alpha_j(G minus i)");
  } else if (cj == SignClass::Pos && cjd == SignClass::Pos && ci == SignClass::Neg &&
             cid == SignClass::Neg) {
    if (ratio_limit_compare(mu_i, mu_ij, mu_g, mu_j, theta) != -1)
      return fail_pair("mixed case must order alpha_j(G minus i) below alpha_j(G)");
    if (ratio_limit_compare(mu_g, mu_i, mu_j, mu_ij, theta) != -1)
      return fail_pair("mixed case must order alpha_i(G) below alpha_i(G minus j)");
  } else {
    note = "strict ordering case not covered";
  }
  return note.empty() ? Verdict::pass() : Verdict::pass(note);
}

inline Verdict sign_table_check(const WeightedGraph& g, const AlgebraicNumber& theta, int i,
                                int j) {
  if (i == j || !g.has_vertex(i) || !g.has_vertex(j))
    throw std::invalid_argument("needs two distinct present vertices");
  return sign_table_check(g, theta, i, j, detail::contraction_weight_unchecked(g, i, j));
}

// The four bookkeeping statements tying classes, frontiers and neighborhoods
// together, each recomputed from scratch.
inline Verdict internal_frontier_checks(const WeightedGraph& g, const AlgebraicNumber& theta) {
  if (g.vertex_count() == 0) throw std::invalid_argument("needs a non-empty graph");
  const int m = multiplicity_at(matching_polynomial(g), theta);
  std::map<int, SignClass> classes;
  VertexSet d, inf;
  for (int v : g.present()) {
    const SignClass c = alpha_class(g, v, theta);
    classes.emplace(v, c);
    if (c == SignClass::Zero) d.insert(v);
    if (c == SignClass::Inf) inf.insert(v);
  }

  if ((m >= 1) != !d.empty())
    return Verdict::fail("root of the matching polynomial without zero-class vertices");

  for (int i : g.present()) {
    bool neighbor_zero = false;
    const WeightedGraph gi = g.delete_vertex(i);
    for (int j : g.neighbors(i))
      if (alpha_class(gi, j, theta) == SignClass::Zero) {
        neighbor_zero = true;
        break;
      }
    if ((classes.at(i) == SignClass::Inf) != neighbor_zero)
      return Verdict::fail("infinite class must coincide with a zero-class neighbor after deletion"
                           " at vertex " +
                           std::to_string(i));
  }

  const VertexSet a = frontier(g, d);
  if (!a.subset_of(inf))
    return Verdict::fail("frontier of the zero class leaked outside the infinite class");

  for (int i : a) {
    const WeightedGraph gi = g.delete_vertex(i);
    for (int j : gi.present()) {
      const SignClass before = classes.at(j);
      const SignClass after = alpha_class(gi, j, theta);
      const bool sign_before = before == SignClass::Pos || before == SignClass::Neg;
      const bool matches = (after == SignClass::Pos) == (before == SignClass::Pos) &&
                           (after == SignClass::Neg) == (before == SignClass::Neg);
      if (!matches)
        return Verdict::fail("sign sets changed when deleting frontier vertex " +
                             std::to_string(i));
      if (sign_before && !detail::cross_difference_vanishes(g, i, j, theta))
        return Verdict::fail("sign-class alpha value changed when deleting frontier vertex " +
                             std::to_string(i));
    }
  }
  return Verdict::pass();
}

}  // namespace mugraph
