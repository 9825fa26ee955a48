#pragma once

#include "mugraph/classify.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mugraph {

// One node of a rooted path tree: the simple path of G it stands for, the
// path endpoint's offset, and the weight of the edge that extended the
// parent's path. The parent is always the maximal proper prefix.
struct PathTreeNode {
  VertexPath path;
  Rational offset;
  Rational lambda;
  int parent;
  std::vector<int> children;
};

// All simple paths of G starting at one root vertex, preorder with children
// in ascending endpoint order. Node counts are factorial in the worst case,
// hence the hard guard in the builder.
struct PathTree {
  std::vector<PathTreeNode> nodes;
};

inline constexpr std::size_t kPathTreeNodeGuard = 100000;

inline PathTree build_path_tree(const WeightedGraph& g, int i) {
  if (!g.has_vertex(i)) throw std::invalid_argument("vertex not present");
  PathTree t;
  t.nodes.push_back(PathTreeNode{{i}, g.offset(i), Rational(0), -1, {}});
  std::function<void(int)> expand = [&](int node) {
    const VertexPath path = t.nodes[node].path;  // copy: the vector reallocates below
    const VertexSet used = VertexSet::of(path);
    const int tail = path.back();
    for (int j : g.neighbors(tail)) {
      if (used.contains(j)) continue;
      if (t.nodes.size() >= kPathTreeNodeGuard)
        throw std::runtime_error("path tree exceeds " + std::to_string(kPathTreeNodeGuard) +
                                 " nodes");
      VertexPath q = path;
      q.push_back(j);
      const int child = static_cast<int>(t.nodes.size());
      t.nodes.push_back(PathTreeNode{std::move(q), g.offset(j), g.weight(tail, j), node, {}});
      t.nodes[node].children.push_back(child);
      expand(child);
    }
  };
  expand(0);
  return t;
}

// Matching polynomials of the tree and of the tree minus its root, by the
// subtree pair recursion: with A_u = mu(subtree at u) and B_u = mu(subtree at
// u minus u), A_u = (x - r_u) B_u + sum_c lambda_c B_c prod_{c' != c} A_c'
// and B_u = prod_c A_c. This route never touches the deletion recurrence, so
// it can cross-check it.
inline std::pair<Polynomial, Polynomial> path_tree_mu(const PathTree& t) {
  const std::size_t n = t.nodes.size();
  std::vector<Polynomial> a(n, Polynomial::one());
  std::vector<Polynomial> b(n, Polynomial::one());
  for (std::size_t u = n; u-- > 0;) {
    const std::vector<int>& kids = t.nodes[u].children;
    const std::size_t k = kids.size();
    std::vector<Polynomial> prefix(k + 1, Polynomial::one());
    std::vector<Polynomial> suffix(k + 1, Polynomial::one());
    for (std::size_t c = 0; c < k; ++c) prefix[c + 1] = prefix[c] * a[kids[c]];
    for (std::size_t c = k; c-- > 0;) suffix[c] = suffix[c + 1] * a[kids[c]];
    b[u] = prefix[k];
    Polynomial acc = Polynomial::linear(t.nodes[u].offset) * b[u];
    for (std::size_t c = 0; c < k; ++c)
      acc += b[kids[c]] * prefix[c] * suffix[c + 1] * t.nodes[kids[c]].lambda;
    a[u] = std::move(acc);
  }
  return {a[0], b[0]};
}

// Godsil's identity: the continued fraction of G at i equals the one of the
// path tree at its root, i.e. mu(G) mu(T\root) = mu(G\i) mu(T) exactly.
inline Verdict godsil_identity_check(const WeightedGraph& g, int i) {
  const PathTree t = build_path_tree(g, i);
  const auto [mu_t, mu_t_root] = path_tree_mu(t);
  const Polynomial lhs = matching_polynomial(g) * mu_t_root;
  const Polynomial rhs = matching_polynomial(g.delete_vertex(i)) * mu_t;
  if (lhs != rhs)
    return Verdict::fail("path tree polynomial identity broken at vertex " + std::to_string(i));
  return Verdict::pass();
}

// Per-node sign classes: the node for the path i1..ik carries the class of
// ik in G minus i1..i(k-1). Classes depend on the deleted set only, so they
// are memoized on (deleted mask, endpoint).
struct SignAnnotation {
  PathTree tree;
  std::vector<SignClass> classes;
};

inline SignAnnotation annotate_signs(const WeightedGraph& g, int i, const AlgebraicNumber& theta) {
  SignAnnotation an{build_path_tree(g, i), {}};
  an.classes.reserve(an.tree.nodes.size());
  std::map<std::pair<std::uint64_t, int>, SignClass> memo;
  for (const PathTreeNode& node : an.tree.nodes) {
    VertexSet prefix;
    for (std::size_t k = 0; k + 1 < node.path.size(); ++k) prefix.insert(node.path[k]);
    const int tail = node.path.back();
    const auto key = std::make_pair(prefix.bits(), tail);
    auto it = memo.find(key);
    if (it == memo.end())
      it = memo.emplace(key, alpha_class(g.delete_vertices(prefix), tail, theta)).first;
    an.classes.push_back(it->second);
  }
  // A zero below means the ratio above it has a pole.
  for (std::size_t k = 0; k < an.tree.nodes.size(); ++k) {
    const int p = an.tree.nodes[k].parent;
    if (p >= 0 && an.classes[k] == SignClass::Zero && an.classes[p] != SignClass::Inf)
      throw std::logic_error("zero-class node without an infinite-class parent");
  }
  return an;
}

inline const char* sign_suffix(SignClass c) {
  switch (c) {
    case SignClass::Neg: return "-";
    case SignClass::Zero: return "0";
    case SignClass::Pos: return "+";
    default: return "inf";
  }
}

// One node per line, two spaces of indent per depth, endpoint then suffix.
inline std::string render_annotation(const SignAnnotation& an) {
  std::string out;
  for (std::size_t k = 0; k < an.tree.nodes.size(); ++k) {
    const VertexPath& p = an.tree.nodes[k].path;
    out.append(2 * (p.size() - 1), ' ');
    out += std::to_string(p.back());
    out += ' ';
    out += sign_suffix(an.classes[k]);
    out += '\n';
  }
  return out;
}

namespace detail {

inline nlohmann::json annotation_node_json(const SignAnnotation& an, int node) {
  nlohmann::json path = nlohmann::json::array();
  for (int v : an.tree.nodes[node].path) path.push_back(v);
  nlohmann::json children = nlohmann::json::array();
  for (int c : an.tree.nodes[node].children) children.push_back(annotation_node_json(an, c));
  return nlohmann::json{{"path", path},
                        {"class", to_string(an.classes[node])},
                        {"children", children}};
}

}  // namespace detail

inline nlohmann::json to_json(const SignAnnotation& an) {
  return detail::annotation_node_json(an, 0);
}

// c is a 0-path at theta when deleting it drops the multiplicity by exactly
// one. The drop can never exceed one, and the endpoints of a 0-path must be
// zero-class; both facts are asserted.
inline bool zero_path_check(const WeightedGraph& g, const VertexPath& c,
                            const AlgebraicNumber& theta) {
  if (!is_simple_path(g, c)) throw std::invalid_argument("not a path in this graph");
  const int m = multiplicity_at(matching_polynomial(g), theta);
  const int mc = multiplicity_at(matching_polynomial(g.delete_vertices(VertexSet::of(c))), theta);
  if (m - mc > 1) throw std::logic_error("deleting a path dropped the multiplicity by two");
  if (m - mc != 1) return false;
  if (alpha_class(g, c.front(), theta) != SignClass::Zero ||
      alpha_class(g, c.back(), theta) != SignClass::Zero)
    throw std::logic_error("endpoint of a 0-path is not zero-class");
  return true;
}

namespace detail {

// Signs of mu(G minus the first 0..|c| vertices of c) at a rational point.
// A vanishing entry makes the point degenerate for the chain.
inline std::vector<int> chain_signs(const WeightedGraph& g, const VertexPath& c,
                                    const Rational& theta) {
  std::vector<int> signs;
  WeightedGraph h = g;
  VertexPath deleted;
  for (std::size_t k = 0;; ++k) {
    const int s = sgn(matching_polynomial(h).eval(theta));
    if (s == 0) {
      std::string which = "mu(G";
      for (int v : deleted) which += (v == deleted.front() ? " minus " : ",") + std::to_string(v);
      throw std::invalid_argument(which + ") vanishes at " + to_string(theta));
    }
    signs.push_back(s);
    if (k == c.size()) break;
    h = h.delete_vertex(c[k]);
    deleted.push_back(c[k]);
  }
  return signs;
}

inline int plus_count(const std::vector<int>& signs) {
  int plus = 0;
  for (std::size_t k = 0; k + 1 < signs.size(); ++k)
    if (signs[k] * signs[k + 1] > 0) ++plus;
  return plus;
}

}  // namespace detail

struct SylvesterCount {
  int forward;
  int reverse;
  int roots_below;
  Verdict verdict;
};

// Sylvester's law of inertia for matching polynomials: along a Hamiltonian
// path, the number of positive ratios mu(G minus first k-1)/mu(G minus first
// k) at a generic theta counts the roots of mu(G) below theta, in either
// direction of travel. The same setup forces all n roots to be distinct.
inline SylvesterCount sylvester_count(const WeightedGraph& g, const VertexPath& c,
                                      const Rational& theta) {
  if (!is_simple_path(g, c) || VertexSet::of(c) != g.present())
    throw std::invalid_argument("not a Hamiltonian path of this graph");
  const std::vector<int> fwd = detail::chain_signs(g, c, theta);
  VertexPath rev(c.rbegin(), c.rend());
  const std::vector<int> bwd = detail::chain_signs(g, rev, theta);
  const int vc = detail::plus_count(fwd);
  const int vrev = detail::plus_count(bwd);

  int below = 0;
  int distinct = 0;
  for (const auto& [root, mult] : matching_roots(g)) {
    ++distinct;
    if (compare(root, theta) < 0) below += mult;
  }

  Verdict verdict = Verdict::pass();
  if (distinct != g.present().size())
    verdict = Verdict::fail("a graph with a Hamiltonian path must have distinct roots");
  else if (vc != below || vrev != below)
    verdict = Verdict::fail("sign counts " + std::to_string(vc) + "/" + std::to_string(vrev) +
                            " disagree with " + std::to_string(below) + " roots below " +
                            to_string(theta));
  return SylvesterCount{vc, vrev, below, verdict};
}

// Across any pair of adjacent grid points the plus count along c moves by
// the multiplicity weight of mu(G) roots in between minus that of mu(G\c)
// roots. Whenever the pair straddles exactly one root, the step is at most
// one and hits one precisely when c is a 0-path there.
inline Verdict plus_sign_monotonicity_check(const WeightedGraph& g, const VertexPath& c,
                                            const std::vector<Rational>& grid) {
  if (!is_simple_path(g, c)) throw std::invalid_argument("not a path in this graph");
  for (std::size_t k = 0; k + 1 < grid.size(); ++k)
    if (!(grid[k] < grid[k + 1]))
      throw std::invalid_argument("grid must be strictly increasing");

  std::vector<int> counts;
  for (const Rational& t : grid) counts.push_back(detail::plus_count(detail::chain_signs(g, c, t)));

  const std::vector<std::pair<AlgebraicNumber, int>> roots_g = matching_roots(g);
  const std::vector<std::pair<AlgebraicNumber, int>> roots_gc =
      matching_roots(g.delete_vertices(VertexSet::of(c)));
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const Rational& lo = grid[k];
    const Rational& hi = grid[k + 1];
    int expected = 0;
    std::vector<const AlgebraicNumber*> straddled;
    for (const auto& [root, mult] : roots_g)
      if (compare(root, lo) > 0 && compare(root, hi) < 0) {
        expected += mult;
        straddled.push_back(&root);
      }
    for (const auto& [root, mult] : roots_gc)
      if (compare(root, lo) > 0 && compare(root, hi) < 0) {
        expected -= mult;
        if (straddled.empty() || !equal(*straddled.back(), root)) straddled.push_back(&root);
      }
    const int delta = counts[k + 1] - counts[k];
    if (delta != expected)
      return Verdict::fail("plus count moved by " + std::to_string(delta) + " across (" +
                           to_string(lo) + ", " + to_string(hi) + ") against a root weight of " +
                           std::to_string(expected));
    if (straddled.size() == 1) {
      if (delta > 1)
        return Verdict::fail("plus count climbed by more than one across a single root");
      if ((delta == 1) != zero_path_check(g, c, *straddled.front()))
        return Verdict::fail("plus count step across a single root disagrees with the 0-path test");
    }
  }
  return Verdict::pass();
}

}  // namespace mugraph
