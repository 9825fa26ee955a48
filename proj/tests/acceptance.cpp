// Acceptance gate. Runs the named criteria (all of them when invoked bare),
// prints one [PASS]/[FAIL] line per criterion, and exits nonzero when any
// check failed. Every corpus is seeded, so two runs print identical reports.

#include "mugraph/bounds.hpp"
#include "mugraph/classify.hpp"
#include "mugraph/generate.hpp"
#include "mugraph/graph.hpp"
#include "mugraph/matchpoly.hpp"
#include "mugraph/oracle.hpp"
#include "mugraph/pathtree.hpp"
#include "mugraph/verify.hpp"

#include "support/corpus.hpp"

#include <algorithm>
#include <cstddef>
#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace mugraph;

struct Tally {
  long long checks = 0;
  long long skipped = 0;  // unmet hypotheses and degenerate probes, never failures
  std::vector<std::string> failures;

  void require(bool ok, const std::string& where) {
    ++checks;
    if (!ok) failures.push_back(where);
  }
};

// Per-instance context. Failure messages embed the serialized graph so any
// reported instance can be replayed through the CLI verbatim.
class Scope {
 public:
  Scope(Tally& t, const WeightedGraph& g, std::string tag)
      : t_(t), g_(g), tag_(std::move(tag)) {}

  void require(bool ok, const std::string& what) {
    ++t_.checks;
    if (!ok) fail(what);
  }

  void verdict(const Verdict& v, const std::string& what) {
    ++t_.checks;
    if (v.status == Verdict::Status::Fail)
      fail(what + ": " + v.detail);
    else if (v.status == Verdict::Status::NotApplicable)
      ++t_.skipped;
  }

  void fail(const std::string& what) {
    t_.failures.push_back(tag_ + " " + what + " on " + serialize_graph(g_).dump());
  }

  void skip() { ++t_.checks, ++t_.skipped; }

 private:
  Tally& t_;
  const WeightedGraph& g_;
  std::string tag_;
};

using Instances = std::vector<std::pair<std::string, WeightedGraph>>;

Instances unit_corpus(int n_max) {
  Instances out;
  int idx = 0;
  for (auto& g : corpus::connected_unit_graphs_upto(n_max))
    out.emplace_back("unit#" + std::to_string(idx++), std::move(g));
  return out;
}

void append_draws(Instances& out, Xorshift64Star& rng, int count, int n_lo, int n_hi,
                  const RandomGraphOptions& opt) {
  for (int k = 0; k < count; ++k)
    out.emplace_back("draw#" + std::to_string(k), corpus::random_instance(rng, n_lo, n_hi, opt));
}

std::string pair_tag(int u, int v) {
  return " pair=(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

// The memoized deletion recurrence must reproduce the matching-enumeration
// polynomial on every instance.
void oracle_equivalence(Tally& t) {
  Instances instances = unit_corpus(6);
  Xorshift64Star rng(101);
  RandomGraphOptions weighted;
  weighted.weighted = true;
  append_draws(instances, rng, 200, 1, 8, weighted);
  for (const auto& [tag, g] : instances) {
    Scope s(t, g, tag);
    const Polynomial fast = matching_polynomial(g);
    s.require(fast == matching_polynomial_bruteforce(g),
              "recurrence agrees with matching enumeration");
    s.require(fast.degree() == g.vertex_count(), "degree equals the vertex count");
    s.require(!fast.is_zero() && fast.leading() == Rational(1), "polynomial is monic");
  }
  t.require(matching_polynomial(GraphBuilder(0).build()) == Polynomial::one(),
            "the empty graph has matching polynomial 1");
}

void real_rooted_bracket(Tally& t) {
  Instances instances = unit_corpus(6);
  Xorshift64Star rng(202);
  for (int k = 0; k < 200; ++k) {
    RandomGraphOptions opt;
    opt.weighted = (k % 2) != 0;
    instances.emplace_back("draw#" + std::to_string(k), corpus::random_instance(rng, 1, 10, opt));
  }
  for (const auto& [tag, g] : instances) {
    Scope s(t, g, tag);
    s.verdict(real_rooted_bracket_check(g), "real-rooted inside the Heilmann-Lieb bracket");
  }
}

// Algebraic identities: the derivative sum, Christoffel-Darboux and the
// contraction form over every vertex pair, Godsil's path-tree identity from
// every root vertex.
void identity_suites(Tally& t) {
  Instances instances = unit_corpus(6);
  Xorshift64Star rng(303);
  RandomGraphOptions weighted;
  weighted.weighted = true;
  append_draws(instances, rng, 60, 2, 8, weighted);
  for (const auto& [tag, g] : instances) {
    Scope s(t, g, tag);
    s.verdict(derivative_identity_check(g), "derivative-sum");
    const std::vector<int> vs = g.present().to_vector();
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b) {
        s.verdict(christoffel_darboux_check(g, vs[a], vs[b]),
                  "christoffel-darboux" + pair_tag(vs[a], vs[b]));
        s.verdict(contraction_identity_check(g, vs[a], vs[b]),
                  "contraction-identity" + pair_tag(vs[a], vs[b]));
      }
  }

  // Path trees grow like the number of simple paths, and mu of a tree on N
  // nodes has coefficients with hundreds of digits once N passes a few
  // hundred; the cap keeps exact arithmetic inside the time budget while
  // still covering every root of every sparse and medium-density instance.
  // K6 (326 nodes per root) sits just under it.
  constexpr std::size_t kGodsilNodeCap = 400;
  Instances tree_instances = unit_corpus(7);
  Xorshift64Star tree_rng(313);
  append_draws(tree_instances, tree_rng, 40, 1, 7, weighted);
  for (const auto& [tag, g] : tree_instances) {
    Scope s(t, g, tag);
    for (int i : g.present()) {
      if (build_path_tree(g, i).nodes.size() > kGodsilNodeCap) {
        s.skip();
        continue;
      }
      s.verdict(godsil_identity_check(g, i), "godsil root=" + std::to_string(i));
    }
  }
}

// The refined decomposition at every distinct root: the multiplicity formula,
// the frontier bookkeeping, the matched condition, stability under deleting
// any frontier vertex, criticality of connected all-zero instances, and the
// sign table over every vertex pair.
void structure_theorems(Tally& t) {
  Instances instances = unit_corpus(6);
  Xorshift64Star rng(404);
  RandomGraphOptions weighted;
  weighted.weighted = true;
  append_draws(instances, rng, 100, 1, 10, weighted);
  for (const auto& [tag, g] : instances) {
    Scope s(t, g, tag);
    const std::vector<AlgebraicNumber> roots = distinct_matching_roots(g);
    for (std::size_t r = 0; r < roots.size(); ++r) {
      const AlgebraicNumber& theta = roots[r];
      const std::string at = " theta=root:" + std::to_string(r + 1);
      s.verdict(multiplicity_formula_check(g, theta), "multiplicity-formula" + at);
      s.verdict(internal_frontier_checks(g, theta), "frontier-bookkeeping" + at);
      s.verdict(matched_condition_check(g, theta), "matched-condition" + at);
      const ThetaDecomposition d = decompose(g, theta);
      for (int i : d.A)
        s.verdict(stability_check(g, theta, i), "frontier-stability i=" + std::to_string(i) + at);
      if (is_connected(g) && d.D == g.present())
        s.verdict(gallai_check(g, theta), "gallai-critical" + at);
    }
    const std::vector<int> vs = g.present().to_vector();
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b) {
        const ContractionWeight w = detail::contraction_weight_unchecked(g, vs[a], vs[b]);
        for (std::size_t r = 0; r < roots.size(); ++r)
          s.verdict(sign_table_check(g, roots[r], vs[a], vs[b], w),
                    "sign-table" + pair_tag(vs[a], vs[b]) + " theta=root:" + std::to_string(r + 1));
      }
  }
}

// Inertia counts along a Hamiltonian path at rational probes below, between
// and above the roots, the 0-path step law at every root, and the plus-count
// bookkeeping across the whole grid. Probes that hit a root of some chain
// polynomial are degenerate for the chain and are skipped, never failed.
void sylvester_inertia(Tally& t) {
  Instances instances;
  int idx = 0;
  for (int n = 2; n <= 6; ++n)
    for (auto& g : corpus::connected_unit_graphs(n))
      instances.emplace_back("unit#" + std::to_string(idx++), std::move(g));
  Xorshift64Star rng(505);
  RandomGraphOptions weighted;
  weighted.weighted = true;
  weighted.require_connected = true;
  append_draws(instances, rng, 40, 2, 8, weighted);

  long long hamiltonian = 0;
  for (const auto& [tag, g] : instances) {
    const detail::HamiltonianSearch hs = detail::find_hamiltonian_path(g);
    if (!hs.path) continue;
    ++hamiltonian;
    Scope s(t, g, tag);
    const VertexPath& c = *hs.path;
    const std::vector<std::pair<AlgebraicNumber, int>> roots = matching_roots(g);

    std::vector<Rational> grid;
    grid.push_back(Rational(roots.front().first.iv.lo - 1));
    for (std::size_t k = 1; k < roots.size(); ++k)
      grid.push_back(Rational((roots[k - 1].first.iv.hi + roots[k].first.iv.lo) / 2));
    grid.push_back(Rational(roots.back().first.iv.hi + 1));

    for (const Rational& probe : grid) {
      try {
        s.verdict(sylvester_count(g, c, probe).verdict,
                  "sylvester-inertia theta=" + to_string(probe));
      } catch (const std::invalid_argument&) {
        s.skip();
      }
    }
    try {
      s.verdict(plus_sign_monotonicity_check(g, c, grid), "plus-monotonicity");
    } catch (const std::invalid_argument&) {
      s.skip();
    }
    for (std::size_t r = 0; r < roots.size(); ++r) {
      ++t.checks;
      try {
        zero_path_check(g, c, roots[r].first);
      } catch (const std::logic_error& e) {
        s.fail("zero-path-step theta=root:" + std::to_string(r + 1) + ": " + e.what());
      }
    }
  }
  t.require(hamiltonian >= 100, "the corpus must contain enough Hamiltonian instances");
}

// The matching-number decomposition, rebuilt by plain enumeration, and its
// agreement with the refined decomposition at theta = 0 on unit weights.
void classical_gallai_edmonds(Tally& t) {
  Instances instances = unit_corpus(7);
  Xorshift64Star rng(606);
  append_draws(instances, rng, 100, 1, 12, RandomGraphOptions{});
  for (const auto& [tag, g] : instances) {
    Scope s(t, g, tag);
    s.verdict(ge_structure_check(g), "classical-structure");
    s.verdict(crosscheck_theta_zero(g), "classical-crosscheck");
  }
}

void zero_bounds(Tally& t) {
  Xorshift64Star rng(707);
  for (int k = 0; k < 100; ++k) {
    RandomGraphOptions opt;
    opt.weighted = (k % 2) != 0;
    opt.require_connected = true;
    const WeightedGraph g = corpus::random_instance(rng, 3, 10, opt);
    Scope s(t, g, "draw#" + std::to_string(k));
    s.verdict(extreme_zero_check(g), "extreme-zeros");
    s.verdict(star_bounds_check(g).verdict, "star-bounds");
    int ei = 0;
    int ej = 0;
    const std::vector<int> vs = g.present().to_vector();
    for (std::size_t a = 0; a < vs.size() && ei == 0; ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b)
        if (g.adjacent(vs[a], vs[b])) {
          ei = vs[a];
          ej = vs[b];
          break;
        }
    s.verdict(edge_monotonicity_check(g, ei, ej, Rational(g.weight(ei, ej) / 2)),
              "edge-monotonicity edge=(" + std::to_string(ei) + "," + std::to_string(ej) + ")");
  }

  {
    const WeightedGraph g = complete_graph(3);
    Scope s(t, g, "K3");
    s.require(heilmann_lieb_bound(g).b == Rational(1), "Heilmann-Lieb B is 1");
    s.verdict(star_bounds_check(g).verdict, "star-bounds");
    s.verdict(extreme_zero_check(g), "extreme-zeros");
  }
  {
    const WeightedGraph g = star_graph(3);
    Scope s(t, g, "K1,3");
    const ZeroBounds zb = star_bounds_check(g);
    s.require(zb.b == Rational(2), "Heilmann-Lieb B is 2");
    s.require(zb.r_max == Rational(0), "largest offset is 0");
    s.verdict(zb.verdict, "star-bounds");
    s.verdict(extreme_zero_check(g), "extreme-zeros");
  }
}

// Hand-checkable instances with every value frozen and recomputed through an
// enumeration route.
void micro_examples(Tally& t) {
  const AlgebraicNumber zero = AlgebraicNumber::from_rational(Rational(0));
  {
    const WeightedGraph g = path_graph(3);
    Scope s(t, g, "P3");
    const ThetaDecomposition d = decompose(g, zero);
    s.require(d.m == 1, "multiplicity of the root 0 is 1");
    s.require(d.D == VertexSet::of({1, 3}) && d.A == VertexSet::single(2), "D = {1,3} and A = {2}");
    s.require(d.Nminus.empty() && d.Nplus.empty() && d.P.empty(), "no other classes");
    const ClassicalDecomposition cl = classical_decomposition(g);
    s.require(cl.D == d.D && cl.A == d.A && cl.deficiency == d.m,
              "agrees with the matching-number route");
  }
  {
    const WeightedGraph g = star_graph(3);
    Scope s(t, g, "K1,3");
    const ThetaDecomposition d = decompose(g, zero);
    s.require(d.m == 2, "multiplicity of the root 0 is 2");
    s.require(d.classes.at(1) == SignClass::Inf, "the center is infinite-class");
    s.require(d.D == VertexSet::of({2, 3, 4}) && d.A == VertexSet::single(1),
              "D is the leaves and A the center");
    s.require(multiplicity_at(matching_polynomial_bruteforce(g), zero) == 2,
              "the enumerated polynomial has a double root at 0");
    s.require(g.vertex_count() - 2 * max_matching_size(g) == 2, "deficiency is 2");
  }
  {
    const WeightedGraph g = path_graph(3);
    Scope s(t, g, "P3-sylvester");
    const SylvesterCount sc = sylvester_count(g, {1, 2, 3}, make_rational(6, 5));
    s.require(sc.forward == 2 && sc.reverse == 2 && sc.roots_below == 2,
              "two positive ratios in both directions");
    s.verdict(sc.verdict, "sylvester-inertia");
    int below = 0;
    for (const auto& [root, mult] : roots_with_multiplicity(matching_polynomial_bruteforce(g)))
      if (compare(root, make_rational(6, 5)) < 0) below += mult;
    s.require(below == 2, "the enumerated polynomial has two roots below 6/5");
  }
  {
    const WeightedGraph g = path_graph(3);
    Scope s(t, g, "P3-contraction");
    const ContractionWeight w = contraction_weight(g, 1, 3);
    s.require(w.num == Polynomial{Rational(-1)}, "numerator is -1");
    s.require(w.den == Polynomial{Rational(0), Rational(0), Rational(1)}, "denominator is x^2");
    s.require(contraction_class_at(w, zero) == ContractionClass::MinusInfinity,
              "the weight diverges at 0");
    const Polynomial cross = matching_polynomial_bruteforce(g.delete_vertex(1)) *
                                 matching_polynomial_bruteforce(g.delete_vertex(3)) -
                             matching_polynomial_bruteforce(g.delete_vertex(1).delete_vertex(3)) *
                                 matching_polynomial_bruteforce(g);
    s.require(cross == Polynomial{Rational(1)},
              "the enumerated cross-difference is the path square sum 1");
  }
}

struct Criterion {
  const char* name;
  void (*run)(Tally&);
};

constexpr Criterion kCriteria[] = {
    {"oracle_equivalence", oracle_equivalence},
    {"real_rooted_bracket", real_rooted_bracket},
    {"identity_suites", identity_suites},
    {"structure_theorems", structure_theorems},
    {"sylvester", sylvester_inertia},
    {"classical_gallai_edmonds", classical_gallai_edmonds},
    {"zero_bounds", zero_bounds},
    {"micro_examples", micro_examples},
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const std::string& name : wanted) {
    const bool known = std::any_of(std::begin(kCriteria), std::end(kCriteria),
                                   [&](const Criterion& c) { return name == c.name; });
    if (!known) {
      std::cerr << "unknown criterion '" << name << "'; known:";
      for (const Criterion& c : kCriteria) std::cerr << " " << c.name;
      std::cerr << "\n";
      return 2;
    }
  }

  bool all_ok = true;
  for (const Criterion& c : kCriteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.name) == wanted.end())
      continue;
    Tally t;
    try {
      c.run(t);
    } catch (const std::exception& e) {
      t.failures.push_back(std::string("unhandled exception: ") + e.what());
    }
    if (t.failures.empty()) {
      std::cout << "[PASS] " << c.name << " (" << t.checks << " checks";
      if (t.skipped > 0) std::cout << ", " << t.skipped << " skipped";
      std::cout << ")\n";
    } else {
      all_ok = false;
      std::cout << "[FAIL] " << c.name << " (" << t.failures.size() << " of " << t.checks
                << " checks failed)\n";
      for (std::size_t k = 0; k < t.failures.size() && k < 5; ++k)
        std::cout << "       " << t.failures[k] << "\n";
    }
  }
  return all_ok ? 0 : 1;
}
