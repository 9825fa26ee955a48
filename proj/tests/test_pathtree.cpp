#include "mugraph/pathtree.hpp"

#include "mugraph/generate.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace mugraph;

namespace {

AlgebraicNumber at(int q) { return AlgebraicNumber::from_rational(Rational(q)); }

WeightedGraph cycle_graph(int n) {
  GraphBuilder b(n);
  for (int v = 1; v < n; ++v) b.edge(v, v + 1, Rational(-1));
  b.edge(n, 1, Rational(-1));
  return b.build();
}

// Zero-count minus infinity-count of the classes along the prefix chain of c.
int chain_zero_inf_diff(const WeightedGraph& g, const VertexPath& c, const AlgebraicNumber& theta) {
  int diff = 0;
  WeightedGraph h = g;
  for (int v : c) {
    const SignClass cls = alpha_class(h, v, theta);
    if (cls == SignClass::Zero) ++diff;
    if (cls == SignClass::Inf) --diff;
    h = h.delete_vertex(v);
  }
  return diff;
}

}  // namespace

TEST_CASE("path trees of trees are the trees themselves", "[pathtree]") {
  for (const WeightedGraph& g : {path_graph(4), star_graph(3)}) {
    for (int i : g.present()) {
      const PathTree t = build_path_tree(g, i);
      CHECK(t.nodes.size() == static_cast<std::size_t>(g.vertex_count()));
      const auto [mu_t, mu_t_root] = path_tree_mu(t);
      CHECK(mu_t == matching_polynomial(g));
      CHECK(mu_t_root == matching_polynomial(g.delete_vertex(i)));
    }
  }
  const PathTree single = build_path_tree(unit_graph(1, {}), 1);
  CHECK(single.nodes.size() == 1);
  CHECK(path_tree_mu(single).first == Polynomial::x());
}

TEST_CASE("path tree node counts match path enumeration", "[pathtree]") {
  const WeightedGraph k3 = complete_graph(3);
  CHECK(build_path_tree(k3, 1).nodes.size() == 5);
  const WeightedGraph c4 = cycle_graph(4);
  const PathTree t = build_path_tree(c4, 1);
  std::size_t paths = 1;
  for (int j : c4.present())
    if (j != 1) paths += enumerate_paths(c4, 1, j).size();
  CHECK(t.nodes.size() == paths);
  CHECK(t.nodes.size() == 7);
  for (std::size_t k = 1; k < t.nodes.size(); ++k) {
    const VertexPath& p = t.nodes[k].path;
    const VertexPath& parent = t.nodes[t.nodes[k].parent].path;
    REQUIRE(parent.size() + 1 == p.size());
    CHECK(std::equal(parent.begin(), parent.end(), p.begin()));
  }
  CHECK_THROWS_AS(build_path_tree(k3, 9), std::invalid_argument);
}

TEST_CASE("the tree identity holds across graph families", "[pathtree]") {
  std::vector<WeightedGraph> graphs = {complete_graph(3), cycle_graph(4), cycle_graph(5),
                                       complete_graph(4), star_graph(4)};
  RandomGraphOptions opt;
  opt.weighted = true;
  for (std::uint64_t seed = 71; seed < 75; ++seed) {
    Xorshift64Star rng(seed);
    graphs.push_back(random_graph(rng, 6, opt));
  }
  for (const WeightedGraph& g : graphs)
    for (int i : g.present()) CHECK(godsil_identity_check(g, i).passed());
}

TEST_CASE("the node guard trips on dense graphs", "[pathtree]") {
  CHECK_THROWS_AS(build_path_tree(complete_graph(9), 1), std::runtime_error);
}

TEST_CASE("sign annotation of the path at zero", "[pathtree]") {
  const SignAnnotation an = annotate_signs(path_graph(3), 1, at(0));
  REQUIRE(an.tree.nodes.size() == 3);
  CHECK(an.classes[0] == SignClass::Zero);
  CHECK(an.classes[1] == SignClass::Inf);
  CHECK(an.classes[2] == SignClass::Zero);
  CHECK(render_annotation(an) == "1 0\n  2 inf\n    3 0\n");

  const nlohmann::json j = to_json(an);
  CHECK(j["path"] == nlohmann::json({1}));
  CHECK(j["class"] == "zero");
  CHECK(j["children"][0]["path"] == nlohmann::json({1, 2}));
  CHECK(j["children"][0]["class"] == "inf");
  CHECK(j["children"][0]["children"][0]["class"] == "zero");
}

TEST_CASE("annotation saturates far from the roots", "[pathtree]") {
  const WeightedGraph g = complete_graph(3);
  const SignAnnotation below = annotate_signs(g, 1, at(-10));
  const SignAnnotation above = annotate_signs(g, 1, at(10));
  for (SignClass c : below.classes) CHECK(c == SignClass::Neg);
  for (SignClass c : above.classes) CHECK(c == SignClass::Pos);
}

TEST_CASE("annotation invariant holds at all roots of small graphs", "[pathtree]") {
  std::vector<WeightedGraph> graphs = {path_graph(4), cycle_graph(4), complete_graph(4)};
  Xorshift64Star rng(77);
  RandomGraphOptions opt;
  opt.weighted = true;
  graphs.push_back(random_graph(rng, 5, opt));
  for (const WeightedGraph& g : graphs)
    for (const AlgebraicNumber& theta : distinct_matching_roots(g))
      for (int i : g.present()) CHECK(annotate_signs(g, i, theta).classes.size() > 0);
}

TEST_CASE("zero paths on the three-vertex path", "[pathtree]") {
  const WeightedGraph g = path_graph(3);
  CHECK(zero_path_check(g, {1, 2, 3}, at(0)));
  CHECK_FALSE(zero_path_check(g, {2}, at(0)));
  CHECK_FALSE(zero_path_check(g, {1, 2}, at(0)));
  CHECK_THROWS_AS(zero_path_check(g, {1, 3}, at(0)), std::invalid_argument);
}

TEST_CASE("multiplicity drop along a path is direction independent", "[pathtree]") {
  std::vector<WeightedGraph> graphs = {path_graph(4), cycle_graph(5), complete_graph(4)};
  Xorshift64Star rng(79);
  RandomGraphOptions opt;
  opt.weighted = true;
  opt.require_connected = true;
  graphs.push_back(random_graph(rng, 5, opt));
  for (const WeightedGraph& g : graphs) {
    const std::vector<int> vs = g.present().to_vector();
    for (int a : vs)
      for (int b : vs) {
        if (a >= b) continue;
        for (const VertexPath& c : enumerate_paths(g, a, b)) {
          std::vector<AlgebraicNumber> points = distinct_matching_roots(g);
          points.push_back(at(1));
          for (const AlgebraicNumber& theta : points) {
            const int drop =
                multiplicity_at(matching_polynomial(g), theta) -
                multiplicity_at(matching_polynomial(g.delete_vertices(VertexSet::of(c))), theta);
            const VertexPath rev(c.rbegin(), c.rend());
            CHECK(drop <= 1);
            CHECK(chain_zero_inf_diff(g, c, theta) == drop);
            CHECK(chain_zero_inf_diff(g, rev, theta) == drop);
          }
        }
      }
  }
}

TEST_CASE("sign counts along a Hamiltonian path count the roots below", "[pathtree]") {
  const WeightedGraph g = path_graph(3);
  const SylvesterCount s = sylvester_count(g, {1, 2, 3}, Rational(6, 5));
  CHECK(s.forward == 2);
  CHECK(s.reverse == 2);
  CHECK(s.roots_below == 2);
  CHECK(s.verdict.passed());

  CHECK(sylvester_count(g, {1, 2, 3}, Rational(-10)).forward == 0);
  CHECK(sylvester_count(g, {1, 2, 3}, Rational(10)).forward == 3);

  CHECK_THROWS_AS(sylvester_count(g, {1, 2, 3}, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(sylvester_count(g, {1, 2, 3}, Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(sylvester_count(g, {1, 2}, Rational(5)), std::invalid_argument);
}

TEST_CASE("sign counts agree across directions and random points", "[pathtree]") {
  std::vector<std::pair<WeightedGraph, VertexPath>> cases;
  cases.emplace_back(path_graph(5), VertexPath{1, 2, 3, 4, 5});
  cases.emplace_back(cycle_graph(5), VertexPath{2, 1, 5, 4, 3});
  {
    GraphBuilder b(4);
    b.offset(1, Rational(1, 2)).offset(3, Rational(-1));
    b.edge(1, 2, Rational(-2)).edge(2, 3, Rational(-1, 3)).edge(3, 4, Rational(-1))
        .edge(1, 4, Rational(-1, 2));
    cases.emplace_back(b.build(), VertexPath{1, 2, 3, 4});
  }
  for (const auto& [g, c] : cases) {
    for (int q = -9; q <= 9; ++q) {
      const Rational theta(2 * q + 1, 4);
      try {
        const SylvesterCount s = sylvester_count(g, c, theta);
        const bool ok = s.verdict.passed();
        CHECK(ok);
      } catch (const std::invalid_argument&) {
        // degenerate sample point; the grid steps over it
      }
    }
  }
}

TEST_CASE("plus counts move with the straddled root weights", "[pathtree]") {
  const WeightedGraph g = path_graph(3);
  const std::vector<Rational> grid = {Rational(-2), Rational(-6, 5), Rational(3, 4), Rational(2)};
  CHECK(plus_sign_monotonicity_check(g, {1, 2, 3}, grid).passed());
  const std::vector<Rational> grid2 = {Rational(-2), Rational(-6, 5), Rational(-1, 2),
                                       Rational(3, 4), Rational(2)};
  CHECK(plus_sign_monotonicity_check(g, {2}, grid2).passed());
  CHECK(plus_sign_monotonicity_check(g, {1, 2, 3}, {}).passed());
  CHECK_THROWS_AS(plus_sign_monotonicity_check(g, {1, 2, 3}, {Rational(1), Rational(0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(plus_sign_monotonicity_check(g, {1, 2, 3}, {Rational(0)}),
                  std::invalid_argument);
}

TEST_CASE("plus count law on random connected graphs", "[pathtree]") {
  RandomGraphOptions opt;
  opt.weighted = true;
  opt.require_connected = true;
  for (std::uint64_t seed = 83; seed < 86; ++seed) {
    Xorshift64Star rng(seed);
    const WeightedGraph g = random_graph(rng, 5, opt);
    const std::vector<int> vs = g.present().to_vector();
    for (int a : vs)
      for (int b : vs) {
        if (a >= b) continue;
        for (const VertexPath& c : enumerate_paths(g, a, b)) {
          std::vector<Rational> grid;
          for (int q = -8; q <= 8; ++q) grid.push_back(Rational(2 * q + 1, 8));
          try {
            const Verdict v = plus_sign_monotonicity_check(g, c, grid);
            CHECK(v.passed());
          } catch (const std::invalid_argument&) {
            // a grid point hit a chain root; acceptable for random weights
          }
        }
      }
  }
}
