// Weighted instance: offsets and edge weights are exact rationals, and every
// downstream object (roots, sign classes, path tree annotation) stays exact.
//
//   build:  cmake --build build --target demo_weighted_signs
//   run:    build/demo_weighted_signs

#include "mugraph/classify.hpp"
#include "mugraph/matchpoly.hpp"
#include "mugraph/pathtree.hpp"

#include <iostream>
#include <string>

using namespace mugraph;

static std::string show(const AlgebraicNumber& t) {
  if (t.is_rational()) return to_string(t.rational_value());
  return "~" + std::to_string(approx(t));
}

int main() {
  // A path 1-2-3 with a heavy middle vertex and uneven couplings.
  const WeightedGraph g = GraphBuilder(3)
                              .offset(2, make_rational(1, 2))
                              .edge(1, 2, Rational(-2))
                              .edge(2, 3, make_rational(-1, 3))
                              .build();

  std::cout << "mu(G) = " << to_string(matching_polynomial(g)) << "\n";

  const auto roots = distinct_matching_roots(g);
  std::cout << "distinct roots:";
  for (const auto& r : roots) std::cout << " " << show(r);
  std::cout << "\n\n";

  // Sign classes at the middle root, then the annotated path tree seen from
  // vertex 1: children of a node are its one-vertex path extensions.
  const AlgebraicNumber& theta = roots[1];
  const ThetaDecomposition d = decompose(g, theta);
  std::cout << "at the middle root (" << show(theta) << "):\n";
  for (const auto& [v, c] : d.classes) std::cout << "  vertex " << v << " is " << to_string(c) << "\n";

  std::cout << "\npath tree from vertex 1, classes at the same point:\n";
  std::cout << render_annotation(annotate_signs(g, 1, theta));
  return 0;
}
