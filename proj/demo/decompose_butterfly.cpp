// Walkthrough of the core library calls on the butterfly graph (two
// triangles sharing vertex 3). The graph is factor-critical, so at the root
// 0 every vertex is zero-class and the decomposition is D = V, m = 1.
//
//   build:  cmake --build build --target demo_decompose_butterfly
//   run:    build/demo_decompose_butterfly

#include "mugraph/classify.hpp"
#include "mugraph/matchpoly.hpp"
#include "mugraph/oracle.hpp"

#include <iostream>

using namespace mugraph;

int main() {
  const WeightedGraph g = unit_graph(5, {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});

  std::cout << "mu(G) = " << to_string(matching_polynomial(g)) << "\n\n";

  const auto roots = matching_roots(g);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const auto& [theta, mult] = roots[k];
    std::cout << "root " << k + 1 << ": ";
    if (theta.is_rational())
      std::cout << to_string(theta.rational_value()) << " exactly";
    else
      std::cout << "~" << approx(theta);
    std::cout << ", multiplicity " << mult << "\n";

    const ThetaDecomposition d = decompose(g, theta);
    std::cout << "  classes:";
    for (const auto& [v, c] : d.classes) std::cout << " " << v << ":" << to_string(c);
    std::cout << "\n  D has " << d.D.size() << " vertices, A has " << d.A.size()
              << ", multiplicity " << d.m << "\n";
  }

  // The classical decomposition (pure matching counting) agrees at 0.
  const ClassicalDecomposition cl = classical_decomposition(g);
  std::cout << "\nclassical: |D| = " << cl.D.size() << ", |A| = " << cl.A.size()
            << ", deficiency " << cl.deficiency << "\n";
  std::cout << "crosscheck at 0: " << to_string(crosscheck_theta_zero(g).status) << "\n";
  return 0;
}
