#pragma once

#include "mugraph/graph.hpp"
#include "mugraph/prng.hpp"

#include <stdexcept>

namespace mugraph {

struct RandomGraphOptions {
  Rational edge_probability = make_rational(1, 2);
  // Unit instances keep every offset 0 and every present edge at -1; weighted
  // ones draw offsets from [-2, 2] and edge weights from [-3, -1/3], both on
  // grids with denominator at most 8.
  bool weighted = false;
  bool require_connected = false;
};

// Draw order is part of the format: offsets for vertices 1..n first, then for
// each pair u < v in lexicographic order one presence draw and, if present and
// weighted, one weight draw. Identical seeds give identical graphs.
inline WeightedGraph random_graph(Xorshift64Star& rng, int n,
                                  const RandomGraphOptions& opt = {}) {
  if (n < 0 || n > 63) throw std::invalid_argument("vertex count out of range");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    GraphBuilder b(n);
    if (opt.weighted)
      for (int v = 1; v <= n; ++v) b.offset(v, rng.rational_in(Rational(-2), Rational(2), 8));
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v) {
        if (!rng.bernoulli(opt.edge_probability)) continue;
        b.edge(u, v, opt.weighted ? rng.rational_in(Rational(-3), make_rational(-1, 3), 8)
                                  : Rational(-1));
      }
    WeightedGraph g = b.build();
    if (!opt.require_connected || is_connected(g)) return g;
  }
  throw std::invalid_argument("no connected graph found for these parameters");
}

}  // namespace mugraph
