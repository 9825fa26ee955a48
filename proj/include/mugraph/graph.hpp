#pragma once

#include "mugraph/polynomial.hpp"
#include "mugraph/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mugraph {

// Set of 1-based vertex ids, bitmask semantics. Ids are capped at 63 so a set
// fits one machine word.
class VertexSet {
 public:
  VertexSet() = default;
  static VertexSet single(int v) { return VertexSet(bit(v)); }
  static VertexSet range(int n) {
    if (n < 0 || n > 63) throw std::invalid_argument("vertex count out of range");
    return n == 0 ? VertexSet() : VertexSet(((std::uint64_t{1} << n) - 1) << 1);
  }
  static VertexSet of(const std::vector<int>& vs) {
    VertexSet s;
    for (int v : vs) s.insert(v);
    return s;
  }

  bool contains(int v) const { return v >= 1 && v <= 63 && (bits_ & bit(v)); }
  void insert(int v) { bits_ |= bit(v); }
  void erase(int v) { bits_ &= ~bit(v); }
  int size() const { return __builtin_popcountll(bits_); }
  bool empty() const { return bits_ == 0; }
  std::uint64_t bits() const { return bits_; }
  static VertexSet from_bits(std::uint64_t b) { return VertexSet(b & ~std::uint64_t{1}); }

  VertexSet with(int v) const {
    VertexSet s = *this;
    s.insert(v);
    return s;
  }
  VertexSet without(int v) const {
    VertexSet s = *this;
    s.erase(v);
    return s;
  }

  friend VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  friend VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
  friend bool operator==(VertexSet a, VertexSet b) { return a.bits_ == b.bits_; }
  friend bool operator!=(VertexSet a, VertexSet b) { return a.bits_ != b.bits_; }
  bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
  bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (int v : *this) out.push_back(v);
    return out;
  }

  class iterator {
   public:
    explicit iterator(std::uint64_t rest) : rest_(rest) {}
    int operator*() const { return __builtin_ctzll(rest_); }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    bool operator!=(const iterator& o) const { return rest_ != o.rest_; }

   private:
    std::uint64_t rest_;
  };
  iterator begin() const { return iterator(bits_); }
  iterator end() const { return iterator(0); }

  int min() const {
    if (empty()) throw std::logic_error("min of an empty vertex set");
    return __builtin_ctzll(bits_);
  }

 private:
  explicit VertexSet(std::uint64_t b) : bits_(b) {}
  static std::uint64_t bit(int v) {
    if (v < 1 || v > 63) throw std::invalid_argument("vertex id out of range");
    return std::uint64_t{1} << v;
  }
  std::uint64_t bits_ = 0;
};

// A walk with distinct vertices; consecutive entries must be adjacent in the
// graph it is used with.
using VertexPath = std::vector<int>;

namespace detail {

// Memo for matching polynomials, keyed by the present-vertex mask. Shared by
// every subgraph of the same weighted universe; deletions only shrink the mask.
struct MuCache {
  std::mutex mtx;
  std::unordered_map<std::uint64_t, Polynomial> map;
};

}  // namespace detail

// Vertex-weighted graph with nonpositive edge weights; weight 0 means the edge
// is absent. Vertices keep their 1-based ids under deletion: a subgraph shares
// its parent's universe and drops ids from the present set, so vertex classes
// of graph and subgraph are directly comparable.
class WeightedGraph {
 public:
  WeightedGraph(int n, std::vector<Rational> offsets, std::vector<Rational> weights)
      : core_(std::make_shared<const Core>(Core{n, std::move(offsets), std::move(weights)})),
        present_(VertexSet::range(n)),
        cache_(std::make_shared<detail::MuCache>()) {}

  int universe() const { return core_->n; }
  VertexSet present() const { return present_; }
  int vertex_count() const { return present_.size(); }
  bool has_vertex(int v) const { return present_.contains(v); }

  const Rational& offset(int v) const {
    require_vertex(v);
    return core_->offsets[static_cast<std::size_t>(v)];
  }

  const Rational& weight(int u, int v) const {
    require_vertex(u);
    require_vertex(v);
    return core_->weights[idx(u, v)];
  }

  bool adjacent(int u, int v) const { return u != v && sgn(weight(u, v)) != 0; }

  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (int u : present_)
      if (u != v && adjacent(v, u)) out.push_back(u);
    return out;
  }

  WeightedGraph delete_vertices(VertexSet s) const {
    WeightedGraph g = *this;
    g.present_ = present_ - s;
    return g;
  }
  WeightedGraph delete_vertex(int v) const { return delete_vertices(VertexSet::single(v)); }

  // Weight edits produce a fresh universe: the polynomial memo is not shared.
  WeightedGraph with_weight(int u, int v, const Rational& lambda) const {
    require_vertex(u);
    require_vertex(v);
    if (u == v) throw std::invalid_argument("loops are not allowed");
    if (sgn(lambda) > 0) throw std::invalid_argument("edge weight must be <= 0");
    Core c = *core_;
    c.weights[idx(u, v)] = lambda;
    c.weights[idx(v, u)] = lambda;
    return WeightedGraph(std::move(c), present_);
  }
  WeightedGraph with_offset(int v, const Rational& r) const {
    require_vertex(v);
    Core c = *core_;
    c.offsets[static_cast<std::size_t>(v)] = r;
    return WeightedGraph(std::move(c), present_);
  }

  const std::shared_ptr<detail::MuCache>& mu_cache() const { return cache_; }

  // Structural equality on the present part; the universe size is immaterial.
  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    if (a.present_ != b.present_) return false;
    for (int v : a.present_) {
      if (a.offset(v) != b.offset(v)) return false;
      for (int u : a.present_)
        if (u < v && a.weight(u, v) != b.weight(u, v)) return false;
    }
    return true;
  }
  friend bool operator!=(const WeightedGraph& a, const WeightedGraph& b) { return !(a == b); }

 private:
  struct Core {
    int n;
    std::vector<Rational> offsets;  // 1-based, size n+1
    std::vector<Rational> weights;  // (n+1)^2, symmetric, zero diagonal
  };

  WeightedGraph(Core c, VertexSet present)
      : core_(std::make_shared<const Core>(std::move(c))),
        present_(present),
        cache_(std::make_shared<detail::MuCache>()) {}

  std::size_t idx(int u, int v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(core_->n + 1) +
           static_cast<std::size_t>(v);
  }
  void require_vertex(int v) const {
    if (v < 1 || v > core_->n) throw std::invalid_argument("vertex id out of range");
  }

  std::shared_ptr<const Core> core_;
  VertexSet present_;
  std::shared_ptr<detail::MuCache> cache_;
};

// Incremental construction; build() validates nothing further since edge() and
// offset() already reject bad input.
class GraphBuilder {
 public:
  explicit GraphBuilder(int n) : n_(n) {
    if (n < 0 || n > 63) throw std::invalid_argument("vertex count out of range");
    offsets_.assign(static_cast<std::size_t>(n) + 1, Rational(0));
    weights_.assign((static_cast<std::size_t>(n) + 1) * (static_cast<std::size_t>(n) + 1),
                    Rational(0));
  }

  GraphBuilder& offset(int v, const Rational& r) {
    require_vertex(v);
    offsets_[static_cast<std::size_t>(v)] = r;
    return *this;
  }

  GraphBuilder& edge(int u, int v, const Rational& lambda) {
    require_vertex(u);
    require_vertex(v);
    if (u == v) throw std::invalid_argument("loops are not allowed");
    if (sgn(lambda) > 0) throw std::invalid_argument("edge weight must be <= 0");
    weights_[idx(u, v)] = lambda;
    weights_[idx(v, u)] = lambda;
    return *this;
  }

  WeightedGraph build() const { return WeightedGraph(n_, offsets_, weights_); }

 private:
  std::size_t idx(int u, int v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_ + 1) +
           static_cast<std::size_t>(v);
  }
  void require_vertex(int v) const {
    if (v < 1 || v > n_) throw std::invalid_argument("vertex id out of range");
  }
  int n_;
  std::vector<Rational> offsets_;
  std::vector<Rational> weights_;
};

inline WeightedGraph unit_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  GraphBuilder b(n);
  for (const auto& [u, v] : edges) b.edge(u, v, Rational(-1));
  return b.build();
}

inline WeightedGraph path_graph(int n) {
  GraphBuilder b(n);
  for (int v = 1; v < n; ++v) b.edge(v, v + 1, Rational(-1));
  return b.build();
}

inline WeightedGraph complete_graph(int n) {
  GraphBuilder b(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) b.edge(u, v, Rational(-1));
  return b.build();
}

// Center is vertex 1, leaves 2..k+1.
inline WeightedGraph star_graph(int leaves) {
  GraphBuilder b(leaves + 1);
  for (int v = 2; v <= leaves + 1; ++v) b.edge(1, v, Rational(-1));
  return b.build();
}

// Connected components of the present subgraph induced on `within`, ordered by
// smallest contained id.
inline std::vector<VertexSet> components(const WeightedGraph& g, VertexSet within) {
  within = within & g.present();
  std::vector<VertexSet> out;
  VertexSet seen;
  for (int v : within) {
    if (seen.contains(v)) continue;
    VertexSet comp;
    std::vector<int> stack{v};
    seen.insert(v);
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      comp.insert(cur);
      for (int u : within)
        if (!seen.contains(u) && g.adjacent(cur, u)) {
          seen.insert(u);
          stack.push_back(u);
        }
    }
    out.push_back(comp);
  }
  return out;
}

inline std::vector<VertexSet> components(const WeightedGraph& g) {
  return components(g, g.present());
}

inline bool is_connected(const WeightedGraph& g) { return components(g).size() <= 1; }

// Present vertices outside s with at least one neighbor inside s.
inline VertexSet frontier(const WeightedGraph& g, VertexSet s) {
  s = s & g.present();
  VertexSet out;
  for (int v : g.present() - s)
    for (int u : s)
      if (g.adjacent(v, u)) {
        out.insert(v);
        break;
      }
  return out;
}

inline bool is_simple_path(const WeightedGraph& g, const VertexPath& c) {
  if (c.empty()) return false;
  VertexSet seen;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!g.has_vertex(c[k]) || seen.contains(c[k])) return false;
    seen.insert(c[k]);
    if (k > 0 && !g.adjacent(c[k - 1], c[k])) return false;
  }
  return true;
}

// All simple paths from i to j in lexicographic DFS order (neighbors visited
// in ascending id order). i = j yields the single-vertex path.
inline std::vector<VertexPath> enumerate_paths(const WeightedGraph& g, int i, int j) {
  if (!g.has_vertex(i) || !g.has_vertex(j)) throw std::invalid_argument("path endpoint not present");
  std::vector<VertexPath> out;
  VertexPath cur{i};
  VertexSet used = VertexSet::single(i);
  const auto dfs = [&](const auto& self, int at) -> void {
    if (at == j) {
      out.push_back(cur);
      return;
    }
    for (int u : g.neighbors(at)) {
      if (used.contains(u)) continue;
      used.insert(u);
      cur.push_back(u);
      self(self, u);
      cur.pop_back();
      used.erase(u);
    }
  };
  dfs(dfs, i);
  return out;
}

// Product of -lambda over the path's edges; nonnegative by the sign convention.
inline Rational path_weight(const WeightedGraph& g, const VertexPath& c) {
  if (!is_simple_path(g, c)) throw std::invalid_argument("not a path in this graph");
  Rational w(1);
  for (std::size_t k = 1; k < c.size(); ++k) w *= -g.weight(c[k - 1], c[k]);
  return w;
}

namespace detail {

inline Rational rational_field(const nlohmann::json& j, const char* what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument(std::string(what) + " must be a rational string");
}

}  // namespace detail

// Two accepted schemas:
//   {"vertices":[{"id":1,"r":"0"},...],"edges":[{"u":1,"v":2,"lambda":"-1"},...]}
//   {"unit":true,"n":4,"edges":[[1,2],[2,3]]}
// Ids must be exactly 1..n; duplicate edges and positive weights are rejected.
inline WeightedGraph parse_graph(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("graph document must be an object");
  if (j.value("unit", false)) {
    if (!j.contains("n") || !j.at("n").is_number_integer())
      throw std::invalid_argument("unit graph needs an integer vertex count 'n'");
    const int n = j.at("n").get<int>();
    if (n < 0 || n > 63) throw std::invalid_argument("vertex count out of range");
    GraphBuilder b(n);
    VertexSet seen_pairs[64];
    for (const auto& e : j.value("edges", nlohmann::json::array())) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw std::invalid_argument("unit edge must be a pair of vertex ids");
      const int u = e[0].get<int>();
      const int v = e[1].get<int>();
      if (u < 1 || u > n || v < 1 || v > n) throw std::invalid_argument("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("loops are not allowed");
      if (seen_pairs[u].contains(v)) throw std::invalid_argument("duplicate edge");
      seen_pairs[u].insert(v);
      seen_pairs[v].insert(u);
      b.edge(u, v, Rational(-1));
    }
    return b.build();
  }

  if (!j.contains("vertices") || !j.at("vertices").is_array())
    throw std::invalid_argument("graph needs a 'vertices' array");
  const auto& vs = j.at("vertices");
  const int n = static_cast<int>(vs.size());
  if (n > 63) throw std::invalid_argument("vertex count out of range");
  GraphBuilder b(n);
  VertexSet ids;
  for (const auto& v : vs) {
    if (!v.is_object() || !v.contains("id") || !v.at("id").is_number_integer())
      throw std::invalid_argument("vertex needs an integer 'id'");
    const int id = v.at("id").get<int>();
    if (id < 1 || id > n) throw std::invalid_argument("vertex ids must be exactly 1..n");
    if (ids.contains(id)) throw std::invalid_argument("duplicate vertex id");
    ids.insert(id);
    if (v.contains("r")) b.offset(id, detail::rational_field(v.at("r"), "vertex offset"));
  }
  VertexSet seen_pairs[64];
  for (const auto& e : j.value("edges", nlohmann::json::array())) {
    if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("lambda") ||
        !e.at("u").is_number_integer() || !e.at("v").is_number_integer())
      throw std::invalid_argument("edge needs integer 'u','v' and a 'lambda'");
    const int u = e.at("u").get<int>();
    const int v = e.at("v").get<int>();
    if (u < 1 || u > n || v < 1 || v > n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("loops are not allowed");
    if (seen_pairs[u].contains(v)) throw std::invalid_argument("duplicate edge");
    seen_pairs[u].insert(v);
    seen_pairs[v].insert(u);
    const Rational lambda = detail::rational_field(e.at("lambda"), "edge weight");
    if (sgn(lambda) > 0) throw std::invalid_argument("edge weight must be <= 0");
    b.edge(u, v, lambda);
  }
  return b.build();
}

inline WeightedGraph parse_graph(const std::string& text) {
  return parse_graph(nlohmann::json::parse(text));
}

inline nlohmann::json serialize_graph(const WeightedGraph& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (int v : g.present()) vertices.push_back({{"id", v}, {"r", to_string(g.offset(v))}});
  nlohmann::json edges = nlohmann::json::array();
  for (int u : g.present())
    for (int v : g.present())
      if (u < v && g.adjacent(u, v))
        edges.push_back({{"u", u}, {"v", v}, {"lambda", to_string(g.weight(u, v))}});
  return nlohmann::json{{"vertices", vertices}, {"edges", edges}};
}

}  // namespace mugraph
