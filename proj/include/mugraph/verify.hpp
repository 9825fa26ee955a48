#pragma once

#include "mugraph/bounds.hpp"
#include "mugraph/classify.hpp"
#include "mugraph/oracle.hpp"
#include "mugraph/pathtree.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mugraph {

// Named bundles of checks runnable on any instance; All chains every other
// suite in this order.
enum class Suite {
  All,
  HL,
  Interlace,
  CD,
  Contraction,
  Signs,
  Stability,
  Gallai,
  Sylvester,
  PathTree,
  Bounds,
  Classical,
};

inline const char* to_string(Suite s) {
  switch (s) {
    case Suite::All: return "all";
    case Suite::HL: return "hl";
    case Suite::Interlace: return "interlace";
    case Suite::CD: return "cd";
    case Suite::Contraction: return "contraction";
    case Suite::Signs: return "signs";
    case Suite::Stability: return "stability";
    case Suite::Gallai: return "gallai";
    case Suite::Sylvester: return "sylvester";
    case Suite::PathTree: return "pathtree";
    case Suite::Bounds: return "bounds";
    default: return "classical";
  }
}

inline std::optional<Suite> parse_suite(const std::string& name) {
  for (Suite s : {Suite::All, Suite::HL, Suite::Interlace, Suite::CD, Suite::Contraction,
                  Suite::Signs, Suite::Stability, Suite::Gallai, Suite::Sylvester, Suite::PathTree,
                  Suite::Bounds, Suite::Classical})
    if (name == to_string(s)) return s;
  return std::nullopt;
}

// One executed check: a short law id, the statement it verifies, and the
// coordinates within the instance (theta point, vertex pair, edge) so a
// failure can be replayed.
struct CheckRecord {
  std::string law;
  std::string statement;
  std::string where;
  Verdict verdict;
};

// Everything needed to rerun the suite: the serialized instance plus every
// check outcome. The wall time is measured but kept out of the serialized
// form, which stays byte-identical across runs.
struct Report {
  nlohmann::json graph;
  std::string instance;
  std::string suite;
  std::vector<CheckRecord> checks;
  long long wall_ms = 0;

  int count(Verdict::Status s) const {
    int n = 0;
    for (const CheckRecord& c : checks)
      if (c.verdict.status == s) ++n;
    return n;
  }
  bool all_ok() const { return count(Verdict::Status::Fail) == 0; }

  nlohmann::json to_json() const {
    nlohmann::json recs = nlohmann::json::array();
    for (const CheckRecord& c : checks)
      recs.push_back({{"law", c.law},
                      {"statement", c.statement},
                      {"where", c.where},
                      {"verdict", to_string(c.verdict.status)},
                      {"detail", c.verdict.detail}});
    return nlohmann::json{{"instance", instance},
                          {"suite", suite},
                          {"graph", graph},
                          {"checks", recs},
                          {"summary",
                           {{"pass", count(Verdict::Status::Pass)},
                            {"fail", count(Verdict::Status::Fail)},
                            {"not_applicable", count(Verdict::Status::NotApplicable)}}},
                          {"all_ok", all_ok()}};
  }

  std::string to_text() const {
    std::string out = "suite " + suite + " on " + instance + "\n";
    for (const CheckRecord& c : checks) {
      const char* tag = c.verdict.status == Verdict::Status::Pass   ? "pass"
                        : c.verdict.status == Verdict::Status::Fail ? "FAIL"
                                                                    : "n/a ";
      out += std::string("[") + tag + "] " + c.law;
      if (!c.where.empty()) out += " " + c.where;
      if (!c.verdict.detail.empty()) out += ": " + c.verdict.detail;
      out += "\n";
    }
    out += "summary: " + std::to_string(count(Verdict::Status::Pass)) + " pass, " +
           std::to_string(count(Verdict::Status::Fail)) + " fail, " +
           std::to_string(count(Verdict::Status::NotApplicable)) + " not applicable\n";
    return out;
  }
};

// Uniform exception policy for sweeping checks over arbitrary instances:
// unmet hypotheses and guards surface as not-applicable, violated internal
// assertions as failures. invalid_argument must be caught before its base
// logic_error.
template <typename F>
inline Verdict guarded_verdict(F&& f) {
  try {
    return std::forward<F>(f)();
  } catch (const std::invalid_argument& e) {
    return Verdict::not_applicable(e.what());
  } catch (const std::runtime_error& e) {
    return Verdict::not_applicable(e.what());
  } catch (const std::logic_error& e) {
    return Verdict::fail(e.what());
  }
}

namespace detail {

// Evaluation points for the point-wise laws: every distinct root of mu(G) and
// a rational strictly between each consecutive pair. Labels reuse the theta
// spec syntax of the command line, so any record can be replayed verbatim.
struct ThetaPoint {
  std::string label;
  AlgebraicNumber value;
  bool root;
};

inline std::vector<ThetaPoint> theta_points(const WeightedGraph& g) {
  std::vector<ThetaPoint> out;
  const std::vector<AlgebraicNumber> roots = distinct_matching_roots(g);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (k > 0) {
      // Isolating intervals of distinct roots are disjoint and their
      // endpoints are never roots, so this rational separates the pair.
      const Rational mid = (roots[k - 1].iv.hi + roots[k].iv.lo) / 2;
      out.push_back({"rat:" + to_string(mid), AlgebraicNumber::from_rational(mid), false});
    }
    out.push_back({"root:" + std::to_string(k + 1), roots[k], true});
  }
  return out;
}

inline int edge_count(const WeightedGraph& g) {
  int m = 0;
  for (int u : g.present())
    for (int v : g.present())
      if (u < v && g.adjacent(u, v)) ++m;
  return m;
}

inline std::string instance_descriptor(const WeightedGraph& g) {
  return "n=" + std::to_string(g.vertex_count()) + " edges=" + std::to_string(edge_count(g)) +
         (has_unit_weights(g) ? " unit" : " weighted");
}

inline std::string pair_where(int u, int v) {
  return "pair=(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

inline std::string path_where(const VertexPath& c) {
  std::string out = "path=";
  for (int v : c) out += (v == c.front() ? "" : "-") + std::to_string(v);
  return out;
}

struct Recorder {
  Report& rep;

  void add(std::string law, std::string statement, std::string where, Verdict v) {
    rep.checks.push_back(
        CheckRecord{std::move(law), std::move(statement), std::move(where), std::move(v)});
  }
  template <typename F>
  void run(std::string law, std::string statement, std::string where, F&& f) {
    add(std::move(law), std::move(statement), std::move(where),
        guarded_verdict(std::forward<F>(f)));
  }
};

// Deterministic backtracking over ascending neighbor lists, with a step
// budget so pathological instances degrade to not-applicable instead of
// hanging the suite.
struct HamiltonianSearch {
  std::optional<VertexPath> path;
  bool exhausted = false;
};

inline HamiltonianSearch find_hamiltonian_path(const WeightedGraph& g) {
  HamiltonianSearch out;
  const std::vector<int> verts = g.present().to_vector();
  if (verts.empty()) return out;
  long long steps = 0;
  VertexPath path;
  VertexSet used;
  const std::function<bool(int)> extend = [&](int at) -> bool {
    if (path.size() == verts.size()) return true;
    if (++steps > 2000000) {
      out.exhausted = true;
      return false;
    }
    for (int u : g.neighbors(at)) {
      if (used.contains(u)) continue;
      used.insert(u);
      path.push_back(u);
      if (extend(u)) return true;
      if (out.exhausted) return false;
      used.erase(u);
      path.pop_back();
    }
    return false;
  };
  for (int s : verts) {
    path.assign(1, s);
    used = VertexSet::single(s);
    if (extend(s)) {
      out.path = path;
      return out;
    }
    if (out.exhausted) return out;
  }
  return out;
}

inline void run_hl(const WeightedGraph& g, Recorder& rec) {
  rec.run("hl-bracket", "every root of mu(G) is real and lies in the Heilmann-Lieb bracket", "",
          [&] { return real_rooted_bracket_check(g); });
}

inline void run_interlace(const WeightedGraph& g, Recorder& rec) {
  rec.run("derivative-sum", "mu(G)' equals the sum of mu(G\\i) over present vertices", "",
          [&] { return derivative_identity_check(g); });
  for (int i : g.present())
    rec.run("interlacing", "the roots of mu(G\\i) interlace the roots of mu(G)",
            "i=" + std::to_string(i), [&] { return interlacing_check(g, i); });
}

inline void run_cd(const WeightedGraph& g, Recorder& rec) {
  for (int u : g.present())
    for (int v : g.present())
      if (u < v)
        rec.run("christoffel-darboux",
                "mu(G\\i)mu(G\\j) - mu(G\\{i,j})mu(G) equals the i-j path square sum",
                pair_where(u, v), [&] { return christoffel_darboux_check(g, u, v); });
}

inline void run_contraction(const WeightedGraph& g, Recorder& rec) {
  for (int u : g.present())
    for (int v : g.present())
      if (u < v)
        rec.run("contraction-identity",
                "alpha_i(G) = alpha_i(G\\j) + lambda_{i~j}/alpha_j(G\\i), cross-multiplied",
                pair_where(u, v), [&] { return contraction_identity_check(g, u, v); });
}

inline void run_signs(const WeightedGraph& g, const std::vector<ThetaPoint>& pts, Recorder& rec) {
  for (const ThetaPoint& tp : pts)
    rec.run("frontier-bookkeeping",
            "multiplicity, infinite classes and the frontier of the zero class tie together",
            "theta=" + tp.label, [&] { return internal_frontier_checks(g, tp.value); });
  for (int u : g.present())
    for (int v : g.present()) {
      if (u >= v) continue;
      // The contraction weight is a fixed rational function of x; computing
      // it once per pair and classifying per point avoids re-walking the
      // paths between u and v at every theta.
      const ContractionWeight w = detail::contraction_weight_unchecked(g, u, v);
      for (const ThetaPoint& tp : pts)
        rec.run("sign-table",
                "the classes of i and j in G follow the pair table for the deleted classes and "
                "the contraction weight",
                "theta=" + tp.label + " " + pair_where(u, v),
                [&] { return sign_table_check(g, tp.value, u, v, w); });
    }
}

inline void run_stability(const WeightedGraph& g, const std::vector<ThetaPoint>& pts,
                          Recorder& rec) {
  for (const ThetaPoint& tp : pts) {
    std::optional<ThetaDecomposition> d;
    const Verdict dv = guarded_verdict([&] {
      d = decompose(g, tp.value);
      return Verdict::pass();
    });
    if (!d) {
      rec.add("decomposition", "the vertex classes assemble into the theta decomposition",
              "theta=" + tp.label, dv);
      continue;
    }
    if (d->A.empty()) {
      rec.add("frontier-stability",
              "deleting a frontier vertex preserves every class and finite alpha value",
              "theta=" + tp.label,
              Verdict::not_applicable("the frontier is empty at this point"));
      continue;
    }
    for (int i : d->A)
      rec.run("frontier-stability",
              "deleting a frontier vertex preserves every class and finite alpha value",
              "theta=" + tp.label + " i=" + std::to_string(i),
              [&] { return stability_check(g, tp.value, i); });
    for (int j : d->A) {
      VertexReweight w;
      for (int k : g.neighbors(j)) w.lambdas[k] = Rational(g.weight(j, k) / 2);
      rec.run("reweight-stability",
              "reweighting a frontier vertex preserves classes and finite alpha values while "
              "the covering hypothesis holds",
              "theta=" + tp.label + " j=" + std::to_string(j),
              [&] { return stability2_check(g, tp.value, j, w); });
    }
  }
}

inline void run_gallai(const WeightedGraph& g, const std::vector<ThetaPoint>& pts, Recorder& rec) {
  for (const ThetaPoint& tp : pts)
    rec.run("multiplicity-formula",
            "the multiplicity of theta equals the critical component count minus the frontier "
            "size",
            "theta=" + tp.label, [&] { return multiplicity_formula_check(g, tp.value); });
  for (const ThetaPoint& tp : pts) {
    if (!tp.root) continue;
    rec.run("matched-condition",
            "every non-empty frontier subset touches strictly more critical components",
            "theta=" + tp.label, [&] { return matched_condition_check(g, tp.value); });
    rec.run("gallai-critical",
            "a connected graph with every vertex zero-class has a simple root at theta",
            "theta=" + tp.label, [&] { return gallai_check(g, tp.value); });
  }
}

inline void run_sylvester(const WeightedGraph& g, const std::vector<ThetaPoint>& pts,
                          Recorder& rec) {
  const char* stmt =
      "the positive-ratio count along a Hamiltonian path equals the root count below theta in "
      "both directions";
  const HamiltonianSearch hs = find_hamiltonian_path(g);
  if (!hs.path) {
    rec.add("sylvester-inertia", stmt, "",
            Verdict::not_applicable(hs.exhausted ? "the Hamiltonian path search ran out of budget"
                                                 : "the graph has no Hamiltonian path"));
    return;
  }
  const VertexPath& c = *hs.path;
  const std::string pw = path_where(c);

  // Rational probes: one point below every root, the separating rationals,
  // one point above. Roots of every deletion chain polynomial interlace down
  // from mu(G), so the outer two are degenerate for no chain member.
  std::vector<Rational> grid;
  std::vector<std::string> labels;
  for (const ThetaPoint& tp : pts) {
    if (tp.root) continue;
    grid.push_back(tp.value.rational_value());
    labels.push_back(tp.label);
  }
  Rational below(0), above(0);
  for (const ThetaPoint& tp : pts)
    if (tp.root) {
      below = Rational(tp.value.iv.lo - 1);
      break;
    }
  for (const ThetaPoint& tp : pts)
    if (tp.root) above = Rational(tp.value.iv.hi + 1);
  grid.insert(grid.begin(), below);
  labels.insert(labels.begin(), "rat:" + to_string(below));
  grid.push_back(above);
  labels.push_back("rat:" + to_string(above));

  for (std::size_t k = 0; k < grid.size(); ++k)
    rec.run("sylvester-inertia", stmt, "theta=" + labels[k] + " " + pw, [&, k] {
      return sylvester_count(g, c, grid[k]).verdict;
    });
  for (const ThetaPoint& tp : pts) {
    if (!tp.root) continue;
    rec.run("zero-path-step",
            "deleting a path drops the multiplicity by at most one, with zero-class endpoints "
            "when it does",
            "theta=" + tp.label + " " + pw, [&] {
              zero_path_check(g, c, tp.value);
              return Verdict::pass();
            });
  }
  rec.run("plus-monotonicity",
          "between grid points the plus count along the path moves by the root weight of mu(G) "
          "minus that of mu(G\\c)",
          "grid=[" + to_string(grid.front()) + ".." + to_string(grid.back()) + "] " + pw,
          [&] { return plus_sign_monotonicity_check(g, c, grid); });
}

inline void run_pathtree(const WeightedGraph& g, const std::vector<ThetaPoint>& pts,
                         Recorder& rec) {
  for (int i : g.present())
    rec.run("godsil-path-tree", "mu(G)mu(T\\root) = mu(G\\i)mu(T) for the path tree T rooted at i",
            "i=" + std::to_string(i), [&] { return godsil_identity_check(g, i); });
  for (int i : g.present()) {
    for (const ThetaPoint& tp : pts) {
      if (!tp.root) continue;
      rec.run("sign-annotation",
              "along the path tree every zero-class node hangs below an infinite-class parent",
              "theta=" + tp.label + " i=" + std::to_string(i), [&] {
                if (build_path_tree(g, i).nodes.size() > 800)
                  return Verdict::not_applicable("path tree too large to annotate");
                annotate_signs(g, i, tp.value);
                return Verdict::pass();
              });
    }
  }
}

inline void run_bounds(const WeightedGraph& g, Recorder& rec) {
  rec.run("extreme-zeros",
          "the extreme roots of a connected graph are simple with every vertex zero-class", "",
          [&] { return extreme_zero_check(g); });
  rec.run("star-bounds",
          "the largest root sits between the star fixed point and the Heilmann-Lieb gap bound",
          "", [&] { return star_bounds_check(g).verdict; });
  for (int u : g.present())
    for (int v : g.present()) {
      if (u >= v || !g.adjacent(u, v)) continue;
      const Rational half = Rational(g.weight(u, v) / 2);
      rec.run("edge-monotonicity", "strictly weakening one edge strictly lowers the largest root",
              "edge=(" + std::to_string(u) + "," + std::to_string(v) + ")",
              [&] { return edge_monotonicity_check(g, u, v, half); });
    }
}

inline void run_classical(const WeightedGraph& g, Recorder& rec) {
  rec.run("classical-structure",
          "maximum matchings decompose along the classical Gallai-Edmonds partition", "",
          [&] { return ge_structure_check(g); });
  rec.run("classical-crosscheck",
          "the decomposition of a unit graph at theta = 0 matches the classical partition", "",
          [&] { return crosscheck_theta_zero(g); });
}

}  // namespace detail

inline Report run_suite(const WeightedGraph& g, Suite suite) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.graph = serialize_graph(g);
  rep.instance = detail::instance_descriptor(g);
  rep.suite = to_string(suite);
  detail::Recorder rec{rep};
  if (g.vertex_count() == 0) {
    rec.add("instance", "checks need at least one vertex", "",
            Verdict::not_applicable("the graph has no vertices"));
  } else {
    const bool all = suite == Suite::All;
    std::vector<detail::ThetaPoint> pts;
    if (all || suite == Suite::Signs || suite == Suite::Stability || suite == Suite::Gallai ||
        suite == Suite::Sylvester || suite == Suite::PathTree)
      pts = detail::theta_points(g);
    if (all || suite == Suite::HL) detail::run_hl(g, rec);
    if (all || suite == Suite::Interlace) detail::run_interlace(g, rec);
    if (all || suite == Suite::CD) detail::run_cd(g, rec);
    if (all || suite == Suite::Contraction) detail::run_contraction(g, rec);
    if (all || suite == Suite::Signs) detail::run_signs(g, pts, rec);
    if (all || suite == Suite::Stability) detail::run_stability(g, pts, rec);
    if (all || suite == Suite::Gallai) detail::run_gallai(g, pts, rec);
    if (all || suite == Suite::Sylvester) detail::run_sylvester(g, pts, rec);
    if (all || suite == Suite::PathTree) detail::run_pathtree(g, pts, rec);
    if (all || suite == Suite::Bounds) detail::run_bounds(g, rec);
    if (all || suite == Suite::Classical) detail::run_classical(g, rec);
  }
  rep.wall_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

}  // namespace mugraph
