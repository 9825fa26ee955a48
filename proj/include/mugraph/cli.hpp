#pragma once

#include "mugraph/generate.hpp"
#include "mugraph/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mugraph {
namespace cli {

// Every subcommand exits 0 on success, 1 when a check fails or an invariant
// is disproven on the instance, 2 on malformed input or unusable parameters.

inline WeightedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

// rat:p/q names the rational point directly, root:k the k-th distinct root
// of mu(G) in ascending order, 1-based.
inline AlgebraicNumber parse_theta(const WeightedGraph& g, const std::string& spec) {
  if (spec.rfind("rat:", 0) == 0)
    return AlgebraicNumber::from_rational(parse_rational(spec.substr(4)));
  if (spec.rfind("root:", 0) == 0) {
    const std::string index = spec.substr(5);
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(index, &used);
      if (used != index.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("root index must be a small integer");
    }
    const std::vector<AlgebraicNumber> roots = distinct_matching_roots(g);
    if (k < 1 || k > static_cast<int>(roots.size()))
      throw std::invalid_argument("root index out of range: mu(G) has " +
                                  std::to_string(roots.size()) + " distinct roots");
    return roots[static_cast<std::size_t>(k) - 1];
  }
  throw std::invalid_argument("theta must look like rat:p/q or root:k");
}

// Accepts p/q, integers and decimal literals; 0.35 becomes 7/20 exactly.
inline Rational parse_density(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return parse_rational(text);
  const std::string head = text.substr(0, dot);
  const std::string tail = text.substr(dot + 1);
  if (tail.empty()) throw std::invalid_argument("malformed density '" + text + "'");
  for (char c : tail)
    if (c < '0' || c > '9') throw std::invalid_argument("malformed density '" + text + "'");
  Integer scale = 1;
  for (std::size_t k = 0; k < tail.size(); ++k) scale *= 10;
  const bool negative = !head.empty() && head[0] == '-';
  Rational mag(0);
  if (head != "" && head != "-" && head != "+") mag = abs(parse_rational(head));
  mag += make_rational(Integer(tail), scale);
  return negative ? Rational(-mag) : mag;
}

inline std::string theta_text(const AlgebraicNumber& t) {
  if (t.is_rational()) return to_string(t.rational_value()) + " (exact)";
  std::ostringstream os;
  os << "(" << to_string(t.iv.lo) << ", " << to_string(t.iv.hi) << ") ~ " << approx(t);
  return os.str();
}

inline nlohmann::json theta_json(const AlgebraicNumber& t) {
  nlohmann::json j = to_json(t);
  j["approx"] = approx(t);
  j["rational"] = t.is_rational() ? nlohmann::json(to_string(t.rational_value()))
                                  : nlohmann::json(nullptr);
  return j;
}

inline std::string set_text(VertexSet s) {
  std::string out = "{";
  for (int v : s) out += (out.size() == 1 ? "" : ",") + std::to_string(v);
  return out + "}";
}

inline int cmd_poly(const WeightedGraph& g, bool json, std::ostream& out) {
  const Polynomial mu = matching_polynomial(g);
  if (json) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (int k = 0; k <= mu.degree(); ++k) coeffs.push_back(to_string(mu.coeff(k)));
    out << nlohmann::json{{"degree", mu.degree()},
                          {"coefficients", coeffs},
                          {"pretty", to_string(mu)}}
               .dump(2)
        << "\n";
    return 0;
  }
  out << "degree " << mu.degree() << "\n";
  out << "coefficients";
  for (int k = 0; k <= mu.degree(); ++k) out << " " << to_string(mu.coeff(k));
  out << "\n";
  out << "mu(G) = " << to_string(mu) << "\n";
  return 0;
}

inline int cmd_roots(const WeightedGraph& g, bool json, std::ostream& out) {
  const std::vector<std::pair<AlgebraicNumber, int>> roots = matching_roots(g);
  if (json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [r, m] : roots) {
      nlohmann::json j = theta_json(r);
      j["multiplicity"] = m;
      arr.push_back(std::move(j));
    }
    out << nlohmann::json{{"distinct", static_cast<int>(roots.size())}, {"roots", arr}}.dump(2)
        << "\n";
    return 0;
  }
  if (roots.empty()) {
    out << "no roots\n";
    return 0;
  }
  int k = 1;
  for (const auto& [r, m] : roots)
    out << "root " << k++ << ": " << theta_text(r) << " multiplicity " << m << "\n";
  return 0;
}

inline int cmd_decompose(const WeightedGraph& g, const std::string& spec, bool json,
                         std::ostream& out) {
  const AlgebraicNumber theta = parse_theta(g, spec);
  const ThetaDecomposition d = decompose(g, theta);
  if (json) {
    out << to_json(d).dump(2) << "\n";
    return 0;
  }
  out << "theta " << spec << " = " << theta_text(theta) << "\n";
  out << "m " << d.m << "\n";
  out << "classes";
  for (const auto& [v, c] : d.classes) out << " " << v << ":" << to_string(c);
  out << "\n";
  out << "D " << set_text(d.D) << "\n";
  out << "A " << set_text(d.A) << "\n";
  out << "N- " << set_text(d.Nminus) << "\n";
  out << "N+ " << set_text(d.Nplus) << "\n";
  out << "P " << set_text(d.P) << "\n";
  out << "critical components";
  for (const VertexSet& c : d.critical_components) out << " " << set_text(c);
  out << "\n";
  return 0;
}

inline int cmd_verify(const WeightedGraph& g, const std::string& suite_name, bool json,
                      std::ostream& out, std::ostream& err) {
  const std::optional<Suite> suite = parse_suite(suite_name);
  if (!suite) throw std::invalid_argument("unknown suite '" + suite_name + "'");
  const Report rep = run_suite(g, *suite);
  if (json)
    out << rep.to_json().dump(2) << "\n";
  else
    out << rep.to_text();
  // Timing goes to stderr so stdout stays byte-identical across runs.
  err << "wall " << rep.wall_ms << " ms\n";
  return rep.all_ok() ? 0 : 1;
}

inline int cmd_random(int n, const std::string& density, std::uint64_t seed, bool weighted,
                      bool connected, std::ostream& out) {
  if (n < 0 || n > 16) throw std::invalid_argument("n must lie between 0 and 16");
  const Rational p = parse_density(density);
  if (p < 0 || p > 1) throw std::invalid_argument("density must lie in [0, 1]");
  Xorshift64Star rng(seed);
  RandomGraphOptions opt;
  opt.edge_probability = p;
  opt.weighted = weighted;
  opt.require_connected = connected;
  out << serialize_graph(random_graph(rng, n, opt)).dump(2) << "\n";
  return 0;
}

namespace detail {

inline std::string render_tree(const PathTree& t) {
  std::string out;
  for (const PathTreeNode& nd : t.nodes) {
    out.append(2 * (nd.path.size() - 1), ' ');
    out += std::to_string(nd.path.back());
    out += "\n";
  }
  return out;
}

inline nlohmann::json tree_node_json(const PathTree& t, int k) {
  const PathTreeNode& nd = t.nodes[static_cast<std::size_t>(k)];
  nlohmann::json children = nlohmann::json::array();
  for (int c : nd.children) children.push_back(tree_node_json(t, c));
  return nlohmann::json{{"path", nd.path}, {"children", children}};
}

}  // namespace detail

inline int cmd_pathtree(const WeightedGraph& g, int root, const std::string& theta_spec,
                        bool have_theta, bool json, std::ostream& out) {
  if (!g.has_vertex(root)) throw std::invalid_argument("root vertex not present");
  if (have_theta) {
    const AlgebraicNumber theta = parse_theta(g, theta_spec);
    const SignAnnotation an = annotate_signs(g, root, theta);
    if (json)
      out << to_json(an).dump(2) << "\n";
    else
      out << render_annotation(an);
    return 0;
  }
  const PathTree t = build_path_tree(g, root);
  if (json)
    out << detail::tree_node_json(t, 0).dump(2) << "\n";
  else
    out << detail::render_tree(t);
  return 0;
}

inline int cmd_bounds(const WeightedGraph& g, bool json, std::ostream& out) {
  const ZeroBounds zb = star_bounds_check(g);
  const Verdict ex = extreme_zero_check(g);
  if (json) {
    out << nlohmann::json{{"z_g", theta_json(zb.z_g)},
                          {"z_star", theta_json(zb.z_star)},
                          {"b", to_string(zb.b)},
                          {"r_max", to_string(zb.r_max)},
                          {"star_bounds", to_string(zb.verdict.status)},
                          {"star_bounds_detail", zb.verdict.detail},
                          {"extreme_zeros", to_string(ex.status)},
                          {"extreme_zeros_detail", ex.detail}}
               .dump(2)
        << "\n";
  } else {
    out << "z_G " << theta_text(zb.z_g) << "\n";
    out << "z_star " << theta_text(zb.z_star) << "\n";
    out << "B " << to_string(zb.b) << "\n";
    out << "r_max " << to_string(zb.r_max) << "\n";
    out << "star-bounds " << to_string(zb.verdict.status)
        << (zb.verdict.detail.empty() ? "" : ": " + zb.verdict.detail) << "\n";
    out << "extreme-zeros " << to_string(ex.status)
        << (ex.detail.empty() ? "" : ": " + ex.detail) << "\n";
  }
  return zb.verdict.ok() && ex.ok() ? 0 : 1;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact matching polynomials, their roots and structure checks"};
  app.require_subcommand(1);

  std::string file, theta, suite = "all", density = "1/2";
  bool json = false, weighted = false, connected = false;
  int n = 0, root = 0;
  std::uint64_t seed = 1;

  CLI::App* poly = app.add_subcommand("poly", "print mu(G) exactly");
  poly->add_option("file", file, "graph file (json)")->required();
  poly->add_flag("--json", json, "machine-readable output");

  CLI::App* roots = app.add_subcommand("roots", "isolate the real roots of mu(G)");
  roots->add_option("file", file, "graph file (json)")->required();
  roots->add_flag("--json", json, "machine-readable output");

  CLI::App* dec = app.add_subcommand("decompose", "vertex classes and the decomposition at theta");
  dec->add_option("file", file, "graph file (json)")->required();
  dec->add_option("--theta", theta, "rat:p/q or root:k")->required();
  dec->add_flag("--json", json, "machine-readable output");

  CLI::App* ver = app.add_subcommand("verify", "run a verification suite on the instance");
  ver->add_option("file", file, "graph file (json)")->required();
  ver->add_option("--suite", suite,
                  "all, hl, interlace, cd, contraction, signs, stability, gallai, sylvester, "
                  "pathtree, bounds or classical");
  ver->add_flag("--json", json, "machine-readable output");

  CLI::App* rnd = app.add_subcommand("random", "emit a seeded random instance as a graph file");
  rnd->add_option("--n", n, "vertex count, at most 16")->required();
  rnd->add_option("--density", density, "edge probability, e.g. 1/2 or 0.35");
  rnd->add_option("--seed", seed, "prng seed");
  rnd->add_flag("--weighted", weighted, "draw offsets and edge weights");
  rnd->add_flag("--connected", connected, "retry until connected");
  rnd->add_flag("--json", json, "machine-readable output (the default already is)");

  CLI::App* ptree = app.add_subcommand("pathtree", "print the path tree, annotated at theta");
  ptree->add_option("file", file, "graph file (json)")->required();
  ptree->add_option("--root", root, "root vertex")->required();
  CLI::Option* ptheta = ptree->add_option("--theta", theta, "rat:p/q or root:k");
  ptree->add_flag("--json", json, "machine-readable output");

  CLI::App* bnd = app.add_subcommand("bounds", "largest-root bounds through the kept star");
  bnd->add_option("file", file, "graph file (json)")->required();
  bnd->add_flag("--json", json, "machine-readable output");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("mugraph");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (poly->parsed()) return cmd_poly(load_graph(file), json, out);
    if (roots->parsed()) return cmd_roots(load_graph(file), json, out);
    if (dec->parsed()) return cmd_decompose(load_graph(file), theta, json, out);
    if (ver->parsed()) return cmd_verify(load_graph(file), suite, json, out, err);
    if (rnd->parsed()) return cmd_random(n, density, seed, weighted, connected, out);
    if (ptree->parsed())
      return cmd_pathtree(load_graph(file), root, theta, ptheta->count() > 0, json, out);
    if (bnd->parsed()) return cmd_bounds(load_graph(file), json, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    err << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace cli
}  // namespace mugraph
