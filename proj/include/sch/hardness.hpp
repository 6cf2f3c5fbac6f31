#pragma once

// Hard instances for the expected diameter: a graph G on n vertices is
// embedded in R^{n-1} so that non-adjacent vertices sit at distance alpha and
// adjacent ones at distance beta > alpha. With all probabilities 1/2, the
// expected diameter then encodes the number of independent sets of G.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sch/dataset.hpp"
#include "sch/geometry.hpp"
#include "sch/oracle.hpp"

namespace sch {

// Simple undirected graph on vertices 0..n-1.
struct Graph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    return adj;
  }

  bool has_edge(std::size_t u, std::size_t v) const {
    for (auto [a, b] : edges)
      if ((a == u && b == v) || (a == v && b == u)) return true;
    return false;
  }
};

// Edge-list text: first line "n m", then m lines "u v" with 1-based ids.
inline Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  Graph g;
  std::size_t m = 0;
  if (!(in >> g.n >> m)) throw ParseError("graph: first line must be \"n m\"");
  for (std::size_t e = 0; e < m; ++e) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw ParseError("graph: edge " + std::to_string(e + 1) + " is missing or malformed");
    if (u < 1 || v < 1 || static_cast<std::size_t>(u) > g.n || static_cast<std::size_t>(v) > g.n)
      throw ValidationError("graph: edge " + std::to_string(e + 1) + " has a vertex id outside 1.." +
                            std::to_string(g.n));
    if (u == v) throw ValidationError("graph: edge " + std::to_string(e + 1) + " is a self-loop");
    const std::size_t a = static_cast<std::size_t>(u - 1), b = static_cast<std::size_t>(v - 1);
    if (g.has_edge(a, b)) throw ValidationError("graph: edge " + std::to_string(e + 1) + " is repeated");
    g.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::string extra;
  if (in >> extra) throw ParseError("graph: trailing content after " + std::to_string(m) + " edges");
  return g;
}

inline std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.n << ' ' << g.edges.size() << '\n';
  for (auto [u, v] : g.edges) out << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

inline Graph complete_graph(std::size_t n) {
  Graph g{n, {}};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g{n, {}};
  for (std::size_t u = 0; u + 1 < n; ++u) g.edges.emplace_back(u, u + 1);
  return g;
}

// Number of independent sets, the empty set and singletons included.
inline std::uint64_t count_independent_sets(const Graph& g) {
  if (g.n > 30) throw CapabilityError("independent-set enumeration is limited to n <= 30");
  std::vector<std::uint32_t> nbr(g.n, 0);
  for (auto [u, v] : g.edges) {
    nbr[u] |= 1U << v;
    nbr[v] |= 1U << u;
  }
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n); ++mask) {
    bool independent = true;
    for (std::size_t u = 0; u < g.n && independent; ++u)
      if ((mask >> u & 1U) && (nbr[u] & mask)) independent = false;
    if (independent) ++count;
  }
  return count;
}

// Vertices of a regular k-simplex with unit edges in R^k, built so that the
// first i+1 vertices span the first i axes.
inline std::vector<Vec> regular_simplex(std::size_t k) {
  std::vector<Vec> v(k + 1, Vec(k, 0.0));
  for (std::size_t i = 1; i <= k; ++i) {
    Vec c(k, 0.0);
    for (std::size_t j = 0; j < i; ++j)
      for (std::size_t t = 0; t < k; ++t) c[t] += v[j][t] / static_cast<double>(i);
    const double r2 = detail::dot(c, c);
    v[i] = c;
    v[i][i - 1] = std::sqrt(1.0 - r2);
  }
  return v;
}

// Two unit regular k-simplices glued along a common facet: k+2 points with all
// distances 1 except the two apexes, which sit 2 * (simplex height) apart.
// Returns the shared facet vertices followed by the two apexes.
inline std::vector<Vec> regular_double_simplex(std::size_t k) {
  auto v = regular_simplex(k);
  Vec mirror = v[k];
  mirror[k - 1] = -mirror[k - 1];
  v.push_back(std::move(mirror));
  return v;
}

struct HardnessInstance {
  StochasticDataset dataset;  // n points in R^{n-1}, every prob 1/2
  double alpha = 0.0;         // distance between non-adjacent vertices
  double beta = 0.0;          // distance between adjacent vertices
  Graph graph;
};

inline HardnessInstance hardness_instance(const Graph& g) {
  const std::size_t n = g.n;
  const std::size_t m = g.edges.size();
  if (n < 3) throw InvalidArgument("hardness instance needs at least 3 vertices");
  if (m == 0) throw InvalidArgument("hardness instance needs at least one edge");
  const std::size_t k = n - 2;
  const auto gadget = regular_double_simplex(k);

  // One double-simplex per edge: its apexes go to the edge's endpoints, the
  // shared facet to the remaining vertices. Coordinates are concatenated.
  std::vector<Vec> lifted(n, Vec(k * m, 0.0));
  for (std::size_t e = 0; e < m; ++e) {
    const auto [a, b] = g.edges[e];
    std::size_t slot = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const Vec* src = nullptr;
      if (v == a) src = &gadget[k];
      else if (v == b) src = &gadget[k + 1];
      else src = &gadget[slot++];
      std::copy(src->begin(), src->end(), lifted[v].begin() + static_cast<std::ptrdiff_t>(e * k));
    }
  }

  // Coordinates inside the affine span of the lifted points. A single edge
  // spans only n-2 dimensions; the unused coordinates stay zero.
  std::vector<Vec> basis;
  for (std::size_t v = 1; v < n; ++v) {
    Vec r = detail::sub(lifted[v], lifted[0]);
    detail::orthogonalize(r, basis);
    const double len = detail::norm(r);
    if (len <= kGeomEps) continue;
    for (double& c : r) c /= len;
    basis.push_back(std::move(r));
  }
  std::vector<Point> pts;
  for (std::size_t v = 0; v < n; ++v) {
    const Vec r = detail::sub(lifted[v], lifted[0]);
    Vec c(n - 1, 0.0);
    for (std::size_t j = 0; j < basis.size(); ++j) c[j] = detail::dot(r, basis[j]);
    pts.emplace_back(std::move(c));
  }

  // Squared distances add up across the concatenated gadgets.
  const double beta_k = dist(Point(gadget[k]), Point(gadget[k + 1]));
  HardnessInstance out;
  out.alpha = std::sqrt(static_cast<double>(m));
  out.beta = std::sqrt(static_cast<double>(m - 1) + beta_k * beta_k);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      const double want = g.has_edge(u, v) ? out.beta : out.alpha;
      if (std::abs(dist(pts[u], pts[v]) - want) > 1e-9)
        throw DegenerateError("hardness embedding distance check failed");
    }
  out.dataset = StochasticDataset(n - 1, std::move(pts), std::vector<double>(n, 0.5));
  out.graph = g;
  return out;
}

struct IdentityCheck {
  double lhs = 0.0;  // expected diameter by enumeration
  double rhs = 0.0;  // closed form in terms of the independent-set count
  std::uint64_t independent_sets = 0;
};

// Closed form for the expected diameter of a hardness instance. The empty set
// and singletons are independent sets of diameter 0, so they carry no alpha.
inline double hardness_closed_form(std::size_t n, std::uint64_t ind, double alpha, double beta) {
  const double all = std::ldexp(1.0, static_cast<int>(n));
  const double small = static_cast<double>(n + 1);
  return ((static_cast<double>(ind) - small) * alpha + (all - static_cast<double>(ind)) * beta) / all;
}

inline IdentityCheck hardness_identity_check(const HardnessInstance& inst, unsigned threads = 1) {
  const std::size_t n = inst.graph.n;
  if (n > 20) throw CapabilityError("identity check is limited to n <= 20");
  IdentityCheck out;
  out.independent_sets = count_independent_sets(inst.graph);
  out.lhs = oracle_expectation(inst.dataset, Statistic::diameter, threads);
  out.rhs = hardness_closed_form(n, out.independent_sets, inst.alpha, inst.beta);
  return out;
}

}  // namespace sch
