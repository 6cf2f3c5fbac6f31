#pragma once

// Expected width of a stochastic convex hull, d in {2, 3}.
//
// The witness simplex of a point set P starts at the ≺-largest point v_0 and
// adds, one at a time, the point farthest from the flat E_i through
// v_0..v_i. Its width is within [c_1 · wid(P), wid(P)], which gives a
// deterministic constant-factor estimator; sampling the points that cannot
// change the witness simplex turns it into a (1 ± ε) FPRAS.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "sch/dataset.hpp"
#include "sch/geometry.hpp"

namespace sch {

// c_d = 1/2 and c_i = c_{i+1} / 5, so c_1 = 0.1 at d = 2 and 0.02 at d = 3.
inline double width_factor_c1(std::size_t d) { return 0.5 * std::pow(5.0, -static_cast<double>(d - 1)); }

struct WitnessSimplex {
  std::vector<std::size_t> vertex_list;  // v_0 .. v_d in construction order

  std::vector<std::size_t> vertices() const {
    auto v = vertex_list;
    std::sort(v.begin(), v.end());
    return v;
  }
};

namespace detail {

inline void require_width_dim(std::size_t d) {
  if (d != 2 && d != 3) throw CapabilityError("width is supported for d in {2,3}, got d=" + std::to_string(d));
}

// Greedy construction restricted to the candidate indices.
inline WitnessSimplex build_witness_simplex(std::span<const Point> pts, std::span<const std::size_t> cand) {
  if (cand.empty()) throw InvalidArgument("witness simplex of an empty point set");
  const std::size_t d = pts[cand[0]].dim();
  WitnessSimplex ws;
  std::size_t v0 = cand[0];
  for (auto i : cand)
    if (lex_less(pts[v0], pts[i])) v0 = i;
  ws.vertex_list.push_back(v0);
  std::vector<Point> sel{pts[v0]};
  for (std::size_t level = 0; level < d; ++level) {
    const Flat e = Flat::through(sel);
    std::size_t best = cand[0];
    for (auto i : cand)
      if (prec_flat(pts[best], pts[i], e)) best = i;
    if (dist_point_flat(pts[best], e) <= kGeomEps)
      throw DegenerateError("points lie within tolerance of a common hyperplane; no witness simplex");
    ws.vertex_list.push_back(best);
    sel.push_back(pts[best]);
  }
  return ws;
}

}  // namespace detail

inline WitnessSimplex witness_simplex(std::span<const Point> pts) {
  if (pts.empty()) throw InvalidArgument("witness simplex of an empty point set");
  detail::require_width_dim(pts[0].dim());
  std::vector<std::size_t> all(pts.size());
  std::iota(all.begin(), all.end(), 0);
  return detail::build_witness_simplex(pts, all);
}

// Rebuilds the vertex order from the unordered vertex set alone.
inline WitnessSimplex recover_vertex_list(std::span<const Point> pts, std::span<const std::size_t> vertex_set) {
  for (auto i : vertex_set)
    if (i >= pts.size()) throw InvalidArgument("vertex index out of range");
  if (!pts.empty()) detail::require_width_dim(pts[0].dim());
  if (vertex_set.size() != pts[0].dim() + 1) throw InvalidArgument("a d-simplex has d+1 vertices");
  return detail::build_witness_simplex(pts, vertex_set);
}

// Exact width of a nondegenerate d-simplex given by its d+1 vertices.
inline double simplex_width(std::span<const Point> v) {
  if (v.empty()) throw InvalidArgument("empty simplex");
  const std::size_t d = v[0].dim();
  detail::require_width_dim(d);
  if (v.size() != d + 1) throw InvalidArgument("a d-simplex has d+1 vertices");
  for (const auto& p : v) detail::require_same_dim(p.dim(), d);

  if (d == 2) {
    const double area2 = std::abs(detail::cross2({v[0][0], v[0][1]}, {v[1][0], v[1][1]}, {v[2][0], v[2][1]}));
    const double longest = std::max({dist(v[0], v[1]), dist(v[1], v[2]), dist(v[0], v[2])});
    if (area2 / longest <= kGeomEps) throw DegenerateError("degenerate triangle");
    return area2 / longest;
  }

  // Tetrahedron: vertex-facet altitudes and opposite-edge slab widths.
  double w = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Point> f;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) f.push_back(v[j]);
    const Vec nrm = detail::cross3(detail::sub(f[1].coords(), f[0].coords()), detail::sub(f[2].coords(), f[0].coords()));
    const double len = detail::norm(nrm);
    if (len <= kGeomEps) throw DegenerateError("degenerate tetrahedron");
    w = std::min(w, std::abs(detail::dot(detail::sub(v[i].coords(), f[0].coords()), nrm)) / len);
  }
  static constexpr std::size_t kPairs[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  for (const auto& p : kPairs) {
    const Vec e1 = detail::sub(v[p[1]].coords(), v[p[0]].coords());
    const Vec e2 = detail::sub(v[p[3]].coords(), v[p[2]].coords());
    const Vec c = detail::cross3(e1, e2);
    const double len = detail::norm(c);
    if (len <= kGeomEps) continue;
    w = std::min(w, std::abs(detail::dot(detail::sub(v[p[2]].coords(), v[p[0]].coords()), c)) / len);
  }
  if (w <= kGeomEps) throw DegenerateError("degenerate tetrahedron");
  return w;
}

inline double simplex_width(std::span<const Point> pts, const WitnessSimplex& ws) {
  return simplex_width(gather(pts, ws.vertex_list));
}

namespace detail {

// For each point: is it forced absent by v_0 ≺ a or v_{i+1} ≺_{E_i} a?
inline std::vector<char> witness_exclusions(std::span<const Point> P, const std::vector<std::size_t>& list) {
  const std::size_t n = P.size();
  std::vector<char> out(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    if (lex_less(P[list[0]], P[a])) out[a] = 1;
  std::vector<Point> sel{P[list[0]]};
  for (std::size_t i = 0; i + 1 < list.size(); ++i) {
    const Flat e = Flat::through(sel);
    for (std::size_t a = 0; a < n; ++a)
      if (!out[a] && prec_flat(P[list[i + 1]], P[a], e)) out[a] = 1;
    sel.push_back(P[list[i + 1]]);
  }
  return out;
}

}  // namespace detail

// Pr[Δ is the witness simplex of the realized hull]. Zero when the vertex list
// is not the one the construction would recover from its own vertex set.
inline double witness_simplex_prob(const StochasticDataset& ds, const WitnessSimplex& ws) {
  const std::size_t d = ds.dim();
  detail::require_width_dim(d);
  const auto& list = ws.vertex_list;
  if (list.size() != d + 1) throw InvalidArgument("a d-simplex has d+1 vertices");
  for (auto i : list)
    if (i >= ds.size()) throw InvalidArgument("vertex index out of range");
  const auto P = ds.points();
  simplex_width(gather(P, list));  // throws on a degenerate simplex
  const auto excl = detail::witness_exclusions(P, list);
  double pr = 1.0;
  for (auto i : list) {
    if (excl[i]) return 0.0;
    pr *= ds.prob(i);
  }
  for (std::size_t a = 0; a < ds.size(); ++a)
    if (excl[a]) pr *= 1.0 - ds.prob(a);
  return pr;
}

// One summand of the witness-simplex expansion.
struct WitnessTerm {
  std::vector<std::size_t> vertex_list;
  double prob = 0.0;
  std::vector<std::size_t> free_points;  // filled only on request
};

// Visits every Δ with Pr[Δ] > 0 exactly once. The prefix v_0..v_{d-1} is
// fixed by recursion; for the last vertex the admissible candidates are
// walked in descending ≺_{E_{d-1}} order with a running product of absence
// probabilities, so each level costs O(n log n).
template <class Fn>
void for_each_witness_simplex(const StochasticDataset& ds, Fn&& fn, bool with_free_points = false) {
  const std::size_t d = ds.dim();
  detail::require_width_dim(d);
  const std::size_t n = ds.size();
  if (n < d + 1) return;
  const auto P = ds.points();
  const auto pi = ds.probs();

  std::vector<std::size_t> list;
  std::vector<Point> sel;
  std::vector<char> excl(n, 0);
  std::vector<double> dist_to(n);
  std::vector<std::size_t> order;

  // excl is shared across levels; each level undoes its own marks.
  auto recurse = [&](auto&& self, std::size_t level) -> void {
    const Flat e = Flat::through(sel);
    for (std::size_t a = 0; a < n; ++a) dist_to[a] = dist_point_flat(P[a], e);
    auto prec = [&](std::size_t a, std::size_t c) {
      return prec_by_distance(dist_to[a], dist_to[c], lex_less(P[a], P[c]));
    };

    if (level + 1 < d) {
      // Choose v_{level+1}, then mark the points it excludes.
      std::vector<double> here(dist_to.begin(), dist_to.end());
      for (std::size_t c = 0; c < n; ++c) {
        if (excl[c] || here[c] <= kGeomEps) continue;
        std::vector<std::size_t> marked;
        bool ok = true;
        for (std::size_t a = 0; a < n; ++a) {
          if (excl[a]) continue;
          if (prec_by_distance(here[c], here[a], lex_less(P[c], P[a]))) {
            excl[a] = 1;
            marked.push_back(a);
          }
        }
        for (auto i : list)
          if (excl[i]) ok = false;
        if (ok) {
          list.push_back(c);
          sel.push_back(P[c]);
          self(self, level + 1);
          list.pop_back();
          sel.pop_back();
        }
        for (auto a : marked) excl[a] = 0;
      }
      return;
    }

    // Last vertex: admissible candidates in descending ≺_{E_{d-1}} order.
    double left = 1.0;
    for (auto i : list) left *= pi[i];
    for (std::size_t a = 0; a < n; ++a)
      if (excl[a]) left *= 1.0 - pi[a];
    if (left == 0.0) return;
    order.clear();
    for (std::size_t a = 0; a < n; ++a)
      if (!excl[a]) order.push_back(a);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) { return prec(c, a); });
    double suffix = 1.0;
    for (std::size_t t = 0; t < order.size() && suffix != 0.0; ++t) {
      const std::size_t c = order[t];
      if (dist_to[c] <= kGeomEps) break;
      WitnessTerm term;
      term.vertex_list = list;
      term.vertex_list.push_back(c);
      term.prob = left * pi[c] * suffix;
      if (with_free_points)
        for (std::size_t s = t + 1; s < order.size(); ++s)
          if (std::find(list.begin(), list.end(), order[s]) == list.end()) term.free_points.push_back(order[s]);
      if (term.prob > 0.0) fn(term);
      suffix *= 1.0 - pi[c];
    }
  };

  for (std::size_t v0 = 0; v0 < n; ++v0) {
    std::vector<std::size_t> marked;
    for (std::size_t a = 0; a < n; ++a)
      if (lex_less(P[v0], P[a])) {
        excl[a] = 1;
        marked.push_back(a);
      }
    list = {v0};
    sel = {P[v0]};
    recurse(recurse, 0);
    for (auto a : marked) excl[a] = 0;
  }
}

// wid*_S = Σ_Δ Pr[Δ] · wid(Δ).
inline double expected_width_witness(const StochasticDataset& ds) {
  detail::require_width_dim(ds.dim());
  const auto P = ds.points();
  double total = 0.0;
  for_each_witness_simplex(ds, [&](const WitnessTerm& t) { total += t.prob * simplex_width(gather(P, t.vertex_list)); });
  return total;
}

struct FprasConfig {
  double epsilon = 0.1;
  std::optional<double> gamma_override;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// γ = d · (k_2 / k_1)^2 with k_1 = 1, k_2 = 1 / c_1.
inline double fpras_gamma(std::size_t d) {
  const double k2 = 1.0 / width_factor_c1(d);
  return static_cast<double>(d) * k2 * k2;
}

// m = ceil(γ · ln n / ε^2), at least 1.
inline std::size_t fpras_sample_count(std::size_t n, std::size_t d, const FprasConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  const double gamma = cfg.gamma_override.value_or(fpras_gamma(d));
  if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  const double m = std::ceil(gamma * std::log(static_cast<double>(std::max<std::size_t>(n, 1))) /
                             (cfg.epsilon * cfg.epsilon));
  return std::max<std::size_t>(1, static_cast<std::size_t>(m));
}

// Called once per sample with the term it belongs to and the sampled hull width.
using FprasObserver = std::function<void(const WitnessTerm&, double)>;

// Σ_Δ Pr[Δ] · (1/m) Σ_i wid(CH(T_i)), where T_i is V_Δ plus an independent
// sample of the free points of Δ. Each Δ draws from its own stream
// (seed, Δ index), so the result does not depend on the thread count.
inline double expected_width_fpras(const StochasticDataset& ds, const FprasConfig& cfg,
                                   const FprasObserver& observer = {}) {
  detail::require_width_dim(ds.dim());
  const std::size_t m = fpras_sample_count(ds.size(), ds.dim(), cfg);
  std::vector<WitnessTerm> terms;
  for_each_witness_simplex(ds, [&](const WitnessTerm& t) { terms.push_back(t); }, true);

  const auto P = ds.points();
  std::vector<double> contrib(terms.size(), 0.0);
  auto run = [&](std::size_t k) {
    const auto& t = terms[k];
    RandomStream rng(cfg.seed, k);
    std::vector<Point> sample;
    double sum = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
      sample.clear();
      for (auto v : t.vertex_list) sample.push_back(P[v]);
      for (auto a : t.free_points)
        if (rng.bernoulli(ds.prob(a))) sample.push_back(P[a]);
      const double w = pointset_width(sample);
      if (observer) observer(t, w);
      sum += w;
    }
    contrib[k] = t.prob * (sum / static_cast<double>(m));
  };

  const unsigned threads = observer ? 1U : std::max(1U, cfg.threads);
  if (threads == 1) {
    for (std::size_t k = 0; k < terms.size(); ++k) run(k);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < terms.size(); k += threads) run(k);
      });
    for (auto& th : pool) th.join();
  }
  double total = 0.0;
  for (double c : contrib) total += c;
  return total;
}

}  // namespace sch
