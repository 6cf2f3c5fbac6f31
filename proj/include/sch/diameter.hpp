#pragma once

// Expected diameter of a stochastic convex hull.
//
// The witness sequence (v, u, w, y, z) of a point set is built from the
// ≺-largest point v by four "farthest point" steps; its value
// Λ = max{dist(u, w), dist(y, z)} lies in [diam / (2√2/√3), diam].
// Summing Pr[ψ]·Λ(ψ) over all candidate 5-tuples ψ gives a deterministic
// 1.633-approximation of the expected diameter in O(n^5) after an
// O(n^2 (d + log n)) precomputation.

#include <array>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "sch/dataset.hpp"
#include "sch/geometry.hpp"

namespace sch {

// 2√2/√3 ≈ 1.63299.
inline const double kWitnessDiameterFactor = 2.0 * std::sqrt(2.0) / std::sqrt(3.0);

struct WitnessSequence {
  std::array<std::size_t, 5> idx{};  // v, u, w, y, z
  Point x;                           // ray point between u and v
  double lambda = 0.0;

  std::size_t v() const { return idx[0]; }
  std::size_t u() const { return idx[1]; }
  std::size_t w() const { return idx[2]; }
  std::size_t y() const { return idx[3]; }
  std::size_t z() const { return idx[4]; }
};

// Point on the ray from u through v at distance dist(u, w) / 2 from u.
inline Point witness_center(const Point& v, const Point& u, const Point& w) {
  const double len = dist(u, v);
  if (len <= 0.0) throw InvalidArgument("witness center needs u != v");
  const double t = dist(u, w) / 2.0 / len;
  Vec c(u.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = u[i] + t * (v[i] - u[i]);
  return Point(std::move(c));
}

// The ≺-largest member of the set of points farthest from x.
inline std::size_t farthest_from(std::span<const Point> pts, const Point& x) {
  if (pts.empty()) throw InvalidArgument("farthest_from on an empty point set");
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (prec_anchor(pts[best], pts[i], x)) best = i;
  return best;
}

inline WitnessSequence witness_sequence(std::span<const Point> pts) {
  if (pts.empty()) throw InvalidArgument("witness sequence of an empty point set");
  WitnessSequence ws;
  std::size_t v = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (lex_less(pts[v], pts[i])) v = i;
  const std::size_t u = farthest_from(pts, pts[v]);
  if (u == v) {
    ws.idx = {v, v, v, v, v};
    ws.x = pts[v];
    return ws;
  }
  const std::size_t w = farthest_from(pts, pts[u]);
  ws.x = witness_center(pts[v], pts[u], pts[w]);
  const std::size_t y = farthest_from(pts, ws.x);
  const std::size_t z = farthest_from(pts, pts[y]);
  ws.idx = {v, u, w, y, z};
  ws.lambda = std::max(dist(pts[u], pts[w]), dist(pts[y], pts[z]));
  return ws;
}

// O(dn) 1.633-approximation of the diameter of a point set.
inline double diameter_approx_pointset(std::span<const Point> pts) { return witness_sequence(pts).lambda; }

// Λ(ψ) for a 5-tuple of dataset indices.
inline double witness_lambda(const StochasticDataset& ds, const std::array<std::size_t, 5>& psi) {
  const auto& p = ds.points();
  return std::max(dist(p[psi[1]], p[psi[2]]), dist(p[psi[3]], p[psi[4]]));
}

// Pr[ψ is the witness sequence of the hull of a realization]. A realization
// has witness ψ iff it contains every point of ψ and none of the points that
// would have been chosen instead of some ψ entry.
inline double witness_prob(const StochasticDataset& ds, const std::array<std::size_t, 5>& psi) {
  const std::size_t n = ds.size();
  for (auto i : psi)
    if (i >= n) throw InvalidArgument("witness sequence index out of range");
  const auto& P = ds.points();

  if (psi[0] == psi[1]) {
    for (auto i : psi)
      if (i != psi[0]) return 0.0;
    double pr = ds.prob(psi[0]);
    for (std::size_t a = 0; a < n; ++a)
      if (a != psi[0]) pr *= 1.0 - ds.prob(a);
    return pr;
  }

  const Point x = witness_center(P[psi[0]], P[psi[1]], P[psi[2]]);
  std::vector<char> member(n, 0);
  double pr = 1.0;
  for (auto i : psi) {
    if (!member[i]) pr *= ds.prob(i);
    member[i] = 1;
  }
  for (std::size_t a = 0; a < n; ++a) {
    const bool excluded = lex_less(P[psi[0]], P[a]) || prec_anchor(P[psi[1]], P[a], P[psi[0]]) ||
                          prec_anchor(P[psi[2]], P[a], P[psi[1]]) || prec_anchor(P[psi[3]], P[a], x) ||
                          prec_anchor(P[psi[4]], P[a], P[psi[3]]);
    if (!excluded) continue;
    if (member[a]) return 0.0;
    pr *= 1.0 - ds.prob(a);
  }
  return pr;
}

namespace detail {

struct DistanceTable {
  std::size_t n = 0;
  std::vector<double> d;             // row-major n x n
  std::vector<std::size_t> lexrank;  // position in ≺-order

  explicit DistanceTable(std::span<const Point> pts) : n(pts.size()), d(n * n, 0.0), lexrank(n) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = dist(pts[i], pts[j]);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(pts[a], pts[b]); });
    for (std::size_t r = 0; r < n; ++r) lexrank[order[r]] = r;
  }

  double operator()(std::size_t a, std::size_t b) const { return d[a * n + b]; }
  bool lex(std::size_t a, std::size_t b) const { return lexrank[a] < lexrank[b]; }
  // a ≺_anchor c
  bool prec(std::size_t a, std::size_t c, std::size_t anchor) const {
    return prec_by_distance((*this)(a, anchor), (*this)(c, anchor), lex(a, c));
  }
};

}  // namespace detail

// diam*_S = Σ_ψ Pr[ψ]·Λ(ψ), grouped by the prefix (p1, p2, p3, p4): for a
// fixed prefix the admissible last entries, sorted by ≺_{p4}, share suffix
// products of absence probabilities.
inline double expected_diameter_witness(const StochasticDataset& ds) {
  const std::size_t n = ds.size();
  if (n < 2) return 0.0;
  const auto& P = ds.points();
  const detail::DistanceTable D(P);
  const auto pi = ds.probs();

  // For each anchor b, all points in ascending ≺_b order.
  std::vector<std::vector<std::size_t>> by_anchor(n);
  for (std::size_t b = 0; b < n; ++b) {
    auto& o = by_anchor[b];
    o.resize(n);
    std::iota(o.begin(), o.end(), 0);
    std::sort(o.begin(), o.end(), [&](std::size_t a, std::size_t c) { return D.prec(a, c, b); });
  }

  // Exclusion levels: excl[a] holds the smallest condition index that excludes a.
  constexpr int kFree = 99;
  std::vector<int> excl(n);
  std::vector<double> dx(n);
  std::vector<char> member(n, 0);
  std::vector<char> out4(n, 0);
  double total = 0.0;

  for (std::size_t p1 = 0; p1 < n; ++p1) {
    for (std::size_t p2 = 0; p2 < n; ++p2) {
      if (p2 == p1 || D.lex(p1, p2)) continue;
      for (std::size_t p3 = 0; p3 < n; ++p3) {
        if (p3 == p2) continue;
        // Conditions 1-3 depend on (p1, p2, p3) only.
        bool ok = true;
        for (std::size_t a = 0; a < n; ++a) {
          excl[a] = kFree;
          if (D.lex(p1, a)) excl[a] = 1;
          else if (D.prec(p2, a, p1)) excl[a] = 2;
          else if (D.prec(p3, a, p2)) excl[a] = 3;
        }
        if (excl[p1] != kFree || excl[p2] != kFree || excl[p3] != kFree) ok = false;
        if (!ok) continue;
        const Point x = witness_center(P[p1], P[p2], P[p3]);
        for (std::size_t a = 0; a < n; ++a) dx[a] = dist(P[a], x);
        const double uw = D(p2, p3);

        for (std::size_t p4 = 0; p4 < n; ++p4) {
          if (excl[p4] != kFree) continue;
          member[p1] = member[p2] = member[p3] = member[p4] = 1;
          double left = 1.0;
          for (std::size_t a = 0; a < n; ++a)
            if (member[a]) left *= pi[a];
          bool valid = true;
          // Points farther from x than p4 (in ≺_x) must be absent.
          std::fill(out4.begin(), out4.end(), 0);
          for (std::size_t a = 0; a < n && valid; ++a) {
            const bool e = excl[a] != kFree || prec_by_distance(dx[p4], dx[a], D.lex(p4, a));
            if (!e) continue;
            out4[a] = 1;
            if (member[a]) valid = false;
            else left *= 1.0 - pi[a];
          }
          if (valid && left != 0.0) {
            // Walk candidates for p5 from the ≺_{p4}-largest down.
            double suffix = 1.0;
            const auto& order = by_anchor[p4];
            for (std::size_t t = n; t-- > 0 && suffix != 0.0;) {
              const std::size_t c = order[t];
              if (out4[c]) continue;
              if (c != p4) {
                const double w = (member[c] ? 1.0 : pi[c]) * suffix;
                total += left * w * std::max(uw, D(p4, c));
              }
              suffix *= member[c] ? 0.0 : 1.0 - pi[c];
            }
          }
          member[p1] = member[p2] = member[p3] = member[p4] = 0;
        }
      }
    }
  }
  return total;
}

// Critical-pair 2-approximation: the smallest-index present point a_i and the
// present point farthest from it (distance ties go to the ≺-larger partner).
inline double expected_diameter_two_approx(const StochasticDataset& ds) {
  const std::size_t n = ds.size();
  const detail::DistanceTable D(ds.points());
  double total = 0.0;
  double before = 1.0;  // Π_{k<i} (1 - π_k)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double pr = before * ds.prob(i) * ds.prob(j);
      for (std::size_t k = i + 1; k < n && pr != 0.0; ++k)
        if (k != j && D.prec(j, k, i)) pr *= 1.0 - ds.prob(k);
      total += pr * D(i, j);
    }
    before *= 1.0 - ds.prob(i);
  }
  return total;
}

}  // namespace sch
