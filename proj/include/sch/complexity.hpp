#pragma once

// Expected combinatorial complexity through face probabilities.
//
// A simplex Δ with vertices in R is a face of CH(R) iff, after projecting
// onto the orthogonal complement of Δ's span, the common image q of its
// vertices is not inside the hull of the other projected points. So
// F_Δ = Π π(v) · (1 - mem(q)) in the projected dataset, which needs only
// 1D membership for facets and 2D membership for ridges.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "sch/dataset.hpp"
#include "sch/geometry.hpp"

namespace sch {

// Pr[q ∈ CH(R)] for points on a line. p+ and p- are the absence products of
// the points right and left of q; q is covered iff both sides are occupied.
inline double membership_prob_1d(std::span<const double> x, std::span<const double> prob, double q) {
  if (x.size() != prob.size()) throw InvalidArgument("coordinate and probability counts differ");
  double pos = 1.0, neg = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - q) <= kGeomEps) throw DegenerateError("query coincides with a point");
    (x[i] > q ? pos : neg) *= 1.0 - prob[i];
  }
  return 1.0 - (pos + neg - pos * neg);
}

inline double membership_prob_1d(const StochasticDataset& ds, double q) {
  if (ds.dim() != 1) throw InvalidArgument("membership_prob_1d needs a 1-dimensional dataset");
  std::vector<double> x;
  for (const auto& p : ds.points()) x.push_back(p[0]);
  return membership_prob_1d(x, ds.probs(), q);
}

namespace detail {

// Range products over a fixed array, no division.
class ProductTree {
 public:
  explicit ProductTree(const std::vector<double>& v) : size_(1) {
    while (size_ < v.size()) size_ *= 2;
    t_.assign(2 * size_, 1.0);
    std::copy(v.begin(), v.end(), t_.begin() + static_cast<std::ptrdiff_t>(size_));
    for (std::size_t i = size_; i-- > 1;) t_[i] = t_[2 * i] * t_[2 * i + 1];
  }

  // Product over [lo, hi).
  double product(std::size_t lo, std::size_t hi) const {
    double l = 1.0, r = 1.0;
    for (lo += size_, hi += size_; lo < hi; lo /= 2, hi /= 2) {
      if (lo & 1U) l *= t_[lo++];
      if (hi & 1U) r = t_[--hi] * r;
    }
    return l * r;
  }

 private:
  std::size_t size_;
  std::vector<double> t_;
};

}  // namespace detail

// Pr[q ∈ CH(R)] in the plane, by the witness-edge method: if q is outside a
// nonempty R, exactly one a ∈ R sees every other point of R strictly to the
// left of the directed line q→a. Hence
//   1 - mem = Π(1-τ) + Σ_a τ(a) · Π_{b not strictly left of q→a} (1-τ(b)).
// The "not strictly left" set is a circular window of the angular order.
inline double membership_prob_2d(std::span<const Point> pts, std::span<const double> prob, const Point& q) {
  if (pts.size() != prob.size()) throw InvalidArgument("point and probability counts differ");
  if (q.dim() != 2) throw InvalidArgument("membership_prob_2d needs points in R^2");
  const std::size_t n = pts.size();
  std::vector<detail::P2> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    detail::require_same_dim(pts[i].dim(), 2);
    r[i] = {pts[i][0] - q[0], pts[i][1] - q[1]};
    if (std::hypot(r[i][0], r[i][1]) <= kGeomEps) throw DegenerateError("query coincides with a point");
  }
  double none = 1.0;
  for (double p : prob) none *= 1.0 - p;
  if (n == 0) return 0.0;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> ang(n);
  for (std::size_t i = 0; i < n; ++i) ang[i] = std::atan2(r[i][1], r[i][0]);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ang[a] < ang[b]; });

  // Doubled array so that circular windows are plain ranges.
  std::vector<double> absent(2 * n);
  for (std::size_t t = 0; t < 2 * n; ++t) absent[t] = 1.0 - prob[order[t % n]];
  const detail::ProductTree tree(absent);

  // Signed distance of b from the directed line q→a.
  auto side = [&](std::size_t a, std::size_t b) {
    const detail::P2 o{0.0, 0.0};
    return detail::cross2(o, r[a], r[b]) / std::hypot(r[a][0], r[a][1]);
  };

  double outside = none;
  std::size_t j = 0;  // last doubled position strictly left of order[i]
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = order[i];
    j = std::max(j, i);
    while (j + 1 < i + n && side(a, order[(j + 1) % n]) > kGeomEps) ++j;
    if (j + 1 < i + n && side(a, order[(j + 1) % n]) >= -kGeomEps)
      throw DegenerateError("query is collinear with two points");
    outside += prob[a] * tree.product(j + 1, i + n);
  }
  return 1.0 - outside;
}

inline double membership_prob_2d(const StochasticDataset& ds, const Point& q) {
  if (ds.dim() != 2) throw InvalidArgument("membership_prob_2d needs a 2-dimensional dataset");
  return membership_prob_2d(ds.points(), ds.probs(), q);
}

// F_Δ for a k-simplex given by point indices, k ∈ {d-2, d-1}.
inline double face_prob(const StochasticDataset& ds, std::span<const std::size_t> simplex) {
  const std::size_t d = ds.dim();
  if (simplex.empty()) throw InvalidArgument("empty simplex");
  const std::size_t k = simplex.size() - 1;
  if (k > d - 1) throw InvalidArgument("a simplex in R^d has at most d+1 vertices");
  if (k + 3 <= d)
    throw CapabilityError("face probability needs k >= d-2 (membership in R^3 and above is not supported)");
  std::vector<char> in(ds.size(), 0);
  std::vector<Point> spanning;
  double pr = 1.0;
  for (auto i : simplex) {
    if (i >= ds.size()) throw InvalidArgument("simplex index out of range");
    if (in[i]) throw InvalidArgument("repeated simplex vertex");
    in[i] = 1;
    spanning.push_back(ds.point(i));
    pr *= ds.prob(i);
  }
  std::vector<Point> others;
  std::vector<double> oprob;
  for (std::size_t a = 0; a < ds.size(); ++a)
    if (!in[a]) {
      others.push_back(ds.point(a));
      oprob.push_back(ds.prob(a));
    }
  const auto proj = project_orthocomplement(others, spanning);
  double mem = 0.0;
  if (k == d - 1) {
    std::vector<double> x;
    for (const auto& p : proj.projected) x.push_back(p[0]);
    mem = membership_prob_1d(x, oprob, proj.image_of_span[0]);
  } else {
    mem = membership_prob_2d(proj.projected, oprob, proj.image_of_span);
  }
  return pr * (1.0 - mem);
}

struct HyperplaneStat {
  std::vector<std::size_t> on_plane;  // the d indices spanning the hyperplane, increasing
  double p_pos = 1.0;                 // Π(1-π) strictly on the positive side
  double p_neg = 1.0;
};

namespace detail {

// Product of (1-π) kept as (product of nonzero factors, number of zero factors)
// so that factors can be removed again.
struct SideProduct {
  double prod = 1.0;
  std::size_t zeros = 0;

  void add(double f) {
    if (f == 0.0) ++zeros;
    else prod *= f;
  }
  void remove(double f) {
    if (f == 0.0) --zeros;
    else prod /= f;
  }
  double value() const { return zeros > 0 ? 0.0 : prod; }
};

template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(std::span<const std::size_t>(idx));
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t s = pos; s < k; ++s) idx[s] = idx[s - 1] + 1;
  }
}

inline bool canonical_positive(const Vec& normal) {
  for (double c : normal)
    if (std::abs(c) > kGeomEps) return c > 0.0;
  return true;
}

}  // namespace detail

// Visits stat(E) once for every hyperplane E through d dataset points.
// For each (d-1)-subset Y (increasing indices) the hyperplanes through Y are
// taken in rotation order around Y; the side products change by two factors
// from one hyperplane to the next. A hyperplane is reported from the subset
// made of its d-1 smallest indices. Sides follow the canonical orientation:
// the normal's first coordinate above tolerance is positive.
template <class Visitor>
void s_statistics(const StochasticDataset& ds, Visitor&& visit) {
  const std::size_t d = ds.dim();
  detail::require_hull_dim(d);
  const std::size_t n = ds.size();
  if (n < d) return;
  const auto P = ds.points();
  const auto pi = ds.probs();

  std::vector<std::size_t> fixed(d - 1);
  std::vector<detail::P2> r(n);
  std::vector<double> key(n);
  std::vector<char> flip(n, 0);
  std::vector<char> in_fixed(n, 0);
  std::vector<std::size_t> order;
  std::vector<int> where(n, 0);  // +1 left, -1 right, 0 on the line

  auto run_subset = [&] {
    // Orthonormal frame (f1, f2) of the complement of Y, f1 being the
    // reference direction of angle 0.
    Vec f1, f2;
    std::vector<Point> ypts;
    for (auto i : fixed) ypts.push_back(P[i]);
    const Flat y = Flat::through(ypts);
    if (d == 2) {
      f1 = {0.0, 1.0};
      f2 = {1.0, 0.0};
    } else {
      const Vec& t = y.basis()[0];
      Vec up{0.0, 0.0, 1.0};
      detail::orthogonalize(up, y.basis());
      if (detail::norm(up) <= 1e-6) {
        up = complement_frame(y.basis(), 3)[0];
      }
      const double len = detail::norm(up);
      for (double& c : up) c /= len;
      f1 = up;
      f2 = detail::cross3(t, f1);
    }
    const Point& y0 = P[fixed[0]];
    order.clear();
    for (std::size_t a = 0; a < n; ++a) {
      if (in_fixed[a]) continue;
      const Vec v = detail::sub(P[a].coords(), y0.coords());
      r[a] = {detail::dot(v, f1), detail::dot(v, f2)};
      if (std::hypot(r[a][0], r[a][1]) <= kGeomEps)
        throw DegenerateError("general position violated: point lies on the flat of the others");
      double phi = std::atan2(r[a][1], r[a][0]);
      if (phi < 0.0) phi += 2.0 * std::numbers::pi;
      flip[a] = phi >= std::numbers::pi;
      key[a] = flip[a] ? phi - std::numbers::pi : phi;
      order.push_back(a);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });

    // Unit direction of the line through Y and a, at angle key[a].
    auto dir = [&](std::size_t a) {
      const double len = std::hypot(r[a][0], r[a][1]);
      const double sgn = flip[a] ? -1.0 : 1.0;
      return detail::P2{sgn * r[a][0] / len, sgn * r[a][1] / len};
    };
    // Signed distance of b from that line: the side of b w.r.t. the hyperplane.
    auto side_of = [&](const detail::P2& u, std::size_t b) {
      const double s = u[0] * r[b][1] - u[1] * r[b][0];
      if (std::abs(s) <= kGeomEps) throw DegenerateError("general position violated: d+1 points on a hyperplane");
      return s > 0.0 ? 1 : -1;
    };

    detail::SideProduct left, right;
    const std::size_t first = order[0];
    const auto u0 = dir(first);
    where[first] = 0;
    for (std::size_t t = 1; t < order.size(); ++t) {
      const std::size_t b = order[t];
      where[b] = side_of(u0, b);
      (where[b] > 0 ? left : right).add(1.0 - pi[b]);
    }

    for (std::size_t t = 0; t < order.size(); ++t) {
      const std::size_t a = order[t];
      const auto u = dir(a);
      if (t > 0) {
        // The previous line's point leaves the line, a joins it.
        const std::size_t prev = order[t - 1];
        where[prev] = side_of(u, prev);
        (where[prev] > 0 ? left : right).add(1.0 - pi[prev]);
        (where[a] > 0 ? left : right).remove(1.0 - pi[a]);
        where[a] = 0;
      }
      if (a < fixed.back()) continue;
      // Normal of the hyperplane, lifted from the left normal of u.
      Vec normal(d);
      for (std::size_t c = 0; c < d; ++c) normal[c] = -u[1] * f1[c] + u[0] * f2[c];
      HyperplaneStat st;
      st.on_plane = fixed;
      st.on_plane.push_back(a);
      std::sort(st.on_plane.begin(), st.on_plane.end());
      st.p_pos = left.value();
      st.p_neg = right.value();
      if (!detail::canonical_positive(normal)) std::swap(st.p_pos, st.p_neg);
      visit(static_cast<const HyperplaneStat&>(st));
    }
  };

  detail::for_each_subset(n, d - 1, [&](std::span<const std::size_t> s) {
    fixed.assign(s.begin(), s.end());
    for (auto i : fixed) in_fixed[i] = 1;
    run_subset();
    for (auto i : fixed) in_fixed[i] = 0;
  });
}

struct FaceProbabilityReport {
  double lambda1 = 0.0;               // expected number of (d-1)-faces
  double lambda2 = 0.0;               // expected number of (d-2)-faces
  std::optional<double> lower_terms;  // faces of dimension <= d-3
  std::optional<double> total;
};

// λ1 from one S-statistics pass; λ2 by a 2D membership query per
// (d-2)-simplex. At d = 2 the two terms are the whole complexity; at d = 3
// the vertex term would need membership in R^3 and is left out.
inline FaceProbabilityReport lambda_terms(const StochasticDataset& ds) {
  const std::size_t d = ds.dim();
  detail::require_hull_dim(d);
  FaceProbabilityReport out;
  const auto pi = ds.probs();
  s_statistics(ds, [&](const HyperplaneStat& st) {
    double pr = 1.0;
    for (auto i : st.on_plane) pr *= pi[i];
    out.lambda1 += pr * (st.p_pos + st.p_neg - st.p_pos * st.p_neg);
  });
  detail::for_each_subset(ds.size(), d - 1, [&](std::span<const std::size_t> s) { out.lambda2 += face_prob(ds, s); });
  if (d == 2) out.total = out.lambda1 + out.lambda2;
  return out;
}

// Exact expected number of faces, d = 2.
inline double expected_complexity(const StochasticDataset& ds) {
  if (ds.dim() != 2)
    throw CapabilityError("exact expected complexity is available for d=2 only; use the enumeration oracle");
  return *lambda_terms(ds).total;
}

}  // namespace sch
