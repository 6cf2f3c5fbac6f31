#pragma once

// Geometric primitives shared by every estimator: the lexicographic order and
// its distance-based refinements, affine flats, orthogonal projection, convex
// hulls with face counts (d = 2, 3), and exact point-set diameter and width.
//
// All predicates use a single absolute tolerance kGeomEps. Inputs are expected
// to be desk-scale (|coordinate| <= 1e3).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sch/errors.hpp"

namespace sch {

inline constexpr double kGeomEps = 1e-9;

using Vec = std::vector<double>;

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) { check_finite(); }
  Point(std::initializer_list<double> coords) : coords_(coords) { check_finite(); }

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const Vec& vec() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  void check_finite() const {
    for (double c : coords_)
      if (!std::isfinite(c)) throw InvalidArgument("point coordinate is not finite");
  }

  Vec coords_;
};

namespace detail {

inline void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b)
    throw InvalidArgument("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline Vec sub(std::span<const double> a, std::span<const double> b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Removes from v its components along the orthonormal vectors in basis.
// Two passes of modified Gram-Schmidt keep the residual orthogonal to
// working precision.
inline void orthogonalize(Vec& v, const std::vector<Vec>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      const double c = dot(v, b);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
    }
  }
}

inline Vec cross3(std::span<const double> a, std::span<const double> b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace detail

inline double sq_dist(const Point& a, const Point& b) {
  detail::require_same_dim(a.dim(), b.dim());
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

inline double dist(const Point& a, const Point& b) { return std::sqrt(sq_dist(a, b)); }

// a ≺ b: strict lexicographic order on coordinates.
inline bool lex_less(const Point& a, const Point& b) {
  detail::require_same_dim(a.dim(), b.dim());
  const auto ca = a.coords();
  const auto cb = b.coords();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

// Distance comparison with ties (within kGeomEps) resolved by ≺.
// This is the single comparison rule behind every "farther from X" choice.
inline bool prec_by_distance(double da, double db, bool a_lex_less_b) {
  if (da < db - kGeomEps) return true;
  if (db < da - kGeomEps) return false;
  return a_lex_less_b;
}

// a ≺_anchor c: a is closer to anchor than c (ties broken by ≺).
inline bool prec_anchor(const Point& a, const Point& c, const Point& anchor) {
  detail::require_same_dim(a.dim(), c.dim());
  return prec_by_distance(dist(a, anchor), dist(c, anchor), lex_less(a, c));
}

// An affine flat given by a base point and an orthonormal basis of its
// direction space (k vectors, 0 <= k < d).
class Flat {
 public:
  Flat(Point base, std::vector<Vec> basis) : base_(std::move(base)), basis_(std::move(basis)) {
    validate();
  }

  // The flat of least dimension through the given affinely independent points.
  static Flat through(std::span<const Point> pts) {
    if (pts.empty()) throw InvalidArgument("flat through an empty point list");
    std::vector<Vec> basis;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      detail::require_same_dim(pts[0].dim(), pts[i].dim());
      Vec v = detail::sub(pts[i].coords(), pts[0].coords());
      detail::orthogonalize(v, basis);
      const double n = detail::norm(v);
      if (n <= kGeomEps) throw DegenerateError("points spanning a flat are affinely dependent");
      for (double& c : v) c /= n;
      basis.push_back(std::move(v));
    }
    return Flat(pts[0], std::move(basis));
  }

  const Point& base() const noexcept { return base_; }
  const std::vector<Vec>& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t ambient_dim() const noexcept { return base_.dim(); }

  // Component of p - base orthogonal to the flat.
  Vec residual(const Point& p) const {
    detail::require_same_dim(p.dim(), ambient_dim());
    Vec r = detail::sub(p.coords(), base_.coords());
    for (const auto& b : basis_) {
      const double c = detail::dot(r, b);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
    }
    return r;
  }

 private:
  void validate() const {
    if (basis_.size() >= base_.dim() && base_.dim() > 0)
      throw InvalidArgument("flat dimension must be below the ambient dimension");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      detail::require_same_dim(basis_[i].size(), base_.dim());
      if (std::abs(detail::norm(basis_[i]) - 1.0) > kGeomEps)
        throw InvalidArgument("flat basis vector is not unit length");
      for (std::size_t j = 0; j < i; ++j)
        if (std::abs(detail::dot(basis_[i], basis_[j])) > kGeomEps)
          throw InvalidArgument("flat basis vectors are not orthogonal");
    }
  }

  Point base_;
  std::vector<Vec> basis_;
};

inline double dist_point_flat(const Point& p, const Flat& h) { return detail::norm(h.residual(p)); }

// a ≺_H b: a is closer to the flat than b (ties broken by ≺).
inline bool prec_flat(const Point& a, const Point& b, const Flat& h) {
  detail::require_same_dim(a.dim(), b.dim());
  return prec_by_distance(dist_point_flat(a, h), dist_point_flat(b, h), lex_less(a, b));
}

// Orthonormal basis of the orthogonal complement of span(basis) in R^d.
// Picks, at every step, the coordinate axis with the largest residual.
inline std::vector<Vec> complement_frame(const std::vector<Vec>& basis, std::size_t d) {
  std::vector<Vec> all = basis;
  std::vector<Vec> frame;
  while (all.size() < d) {
    Vec best;
    double best_norm = -1.0;
    for (std::size_t axis = 0; axis < d; ++axis) {
      Vec e(d, 0.0);
      e[axis] = 1.0;
      detail::orthogonalize(e, all);
      const double n = detail::norm(e);
      if (n > best_norm) {
        best_norm = n;
        best = std::move(e);
      }
    }
    for (double& c : best) c /= best_norm;
    all.push_back(best);
    frame.push_back(std::move(best));
  }
  return frame;
}

struct Projection {
  std::vector<Point> projected;  // coordinates in an orthonormal frame of H*
  Point image_of_span;           // common image of every spanning point
  std::vector<Vec> frame;        // the frame of H*, expressed in R^d
};

// Orthogonal projection onto the complement H* of span{y_i - y_0}.
inline Projection project_orthocomplement(std::span<const Point> points, std::span<const Point> spanning) {
  if (spanning.empty()) throw InvalidArgument("projection needs at least one spanning point");
  const std::size_t d = spanning[0].dim();
  if (spanning.size() > d) throw InvalidArgument("too many spanning points for the ambient dimension");
  const Flat span_flat = Flat::through(spanning);
  Projection out{{}, {}, complement_frame(span_flat.basis(), d)};
  auto image = [&](const Point& p) {
    detail::require_same_dim(p.dim(), d);
    Vec c(out.frame.size());
    for (std::size_t j = 0; j < out.frame.size(); ++j) c[j] = detail::dot(p.coords(), out.frame[j]);
    return Point(std::move(c));
  };
  out.projected.reserve(points.size());
  for (const auto& p : points) out.projected.push_back(image(p));
  out.image_of_span = image(spanning[0]);
  return out;
}

// ---------------------------------------------------------------------------
// Convex hulls

struct HullSummary {
  std::size_t dim_of_hull = 0;
  std::vector<std::size_t> face_counts;     // indexed by face dimension 0..d-1
  std::vector<Point> vertices;
  std::vector<std::size_t> vertex_indices;  // into the input span
  bool near_degenerate = false;             // some predicate fell within kGeomEps

  std::size_t total_faces() const {
    std::size_t s = 0;
    for (auto c : face_counts) s += c;
    return s;
  }
};

namespace detail {

using P2 = std::array<double, 2>;

inline double cross2(const P2& o, const P2& a, const P2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Strictly convex hull (collinear boundary points dropped), counter-clockwise,
// returned as indices into pts. Degenerate inputs give 1 or 2 indices.
inline std::vector<std::size_t> hull2d(const std::vector<P2>& pts, bool* near_degenerate = nullptr) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  if (n <= 1) return order;

  // Signed distance of c from the directed line a->b; <= eps means "not a left turn".
  auto turn = [&](std::size_t a, std::size_t b, std::size_t c) {
    const double len = std::hypot(pts[b][0] - pts[a][0], pts[b][1] - pts[a][1]);
    const double v = cross2(pts[a], pts[b], pts[c]) / len;
    if (near_degenerate != nullptr && std::abs(v) <= kGeomEps) *near_degenerate = true;
    return v;
  };

  std::vector<std::size_t> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], order[i]) <= kGeomEps) --k;
    h[k++] = order[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(h[k - 2], h[k - 1], order[i]) <= kGeomEps) --k;
    h[k++] = order[i];
  }
  h.resize(k - 1);
  if (h.size() == 2 && std::hypot(pts[h[0]][0] - pts[h[1]][0], pts[h[0]][1] - pts[h[1]][1]) <= kGeomEps)
    h.resize(1);
  return h;
}

// Flat through a maximal affinely independent subset, chosen greedily by
// distance to the current flat. Returns the defining indices.
inline std::vector<std::size_t> affine_basis(std::span<const Point> pts) {
  std::vector<std::size_t> chosen;
  if (pts.empty()) return chosen;
  chosen.push_back(0);
  std::vector<Point> sel{pts[0]};
  const std::size_t d = pts[0].dim();
  while (chosen.size() <= d) {
    const Flat f = Flat::through(sel);
    double best = kGeomEps;
    std::size_t arg = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double di = dist_point_flat(pts[i], f);
      if (di > best) {
        best = di;
        arg = i;
      }
    }
    if (arg == pts.size()) break;
    chosen.push_back(arg);
    sel.push_back(pts[arg]);
  }
  return chosen;
}

// Coordinates of pts in the (at most 2-dim) flat through basis_pts.
inline std::vector<P2> planar_coords(std::span<const Point> pts, const Flat& plane) {
  std::vector<P2> out(pts.size(), P2{0.0, 0.0});
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec r = sub(pts[i].coords(), plane.base().coords());
    for (std::size_t j = 0; j < plane.dim() && j < 2; ++j) out[i][j] = dot(r, plane.basis()[j]);
  }
  return out;
}

struct Facet3 {
  Vec normal;  // unit, pointing outward
  double offset = 0.0;
  std::vector<std::size_t> polygon;  // counter-clockwise seen from outside
};

struct Hull3 {
  std::vector<std::size_t> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<Facet3> facets;
  bool near_degenerate = false;
};

// Full-dimensional hull in R^3 by supporting-plane enumeration over triples.
// O(n^4) overall, which is fine for the desk-scale sets
// the oracles feed it; coplanar facet points are merged into one polygon.
inline Hull3 hull3d(std::span<const Point> pts) {
  const std::size_t n = pts.size();
  Hull3 out;
  std::set<std::vector<std::size_t>> seen;
  std::set<std::pair<std::size_t, std::size_t>> edge_set;
  std::set<std::size_t> vertex_set;
  std::vector<double> sd(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec nrm = cross3(sub(pts[j].coords(), pts[i].coords()), sub(pts[k].coords(), pts[i].coords()));
        const double len = norm(nrm);
        if (len <= kGeomEps) continue;
        for (double& c : nrm) c /= len;
        const double off = dot(nrm, pts[i].coords());
        bool any_pos = false, any_neg = false;
        for (std::size_t a = 0; a < n; ++a) {
          sd[a] = dot(nrm, pts[a].coords()) - off;
          if (sd[a] > kGeomEps) any_pos = true;
          if (sd[a] < -kGeomEps) any_neg = true;
          if (any_pos && any_neg) break;
        }
        if (any_pos && any_neg) continue;
        if (any_pos) {
          for (double& c : nrm) c = -c;
          for (double& s : sd) s = -s;
        }
        std::vector<std::size_t> on;
        for (std::size_t a = 0; a < n; ++a)
          if (std::abs(sd[a]) <= kGeomEps) on.push_back(a);
        if (!seen.insert(on).second) continue;
        if (on.size() > 3) out.near_degenerate = true;
        // Polygon of the facet in an in-plane frame.
        Vec u = sub(pts[j].coords(), pts[i].coords());
        const double ul = norm(u);
        for (double& c : u) c /= ul;
        Vec w = cross3(nrm, u);
        std::vector<P2> loc(on.size());
        for (std::size_t t = 0; t < on.size(); ++t) {
          const Vec r = sub(pts[on[t]].coords(), pts[i].coords());
          loc[t] = {dot(r, u), dot(r, w)};
        }
        bool nd = false;
        const auto poly = hull2d(loc, &nd);
        if (nd) out.near_degenerate = true;
        Facet3 f;
        f.normal = nrm;
        f.offset = dot(nrm, pts[i].coords());
        for (auto t : poly) f.polygon.push_back(on[t]);
        for (std::size_t t = 0; t < f.polygon.size(); ++t) {
          const std::size_t a = f.polygon[t], b = f.polygon[(t + 1) % f.polygon.size()];
          edge_set.insert({std::min(a, b), std::max(a, b)});
          vertex_set.insert(a);
        }
        out.facets.push_back(std::move(f));
      }
    }
  }
  out.vertices.assign(vertex_set.begin(), vertex_set.end());
  out.edges.assign(edge_set.begin(), edge_set.end());
  return out;
}

inline void require_hull_dim(std::size_t d) {
  if (d != 2 && d != 3)
    throw CapabilityError("hull primitives support d in {2,3}, got d=" + std::to_string(d));
}

}  // namespace detail

// Convex hull with face counts. A hull of affine dimension k < d counts its
// faces of dimensions 0..k, itself included.
inline HullSummary convex_hull(std::span<const Point> pts) {
  HullSummary out;
  if (pts.empty()) return out;
  const std::size_t d = pts[0].dim();
  detail::require_hull_dim(d);
  for (const auto& p : pts) detail::require_same_dim(p.dim(), d);
  out.face_counts.assign(d, 0);

  const auto basis = detail::affine_basis(pts);
  out.dim_of_hull = basis.size() - 1;
  auto add_vertices = [&](const std::vector<std::size_t>& idx) {
    for (auto i : idx) {
      out.vertex_indices.push_back(i);
      out.vertices.push_back(pts[i]);
    }
  };

  if (out.dim_of_hull == 0) {
    add_vertices({basis[0]});
    out.face_counts[0] = 1;
    return out;
  }
  if (out.dim_of_hull < d && pts.size() > out.dim_of_hull + 1) out.near_degenerate = true;

  if (out.dim_of_hull <= 2) {
    std::vector<detail::P2> loc(pts.size());
    if (out.dim_of_hull == d) {
      for (std::size_t i = 0; i < pts.size(); ++i) loc[i] = {pts[i][0], pts[i][1]};
    } else {
      std::vector<Point> sel;
      for (auto i : basis) sel.push_back(pts[i]);
      loc = detail::planar_coords(pts, Flat::through(sel));
    }
    auto poly = detail::hull2d(loc, out.dim_of_hull == d ? &out.near_degenerate : nullptr);
    add_vertices(poly);
    out.face_counts[0] = poly.size();
    if (poly.size() == 2) out.face_counts[1] = 1;
    if (poly.size() >= 3) {
      out.face_counts[1] = poly.size();
      if (d == 3) out.face_counts[2] = 1;
    }
    return out;
  }

  const auto h = detail::hull3d(pts);
  out.near_degenerate = h.near_degenerate;
  add_vertices(h.vertices);
  out.face_counts = {h.vertices.size(), h.edges.size(), h.facets.size()};
  return out;
}

struct FarthestPair {
  std::size_t first = 0;   // the ≺-smaller point of the pair
  std::size_t second = 0;
  double distance = 0.0;
};

// Exact farthest pair by an O(n^2) scan. Among pairs within kGeomEps of the
// maximum, the lexicographically smallest (first, second) pair wins.
inline FarthestPair farthest_pair(std::span<const Point> pts) {
  if (pts.size() < 2) throw InvalidArgument("farthest pair needs at least two points");
  double best = -1.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, dist(pts[i], pts[j]));
  FarthestPair out;
  bool have = false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dij = dist(pts[i], pts[j]);
      if (dij < best - kGeomEps) continue;
      std::size_t a = i, b = j;
      if (lex_less(pts[b], pts[a])) std::swap(a, b);
      const bool better = !have || lex_less(pts[a], pts[out.first]) ||
                          (pts[a] == pts[out.first] && lex_less(pts[b], pts[out.second]));
      if (better) {
        out = {a, b, dij};
        have = true;
      }
    }
  }
  return out;
}

struct WidthResult {
  double width = 0.0;
  Vec direction;  // unit; empty when the width is 0 by degeneracy
};

namespace detail {

inline double extent_along(std::span<const Point> pts, const std::vector<std::size_t>& idx,
                           std::span<const double> u) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (auto i : idx) {
    const double t = dot(pts[i].coords(), u);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return hi - lo;
}

}  // namespace detail

// Exact width. d = 2: normals of hull edges. d = 3: facet normals and cross
// products of hull edge pairs (vertex-facet and edge-edge contacts).
// Sets that do not span R^d have width 0.
inline WidthResult pointset_width_with_direction(std::span<const Point> pts) {
  WidthResult out;
  if (pts.empty()) return out;
  const std::size_t d = pts[0].dim();
  detail::require_hull_dim(d);
  for (const auto& p : pts) detail::require_same_dim(p.dim(), d);
  if (pts.size() < d + 1) return out;

  out.width = std::numeric_limits<double>::infinity();
  auto consider = [&](Vec u, const std::vector<std::size_t>& idx) {
    const double len = detail::norm(u);
    for (double& c : u) c /= len;
    const double w = detail::extent_along(pts, idx, u);
    if (w < out.width) {
      out.width = w;
      out.direction = std::move(u);
    }
  };

  if (d == 2) {
    std::vector<detail::P2> loc(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) loc[i] = {pts[i][0], pts[i][1]};
    const auto poly = detail::hull2d(loc);
    if (poly.size() < 3) return {};
    for (std::size_t t = 0; t < poly.size(); ++t) {
      const auto& a = loc[poly[t]];
      const auto& b = loc[poly[(t + 1) % poly.size()]];
      consider(Vec{-(b[1] - a[1]), b[0] - a[0]}, poly);
    }
    return out;
  }

  if (detail::affine_basis(pts).size() < 4) return {};
  const auto h = detail::hull3d(pts);
  for (const auto& f : h.facets) consider(f.normal, h.vertices);
  for (std::size_t s = 0; s < h.edges.size(); ++s) {
    const Vec e1 = detail::sub(pts[h.edges[s].second].coords(), pts[h.edges[s].first].coords());
    for (std::size_t t = s + 1; t < h.edges.size(); ++t) {
      const Vec e2 = detail::sub(pts[h.edges[t].second].coords(), pts[h.edges[t].first].coords());
      Vec c = detail::cross3(e1, e2);
      if (detail::norm(c) <= kGeomEps * detail::norm(e1) * detail::norm(e2)) continue;
      consider(std::move(c), h.vertices);
    }
  }
  return out;
}

inline double pointset_width(std::span<const Point> pts) { return pointset_width_with_direction(pts).width; }

// Directional width of a point set along u (not necessarily unit).
inline double directional_width(std::span<const Point> pts, std::span<const double> u) {
  const double len = detail::norm(u);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : pts) {
    const double t = detail::dot(p.coords(), u) / len;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return pts.empty() ? 0.0 : hi - lo;
}

inline std::vector<Point> gather(std::span<const Point> pts, std::span<const std::size_t> idx) {
  std::vector<Point> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(pts[i]);
  return out;
}

}  // namespace sch
