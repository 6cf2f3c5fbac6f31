#pragma once

// Exhaustive enumeration over all 2^n realizations: the ground truth every
// estimator in the library is checked against.

#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "sch/dataset.hpp"
#include "sch/geometry.hpp"

namespace sch {

inline constexpr std::size_t kOracleMaxPoints = 22;

enum class Statistic { diameter, width, complexity };

inline std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::diameter: return "diameter";
    case Statistic::width: return "width";
    case Statistic::complexity: return "complexity";
  }
  return "?";
}

namespace detail {

inline void require_oracle_size(const StochasticDataset& ds) {
  if (ds.size() > kOracleMaxPoints)
    throw CapabilityError("enumeration oracle is limited to n <= " + std::to_string(kOracleMaxPoints) +
                          ", got n=" + std::to_string(ds.size()));
}

// Visits masks in [lo, hi). fn(realization, realized points, probability).
template <class Fn>
void enumerate_masks(const StochasticDataset& ds, std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
  const std::size_t n = ds.size();
  Realization r;
  std::vector<Point> pts;
  for (std::uint64_t mask = lo; mask < hi; ++mask) {
    r.subset.clear();
    pts.clear();
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) {
        p *= ds.prob(i);
        r.subset.push_back(i);
        pts.push_back(ds.point(i));
      } else {
        p *= 1.0 - ds.prob(i);
      }
    }
    fn(r, std::span<const Point>(pts), p);
  }
}

}  // namespace detail

// Calls fn(realization, realized points, Pr[R]) for every subset, in mask order.
template <class Fn>
void for_each_realization(const StochasticDataset& ds, Fn&& fn) {
  detail::require_oracle_size(ds);
  detail::enumerate_masks(ds, 0, std::uint64_t{1} << ds.size(), fn);
}

// Σ_R Pr[R] · value(R). The subset range is cut into a fixed number of blocks
// whose partial sums are added in block order, so the result does not depend
// on the thread count.
template <class Fn>
double oracle_sum(const StochasticDataset& ds, Fn value, unsigned threads = 1) {
  detail::require_oracle_size(ds);
  const std::uint64_t total = std::uint64_t{1} << ds.size();
  const std::uint64_t blocks = std::min<std::uint64_t>(total, 256);
  std::vector<double> partial(blocks, 0.0);
  auto run_block = [&](std::uint64_t b) {
    const std::uint64_t lo = total * b / blocks, hi = total * (b + 1) / blocks;
    double s = 0.0;
    detail::enumerate_masks(ds, lo, hi, [&](const Realization& r, std::span<const Point> pts, double p) {
      if (p != 0.0) s += p * value(r, pts);
    });
    partial[b] = s;
  };
  if (threads <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::uint64_t b = t; b < blocks; b += threads) run_block(b);
      });
    for (auto& th : pool) th.join();
  }
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

// Exact pushforward distribution of a realization functional.
template <class Fn>
auto oracle_distribution(const StochasticDataset& ds, Fn value) {
  using Value = std::decay_t<decltype(value(std::declval<const Realization&>(), std::span<const Point>{}))>;
  std::map<Value, double> dist;
  for_each_realization(ds, [&](const Realization& r, std::span<const Point> pts, double p) {
    dist[value(r, pts)] += p;
  });
  return dist;
}

inline double realization_diameter(std::span<const Point> pts) {
  return pts.size() < 2 ? 0.0 : farthest_pair(pts).distance;
}

inline double oracle_expectation(const StochasticDataset& ds, Statistic stat, unsigned threads = 1) {
  detail::require_oracle_size(ds);
  switch (stat) {
    case Statistic::diameter:
      return oracle_sum(ds, [](const Realization&, std::span<const Point> pts) { return realization_diameter(pts); },
                        threads);
    case Statistic::width:
      detail::require_hull_dim(ds.dim());
      return oracle_sum(ds, [](const Realization&, std::span<const Point> pts) { return pointset_width(pts); },
                        threads);
    case Statistic::complexity:
      detail::require_hull_dim(ds.dim());
      return oracle_sum(
          ds,
          [](const Realization&, std::span<const Point> pts) {
            return static_cast<double>(convex_hull(pts).total_faces());
          },
          threads);
  }
  throw InvalidArgument("unknown statistic");
}

// Expected number of k-faces of the hull of a realization, k = 0..d-1.
inline std::vector<double> oracle_face_counts(const StochasticDataset& ds) {
  detail::require_hull_dim(ds.dim());
  std::vector<double> out(ds.dim(), 0.0);
  for_each_realization(ds, [&](const Realization&, std::span<const Point> pts, double p) {
    if (pts.empty() || p == 0.0) return;
    const auto h = convex_hull(pts);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += p * static_cast<double>(h.face_counts[k]);
  });
  return out;
}

}  // namespace sch
