#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sch/errors.hpp"
#include "sch/geometry.hpp"

namespace sch {

// Points in R^d with independent existence probabilities in (0, 1].
// Immutable once built; the position of a point is its stable index.
class StochasticDataset {
 public:
  StochasticDataset() = default;

  StochasticDataset(std::size_t dim, std::vector<Point> points, std::vector<double> probs)
      : dim_(dim), points_(std::move(points)), probs_(std::move(probs)) {
    validate();
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::span<const Point> points() const noexcept { return points_; }
  std::span<const double> probs() const noexcept { return probs_; }
  const Point& point(std::size_t i) const { return points_.at(i); }
  double prob(std::size_t i) const { return probs_.at(i); }

 private:
  void validate() const {
    if (dim_ < 1) throw ValidationError("dim must be at least 1");
    if (points_.size() != probs_.size())
      throw ValidationError("point and probability counts differ");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i].dim() != dim_)
        throw ValidationError("point " + std::to_string(i) + ": has " + std::to_string(points_[i].dim()) +
                              " coordinates, expected " + std::to_string(dim_));
      const double p = probs_[i];
      if (!(p > 0.0 && p <= 1.0))
        throw ValidationError("point " + std::to_string(i) + ": prob " + std::to_string(p) +
                              " is outside (0, 1]");
    }
    std::set<Vec> seen;
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (!seen.insert(points_[i].vec()).second)
        throw ValidationError("point " + std::to_string(i) + ": duplicates an earlier point");
  }

  std::size_t dim_ = 0;
  std::vector<Point> points_;
  std::vector<double> probs_;
};

// A realization: the indices of the points present, in increasing order.
struct Realization {
  std::vector<std::size_t> subset;

  bool contains(std::size_t i) const {
    return std::binary_search(subset.begin(), subset.end(), i);
  }
};

inline std::vector<Point> realized_points(const StochasticDataset& ds, const Realization& r) {
  return gather(ds.points(), r.subset);
}

// Deterministic random stream. A stream is identified by a seed plus up to two
// stream coordinates, so that independent work items (e.g. one per simplex)
// draw from independent, schedule-independent streams.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(a),    static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b),    static_cast<std::uint32_t>(b >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits; portable across standard libraries.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

inline Realization sample_realization(const StochasticDataset& ds, RandomStream& rng) {
  Realization r;
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (rng.bernoulli(ds.prob(i))) r.subset.push_back(i);
  return r;
}

inline double realization_prob(const StochasticDataset& ds, const Realization& r) {
  double p = 1.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (k < r.subset.size() && r.subset[k] == i) {
      p *= ds.prob(i);
      ++k;
    } else {
      p *= 1.0 - ds.prob(i);
    }
  }
  if (k != r.subset.size()) throw InvalidArgument("realization holds an index outside the dataset");
  return p;
}

// ---------------------------------------------------------------------------
// JSON: {"dim": d, "points": [{"coords": [...], "prob": p}, ...]}
// Unknown top-level keys are ignored.

namespace detail {

inline std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace detail

inline StochasticDataset dataset_from_json(const nlohmann::json& j) {
  using nlohmann::json;
  if (!j.is_object()) throw ParseError("dataset: top level must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("dataset: field \"dim\" must be an integer");
  const auto dim = j["dim"].get<std::int64_t>();
  if (dim < 1) throw ValidationError("dataset: dim must be at least 1");
  if (!j.contains("points") || !j["points"].is_array())
    throw ParseError("dataset: field \"points\" must be an array");
  std::vector<Point> pts;
  std::vector<double> probs;
  const auto& arr = j["points"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "points[" + std::to_string(i) + "]";
    const auto& e = arr[i];
    if (!e.is_object()) throw ParseError(where + ": must be an object");
    if (!e.contains("coords") || !e["coords"].is_array())
      throw ParseError(where + ".coords: must be an array");
    if (!e.contains("prob") || !e["prob"].is_number()) throw ParseError(where + ".prob: must be a number");
    Vec c;
    for (const auto& x : e["coords"]) {
      if (!x.is_number()) throw ParseError(where + ".coords: entries must be numbers");
      c.push_back(x.get<double>());
    }
    try {
      pts.emplace_back(std::move(c));
    } catch (const InvalidArgument& ex) {
      throw ValidationError(where + ": " + ex.what());
    }
    probs.push_back(e["prob"].get<double>());
  }
  return StochasticDataset(static_cast<std::size_t>(dim), std::move(pts), std::move(probs));
}

inline StochasticDataset parse_dataset(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("dataset: line " + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
  }
  return dataset_from_json(j);
}

inline nlohmann::json dataset_to_json(const StochasticDataset& ds) {
  nlohmann::json pts = nlohmann::json::array();
  for (std::size_t i = 0; i < ds.size(); ++i)
    pts.push_back({{"coords", ds.point(i).vec()}, {"prob", ds.prob(i)}});
  return {{"dim", ds.dim()}, {"points", pts}};
}

inline std::string serialize_dataset(const StochasticDataset& ds) { return dataset_to_json(ds).dump(2) + "\n"; }

// Uniform points in [-1, 1]^d with probabilities uniform in [prob_min, prob_max].
inline StochasticDataset random_dataset(std::size_t n, std::size_t dim, std::uint64_t seed, double prob_min = 0.1,
                                        double prob_max = 0.9) {
  if (!(prob_min > 0.0 && prob_min <= prob_max && prob_max <= 1.0))
    throw InvalidArgument("probability range must satisfy 0 < min <= max <= 1");
  RandomStream rng(seed);
  std::vector<Point> pts;
  std::vector<double> probs;
  for (std::size_t i = 0; i < n; ++i) {
    Vec c(dim);
    for (auto& x : c) x = 2.0 * rng.uniform() - 1.0;
    pts.emplace_back(std::move(c));
    probs.push_back(prob_min + (prob_max - prob_min) * rng.uniform());
  }
  return StochasticDataset(dim, std::move(pts), std::move(probs));
}

}  // namespace sch
